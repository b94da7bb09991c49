"""Report rendering: delimited frontier data plus figures.

Writes into an output directory:

* ``frontier.csv``   one row per Pareto-optimal equilibrium vector
* ``report.json``    frontier + metrics in the CLI's JSON schema
* ``frontier.png``   cost-plane scatter (2 players) or parallel lines
* ``punishments.png`` heatmap of per-state punishment values
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .costs import INF, cost_to_json, util
from .equilibrium import analyze
from .game import Game
from .jsonio import frontier_to_json, metrics_to_json
from .metrics import pos_poa


def render_report(game: Game, out_dir: Path) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    analysis = analyze(game)
    report = pos_poa(game)

    paths = []

    csv_path = out_dir / "frontier.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"cost_{p}" for p in game.players] + ["util"])
        for entry in analysis.frontier:
            writer.writerow(
                [cost_to_json(c) for c in entry.cost] + [cost_to_json(util(entry.cost))]
            )
    paths.append(csv_path)

    json_path = out_dir / "report.json"
    doc = {
        "frontier": frontier_to_json(analysis.egame, analysis.frontier),
        "metrics": metrics_to_json(report),
    }
    json_path.write_text(json.dumps(doc, indent=2) + "\n")
    paths.append(json_path)

    paths.append(_frontier_figure(game, analysis, out_dir / "frontier.png"))
    paths.append(_punishment_figure(game, out_dir / "punishments.png"))
    return paths


def _frontier_figure(game: Game, analysis, path: Path) -> Path:
    finite = [e.cost for e in analysis.frontier if all(c != INF for c in e.cost)]
    fig, ax = plt.subplots(figsize=(5, 4))
    if game.n_players == 2 and finite:
        xs = [c[0] for c in finite]
        ys = [c[1] for c in finite]
        ax.scatter(xs, ys, zorder=3)
        ax.set_xlabel(f"cost for {game.players[0]}")
        ax.set_ylabel(f"cost for {game.players[1]}")
    elif finite:
        for vec in finite:
            ax.plot(range(game.n_players), vec, marker="o")
        ax.set_xticks(range(game.n_players))
        ax.set_xticklabels(game.players)
        ax.set_ylabel("cost")
    else:
        ax.text(0.5, 0.5, "no finite equilibrium vectors", ha="center", va="center")
        ax.set_axis_off()
    ax.set_title("Pareto-optimal equilibrium costs")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _punishment_figure(game: Game, path: Path) -> Path:
    from .coalition import coalition_values

    rows = []
    for p in range(game.n_players):
        values = coalition_values(game, p).values
        cap = max([v for v in values if v != INF], default=0)
        rows.append([v if v != INF else cap + 1 for v in values])
    fig, ax = plt.subplots(figsize=(max(5, game.n_states * 0.6), max(3, game.n_players * 0.6)))
    image = ax.imshow(rows, aspect="auto", cmap="viridis")
    ax.set_xticks(range(game.n_states))
    ax.set_xticklabels(game.states, rotation=45, ha="right")
    ax.set_yticks(range(game.n_players))
    ax.set_yticklabels(game.players)
    ax.set_title("punishment values (inf shown one above the finite max)")
    fig.colorbar(image, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
