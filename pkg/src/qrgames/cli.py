"""Command-line front end.

Exit codes: 0 success; 1 when a query with a required witness comes back
negative (`exists`, `threshold`, `check`); 2 on input errors; 3 when an
enumeration cap is exceeded.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from . import generators
from .coalition import coalition_values
from .costs import INF, cost_to_json, vector_to_json
from .equilibrium import (
    analyze,
    check_ne,
    ne_po_joint_uniform,
    outcome_cost,
    threshold_ne,
)
from .errors import CapExceeded, FragmentError, LassoError, ParseError, QRGamesError
from .expansion import expand
from .jsonio import (
    frontier_to_json,
    lasso_from_json,
    lasso_to_json,
    metrics_to_json,
    valuemap_to_json,
    verdict_to_json,
)
from .metrics import pos_poa
from .oracle import oracle_coalition_values, oracle_ne_po
from .parser import parse_game, serialize_game

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CAP = 3


@dataclass
class RunConfig:
    """One CLI invocation: a subcommand plus its knobs."""

    subcommand: str
    game_path: str | None = None
    player: str | None = None
    cost: str | None = None
    lasso_path: str | None = None
    fmt: str = "json"
    player_cap: int = 12
    strategy_cap: int = 10**6
    path_cap: int = 10**7
    fragment: bool = False
    gen_family: str | None = None
    gen_args: dict = field(default_factory=dict)
    out: str | None = None


def _load(config: RunConfig):
    text = Path(config.game_path).read_text()
    return parse_game(text)


def _emit_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _emit_table(rows: list[tuple], header: tuple) -> str:
    table = [header] + [tuple(str(c) for c in row) for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    lines = []
    for i, row in enumerate(table):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _parse_cost_list(text: str, n: int) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise ParseError(f"expected {n} cost entries, got {len(parts)}")
    out = []
    for p in parts:
        if p == "inf":
            out.append(INF)
        elif p.isdigit():
            out.append(int(p))
        else:
            raise ParseError(f"bad cost entry {p!r}")
    return tuple(out)


def run(config: RunConfig) -> tuple[int, str]:
    """Dispatch a config; returns (exit code, stdout text)."""
    cmd = config.subcommand
    if cmd == "gen":
        game = _generate(config)
        text = serialize_game(game)
        if config.out:
            Path(config.out).write_text(text)
            return EXIT_OK, f"wrote {config.out}\n"
        return EXIT_OK, text

    game = _load(config)

    if cmd == "validate":
        doc = {
            "valid": True,
            "players": list(game.players),
            "states": game.n_states,
            "rules": len(game.rules),
        }
        return EXIT_OK, _emit_json(doc)

    if cmd == "coalition":
        player = game.player_index(config.player)
        vmap = coalition_values(game, player)
        if config.fmt == "table":
            rows = [(game.states[i], cost_to_json(v)) for i, v in enumerate(vmap.values)]
            return EXIT_OK, _emit_table(rows, ("state", "value"))
        return EXIT_OK, _emit_json(valuemap_to_json(game, vmap))

    if cmd == "oracle-coalition":
        player = game.player_index(config.player)
        vmap = oracle_coalition_values(game, player, cap=config.strategy_cap)
        return EXIT_OK, _emit_json(valuemap_to_json(game, vmap))

    if cmd == "pareto":
        if config.fragment:
            entries = ne_po_joint_uniform(game)
            egame = expand(game)
        else:
            analysis = analyze(game, player_cap=config.player_cap)
            entries = analysis.frontier
            egame = analysis.egame
        if config.fmt == "table":
            rows = [(",".join(str(cost_to_json(c)) for c in e.cost),) for e in entries]
            return EXIT_OK, _emit_table(rows, ("cost",))
        return EXIT_OK, _emit_json({"frontier": frontier_to_json(egame, entries)})

    if cmd == "oracle-pareto":
        entries = oracle_ne_po(game, cap=config.path_cap)
        egame = expand(game)
        return EXIT_OK, _emit_json({"frontier": frontier_to_json(egame, entries)})

    if cmd == "exists":
        analysis = analyze(game, player_cap=config.player_cap, early_stop=True)
        doc: dict = {"ne_exists": bool(analysis.frontier)}
        if analysis.frontier:
            doc["witness"] = lasso_to_json(analysis.egame, analysis.frontier[0].witness)
            doc["cost"] = vector_to_json(analysis.frontier[0].cost)
        return (EXIT_OK if analysis.frontier else EXIT_NEGATIVE), _emit_json(doc)

    if cmd == "threshold":
        bound = _parse_cost_list(config.cost, game.n_players)
        result = threshold_ne(game, bound, player_cap=config.player_cap)
        doc = {"holds": result.holds, "bound": vector_to_json(bound)}
        if result.witness:
            egame = expand(game)
            doc["cost"] = vector_to_json(result.witness.cost)
            doc["witness"] = lasso_to_json(egame, result.witness.witness)
        return (EXIT_OK if result.holds else EXIT_NEGATIVE), _emit_json(doc)

    if cmd == "check":
        egame = expand(game)
        punish = {p: coalition_values(egame, p) for p in range(game.n_players)}
        doc_in = json.loads(Path(config.lasso_path).read_text())
        lasso = lasso_from_json(egame, doc_in)
        verdict = check_ne(egame, lasso, punish)
        cost = outcome_cost(egame, lasso)
        return (
            EXIT_OK if verdict.is_ne else EXIT_NEGATIVE,
            _emit_json(verdict_to_json(egame, verdict, cost)),
        )

    if cmd == "metrics":
        report = pos_poa(game)
        doc = metrics_to_json(report)
        if config.fmt == "table":
            rows = [(k, json.dumps(v)) for k, v in doc.items()]
            return EXIT_OK, _emit_table(rows, ("metric", "value"))
        return EXIT_OK, _emit_json(doc)

    if cmd == "report":
        from .report import render_report

        paths = render_report(game, Path(config.out or "report"))
        return EXIT_OK, "".join(f"wrote {p}\n" for p in paths)

    raise ValueError(f"unknown subcommand {cmd!r}")


def _generate(config: RunConfig):
    family = config.gen_family
    args = config.gen_args
    if family == "xor":
        return generators.gen_xor()
    if family == "expne":
        return generators.gen_exp_ne(args["stages"])
    if family == "infne":
        return generators.gen_infinite_ne()
    if family == "pos":
        return generators.gen_pos(args["weight"])
    if family == "partition":
        return generators.gen_partition(args["numbers"])
    if family == "3sat":
        return generators.gen_3sat(args["cnf"])
    if family == "hampath":
        return generators.gen_hampath(args["adjacency"], args["start"])
    raise ParseError(f"unknown generator family {family!r}")


def _run_and_exit(config: RunConfig) -> None:
    try:
        code, text = run(config)
    except ParseError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except (LassoError, FragmentError, FileNotFoundError, json.JSONDecodeError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except CapExceeded as exc:
        click.echo(f"cap exceeded: {exc}", err=True)
        sys.exit(EXIT_CAP)
    except QRGamesError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    click.echo(text, nl=False)
    sys.exit(code)


@click.group()
def main() -> None:
    """Solver for concurrent graph games with per-player reach costs."""


_game_arg = click.argument("game", type=click.Path(exists=True, dir_okay=False))
_fmt_opt = click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json")


@main.command()
@_game_arg
def validate(game: str) -> None:
    """Parse a game file and report its shape."""
    _run_and_exit(RunConfig("validate", game_path=game))


@main.command()
@_game_arg
@click.option("--player", required=True, help="player to punish")
@_fmt_opt
def coalition(game: str, player: str, fmt: str) -> None:
    """Per-state punishment values against one player."""
    _run_and_exit(RunConfig("coalition", game_path=game, player=player, fmt=fmt))


@main.command()
@_game_arg
@_fmt_opt
@click.option("--player-cap", default=12, show_default=True)
@click.option("--fragment", is_flag=True, help="use the joint-target uniform-cost fast path")
def pareto(game: str, fmt: str, player_cap: int, fragment: bool) -> None:
    """Pareto-optimal equilibrium cost vectors with witnesses."""
    _run_and_exit(
        RunConfig("pareto", game_path=game, fmt=fmt, player_cap=player_cap, fragment=fragment)
    )


@main.command()
@_game_arg
@click.option("--player-cap", default=12, show_default=True)
def exists(game: str, player_cap: int) -> None:
    """Does any equilibrium exist?  Exit 1 when none does."""
    _run_and_exit(RunConfig("exists", game_path=game, player_cap=player_cap))


@main.command()
@_game_arg
@click.option("--cost", required=True, help="comma-separated bound, e.g. 3,4")
@click.option("--player-cap", default=12, show_default=True)
def threshold(game: str, cost: str, player_cap: int) -> None:
    """Is there an equilibrium at most this expensive?  Exit 1 if not."""
    _run_and_exit(RunConfig("threshold", game_path=game, cost=cost, player_cap=player_cap))


@main.command()
@_game_arg
@click.option("--lasso", "lasso_path", required=True, type=click.Path(exists=True))
def check(game: str, lasso_path: str) -> None:
    """Verify a lasso witness.  Exit 1 when it is not an equilibrium."""
    _run_and_exit(RunConfig("check", game_path=game, lasso_path=lasso_path))


@main.command()
@_game_arg
@_fmt_opt
def metrics(game: str, fmt: str) -> None:
    """Social optimum plus stability and anarchy prices."""
    _run_and_exit(RunConfig("metrics", game_path=game, fmt=fmt))


@main.command()
@_game_arg
@click.option("--out-dir", "out", default="report", show_default=True)
def report(game: str, out: str) -> None:
    """Render frontier CSV plus figures into a directory."""
    _run_and_exit(RunConfig("report", game_path=game, out=out))


@main.group()
def oracle() -> None:
    """Brute-force reference solvers (slow, for cross-checking)."""


@oracle.command("coalition")
@_game_arg
@click.option("--player", required=True)
@click.option("--strategy-cap", default=10**6, show_default=True)
def oracle_coalition(game: str, player: str, strategy_cap: int) -> None:
    """Punishment values by memoryless-strategy enumeration."""
    _run_and_exit(
        RunConfig("oracle-coalition", game_path=game, player=player, strategy_cap=strategy_cap)
    )


@oracle.command("pareto")
@_game_arg
@click.option("--path-cap", default=10**7, show_default=True)
def oracle_pareto(game: str, path_cap: int) -> None:
    """Frontier by exhaustive lasso enumeration."""
    _run_and_exit(RunConfig("oracle-pareto", game_path=game, path_cap=path_cap))


@main.group()
def gen() -> None:
    """Emit a generated game in the game file format."""


def _gen_cmd(family: str, **gen_args):
    return RunConfig("gen", gen_family=family, gen_args=gen_args)


@gen.command("xor")
@click.option("--out", default=None)
def gen_xor_cmd(out: str | None) -> None:
    """Matching-pennies game with no equilibrium."""
    cfg = _gen_cmd("xor")
    cfg.out = out
    _run_and_exit(cfg)


@gen.command("expne")
@click.option("--stages", "-n", required=True, type=int)
@click.option("--out", default=None)
def gen_expne_cmd(stages: int, out: str | None) -> None:
    """Doubling chain with exponentially many equilibria."""
    cfg = _gen_cmd("expne", stages=stages)
    cfg.out = out
    _run_and_exit(cfg)


@gen.command("infne")
@click.option("--out", default=None)
def gen_infne_cmd(out: str | None) -> None:
    """Self-loop game with infinitely many equilibria."""
    cfg = _gen_cmd("infne")
    cfg.out = out
    _run_and_exit(cfg)


@gen.command("pos")
@click.option("--weight", "-w", required=True, type=int)
@click.option("--out", default=None)
def gen_pos_cmd(weight: int, out: str | None) -> None:
    """Stability example with PoS 2W and infinite PoA."""
    cfg = _gen_cmd("pos", weight=weight)
    cfg.out = out
    _run_and_exit(cfg)


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        click.echo(f"input error: {what} must be integers, got {text!r}", err=True)
        sys.exit(EXIT_INPUT)


@gen.command("partition")
@click.option("--numbers", required=True, help="comma-separated positive ints, e.g. 2,4,6")
@click.option("--out", default=None)
def gen_partition_cmd(numbers: str, out: str | None) -> None:
    """Equal-split reduction game."""
    cfg = _gen_cmd("partition", numbers=_int_list(numbers, "--numbers"))
    cfg.out = out
    _run_and_exit(cfg)


@gen.command("3sat")
@click.option("--cnf", required=True, help="clauses 'l l l; l l l' with DIMACS literals")
@click.option("--out", default=None)
def gen_3sat_cmd(cnf: str, out: str | None) -> None:
    """Satisfiability reduction game."""
    clauses = [_int_list(part, "--cnf") for part in cnf.split(";") if part.strip()]
    cfg = _gen_cmd("3sat", cnf=clauses)
    cfg.out = out
    _run_and_exit(cfg)


@gen.command("hampath")
@click.option("--edges", required=True, help="directed edges 'a>b,b>c'")
@click.option("--vertices", default=None, help="extra isolated vertices, comma-separated")
@click.option("--start", required=True)
@click.option("--out", default=None)
def gen_hampath_cmd(edges: str, vertices: str | None, start: str, out: str | None) -> None:
    """Hamiltonian-path reduction game (uniform costs)."""
    adjacency: dict[str, list[str]] = {}
    for item in edges.split(","):
        item = item.strip()
        if not item:
            continue
        src, _, dst = item.partition(">")
        adjacency.setdefault(src.strip(), []).append(dst.strip())
        adjacency.setdefault(dst.strip(), [])
    for v in (vertices or "").split(","):
        if v.strip():
            adjacency.setdefault(v.strip(), [])
    cfg = _gen_cmd("hampath", adjacency=adjacency, start=start)
    cfg.out = out
    _run_and_exit(cfg)


if __name__ == "__main__":
    main()
