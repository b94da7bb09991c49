"""Stable JSON encodings for solver results.

Infinity is serialized as the string "inf"; rationals as {num, den}
plus a decimal convenience field.  Key order is fixed so identical
invocations emit byte-identical documents.
"""

from __future__ import annotations

from fractions import Fraction

from .coalition import ValueMap
from .costs import INF, Cost, cost_to_json, vector_to_json
from .equilibrium import Lasso, NEVerdict
from .errors import LassoError
from .expansion import ExpandedGame
from .metrics import MetricsReport


def valuemap_to_json(arena, vmap: ValueMap) -> dict:
    return {
        "player": arena.players[vmap.player],
        "values": {arena.state_label(i): cost_to_json(v) for i, v in enumerate(vmap.values)},
    }


def lasso_to_json(egame: ExpandedGame, lasso: Lasso) -> dict:
    def leg(items):
        return [
            {
                "state": egame.base.states[egame.estates[state].base],
                "profile": list(profile),
            }
            for state, profile in items
        ]

    return {
        "winners": [egame.players[p] for p in sorted(lasso.winners)],
        "prefix": leg(lasso.prefix),
        "cycle": leg(lasso.cycle),
    }


def lasso_from_json(egame: ExpandedGame, doc: dict) -> Lasso:
    """Rebuild a lasso from base-state names by replaying it from the
    initial expanded state."""

    def steps_of(items):
        return [(str(item["state"]), tuple(item["profile"])) for item in items]

    try:
        prefix_raw = steps_of(doc["prefix"])
        cycle_raw = steps_of(doc["cycle"])
    except (KeyError, TypeError) as exc:
        raise LassoError(f"malformed lasso document: {exc}") from exc

    cur = egame.initial_state
    resolved: list[tuple[int, tuple[str, ...]]] = []
    for name, profile in prefix_raw + cycle_raw:
        base = egame.estates[cur].base
        if egame.base.states[base] != name:
            raise LassoError(
                f"lasso names state {name!r} where the play is at "
                f"{egame.base.states[base]!r}"
            )
        for p, sym in enumerate(profile):
            if sym not in egame.actions[p]:
                raise LassoError(f"unknown action {sym!r} in lasso profile")
        resolved.append((cur, profile))
        cur = egame.arena_step_for(cur, profile).target
    split = len(prefix_raw)
    cycle_start = resolved[split][0] if split < len(resolved) else cur
    winners = egame.reached(cycle_start)
    return Lasso(tuple(resolved[:split]), tuple(resolved[split:]), winners)


def frontier_to_json(egame: ExpandedGame, entries) -> list[dict]:
    return [
        {"cost": vector_to_json(e.cost), "witness": lasso_to_json(egame, e.witness)}
        for e in entries
    ]


def verdict_to_json(egame: ExpandedGame, verdict: NEVerdict, cost) -> dict:
    doc: dict = {"is_ne": verdict.is_ne, "cost": vector_to_json(cost)}
    if verdict.witness is None:
        doc["violation"] = None
    else:
        doc["violation"] = {
            "position": verdict.witness.position,
            "player": egame.players[verdict.witness.player],
            "action": verdict.witness.action,
            "improvement": cost_to_json(verdict.witness.improvement),
        }
    return doc


def _rational_to_json(value: Fraction | Cost):
    if value == INF:
        return "inf"
    if isinstance(value, Fraction):
        return {
            "num": value.numerator,
            "den": value.denominator,
            "decimal": float(value),
        }
    return {"num": int(value), "den": 1, "decimal": float(value)}


def metrics_to_json(report: MetricsReport) -> dict:
    doc: dict = {
        "social_optimum": cost_to_json(report.social_optimum),
        "ne_exists": report.ne_exists,
    }
    if not report.ne_exists:
        doc["pos"] = "no NE"
        doc["poa"] = "no NE"
        return doc
    doc["best_ne_util"] = cost_to_json(report.best_ne_util)
    doc["worst_ne_util"] = (
        "unbounded" if report.unbounded_via else cost_to_json(report.worst_ne_util)
    )
    doc["pos"] = _rational_to_json(report.pos)
    if report.poa_is_lower_bound:
        doc["poa"] = {"at_least": _rational_to_json(report.poa)}
    else:
        doc["poa"] = _rational_to_json(report.poa)
    doc["unbounded_via"] = report.unbounded_via
    return doc
