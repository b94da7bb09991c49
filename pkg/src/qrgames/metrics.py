"""Social optimum, price of stability, and price of anarchy.

The social optimum is a shortest-path number: cheapest total cost of
driving every player into its target set.  The stability price compares
the best equilibrium's social utility against it; the anarchy price
compares the worst.  The worst is a supremum, reported exactly only when
an unboundedness witness exists: either some equilibrium leaves a player
at infinite cost, or an equilibrium lasso stays an equilibrium after
pumping a positive-cost cycle into its prefix.  Otherwise the value from
the frontier search is an honest lower bound.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .costs import INF, Cost, util
from .equilibrium import Lasso, NEAnalysis, analyze, check_ne, outcome_cost
from .game import Game

PUMP_CANDIDATE_CAP = 5000


@dataclass(frozen=True)
class MetricsReport:
    social_optimum: Cost
    ne_exists: bool
    best_ne_util: Cost | None
    worst_ne_util: Cost | None          # INF when unbounded
    worst_is_lower_bound: bool
    pos: Fraction | Cost | None         # Fraction, INF, or None (no equilibrium)
    poa: Fraction | Cost | None
    poa_is_lower_bound: bool
    unbounded_via: str | None           # "infinite-cost-ne" | "pump" | None


def social_optimum(game: Game) -> Cost:
    """Cheapest total cost of satisfying every player, by shortest path
    in the expanded game under summed edge costs."""
    from .expansion import expand

    egame = expand(game)
    everyone = frozenset(range(game.n_players))
    dist: dict[int, Cost] = {egame.initial_state: 0}
    heap: list[tuple[Cost, int]] = [(0, egame.initial_state)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist.get(u, INF):
            continue
        if egame.reached(u) == everyone:
            return d
        for step in egame.arena_steps(u):
            nd = d + util(step.cost)
            if nd < dist.get(step.target, INF):
                dist[step.target] = nd
                heapq.heappush(heap, (nd, step.target))
    return INF


def _ratio(value: Cost, base: Cost) -> Fraction | Cost:
    if base == 0:
        return Fraction(1) if value == 0 else INF
    if base == INF:
        # every profile already costs infinity; no degradation to measure
        return Fraction(1)
    if value == INF:
        return INF
    return Fraction(value, base)


def find_pump(analysis: NEAnalysis) -> Lasso | None:
    """Look for an equilibrium lasso that stays an equilibrium after one
    extra positive-cost cycle repetition in its prefix; returns the pumped
    lasso (its existence makes the worst equilibrium utility unbounded)."""
    egame = analysis.egame
    budget = PUMP_CANDIDATE_CAP

    def simple_cycles_at(anchor: int):
        out: list[tuple[tuple[int, tuple[str, ...]], ...]] = []
        stack = [(anchor, (), frozenset([anchor]))]
        while stack:
            cur, path, seen = stack.pop()
            for step in egame.arena_steps(cur):
                if step.target == anchor:
                    out.append(path + ((cur, step.profile),))
                elif step.target not in seen and len(out) < 64:
                    stack.append((step.target, path + ((cur, step.profile),), seen | {step.target}))
            if len(out) >= 64:
                break
        return out

    for entry in analysis.witnesses:
        base_util = util(outcome_cost(egame, entry.witness))
        prefix = entry.witness.prefix
        positions = list(range(len(prefix))) + [len(prefix)]
        for at in positions:
            state = prefix[at][0] if at < len(prefix) else entry.witness.cycle[0][0]
            for cycle in simple_cycles_at(state):
                budget -= 1
                if budget < 0:
                    return None
                pumped = Lasso(
                    prefix[:at] + cycle + prefix[at:],
                    entry.witness.cycle,
                    entry.witness.winners,
                )
                cost = outcome_cost(egame, pumped)
                if util(cost) <= base_util or util(cost) == INF:
                    continue
                if check_ne(egame, pumped, analysis.punish).is_ne:
                    return pumped
    return None


def pos_poa(game: Game) -> MetricsReport:
    """Stability and anarchy prices for a game.

    The stability price is exact (the cheapest equilibrium utility always
    survives the Pareto filter).  The anarchy price is exact when an
    unboundedness witness fires and a lower bound otherwise.
    """
    so = social_optimum(game)
    analysis = analyze(game)
    if not analysis.vectors:
        return MetricsReport(
            social_optimum=so,
            ne_exists=False,
            best_ne_util=None,
            worst_ne_util=None,
            worst_is_lower_bound=False,
            pos=None,
            poa=None,
            poa_is_lower_bound=False,
            unbounded_via=None,
        )

    utils = [util(c) for _, c in analysis.vectors]
    best = min(utils)
    worst = max(utils)
    unbounded_via = None
    if any(u == INF for u in utils):
        unbounded_via = "infinite-cost-ne"
    elif find_pump(analysis) is not None:
        unbounded_via = "pump"

    if unbounded_via:
        worst = INF
    return MetricsReport(
        social_optimum=so,
        ne_exists=True,
        best_ne_util=best,
        worst_ne_util=worst,
        worst_is_lower_bound=unbounded_via is None,
        pos=_ratio(best, so),
        poa=_ratio(worst, so),
        poa_is_lower_bound=unbounded_via is None,
        unbounded_via=unbounded_via,
    )
