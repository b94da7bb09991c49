"""Nash equilibrium verification and Pareto-frontier enumeration.

An equilibrium outcome is witnessed by a lasso in the expanded game: a
finite prefix from the initial expanded state followed by a simple cycle
that stays inside the region of its winner set.  A lasso is an
equilibrium iff no player, at any position, can pay the deviation edge
plus the coalition's punishment value and still undercut its own total.

The frontier search runs one dynamic program per candidate winner set W:
restrict to W-safe transitions, seed the states of the W-region that
admit an infinite safe play, and propagate (length, suffix-cost) pairs
backwards, pruning entries that some cheaper-and-shorter entry dominates
and rejecting any extension a winner could profitably deviate from.  The
candidate W's are exactly the reached-sets realized by the expansion, so
the loop never touches impossible winner sets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .coalition import ValueMap, coalition_values
from .costs import INF, Cost, CostVector, vadd, vle
from .errors import CapExceeded, FragmentError, LassoError
from .expansion import ExpandedGame, expand, safe_player_masks
from .game import Game

#: Guard on the winner-set loop (it is exponential in the player count).
DEFAULT_PLAYER_CAP = 12


@dataclass(frozen=True)
class Lasso:
    """Equilibrium witness: prefix + simple cycle over expanded states.

    Each element is (expanded state index, full action profile); the
    winners are the players whose targets the play visits.
    """

    prefix: tuple[tuple[int, tuple[str, ...]], ...]
    cycle: tuple[tuple[int, tuple[str, ...]], ...]
    winners: frozenset[int]


class DeviationWitness(NamedTuple):
    position: int
    player: int
    action: str
    improvement: Cost


@dataclass(frozen=True)
class NEVerdict:
    is_ne: bool
    witness: DeviationWitness | None = None


@dataclass(frozen=True)
class FrontierEntry:
    cost: CostVector
    witness: Lasso


class ThresholdResult(NamedTuple):
    holds: bool
    witness: FrontierEntry | None


def _resolve(egame: ExpandedGame, lasso: Lasso):
    """Resolve and validate a lasso; returns the step sequence."""
    if not lasso.cycle:
        raise LassoError("a lasso needs a non-empty cycle")
    steps = []
    cur = egame.initial_state
    for pos, (state, profile) in enumerate(list(lasso.prefix) + list(lasso.cycle)):
        if state != cur:
            raise LassoError(
                f"discontinuous path at position {pos}: "
                f"expected state {egame.state_label(cur)}, got {egame.state_label(state)}"
            )
        if len(profile) != egame.n_players:
            raise LassoError(f"profile length mismatch at position {pos}")
        for p, sym in enumerate(profile):
            if sym not in egame.actions[p]:
                raise LassoError(f"unknown action {sym!r} at position {pos}")
        step = egame.arena_step_for(state, profile)
        steps.append((state, profile, step))
        cur = step.target
    if cur != lasso.cycle[0][0]:
        raise LassoError("cycle does not return to its starting state")
    cycle_states = [state for state, _ in lasso.cycle]
    if len(set(cycle_states)) != len(cycle_states):
        raise LassoError("cycle is not simple")
    if lasso.winners != egame.reached(lasso.cycle[0][0]):
        raise LassoError("declared winners differ from the targets the play visits")
    return steps


def outcome_cost(egame: ExpandedGame, lasso: Lasso) -> CostVector:
    """Cost vector of the infinite play prefix · cycle^ω.

    Winners stop accumulating once their target is reached, so the finite
    sum over prefix + one cycle pass is exact; everyone else pays
    infinity.
    """
    steps = _resolve(egame, lasso)
    n = egame.n_players
    totals: list[Cost] = [0] * n
    for _, _, step in steps:
        for p in range(n):
            totals[p] += step.cost[p]
    winners = egame.reached(lasso.cycle[0][0])
    return tuple(totals[p] if p in winners else INF for p in range(n))


def check_ne(egame: ExpandedGame, lasso: Lasso, punish: dict[int, ValueMap]) -> NEVerdict:
    """Deviation check over the prefix plus one unrolling of the cycle.

    A violation at position j means: the deviating player's cost up to j,
    plus the deviated edge, plus the punishment value at its endpoint is
    strictly below the player's total on the lasso.
    """
    steps = _resolve(egame, lasso)
    total = outcome_cost(egame, lasso)
    n = egame.n_players
    paid: list[Cost] = [0] * n
    for pos, (state, profile, step) in enumerate(steps):
        for p in range(n):
            for a in egame.actions[p]:
                if a == profile[p]:
                    continue
                alt = profile[:p] + (a,) + profile[p + 1 :]
                dev = egame.arena_step_for(state, alt)
                bound = paid[p] + dev.cost[p] + punish[p].values[dev.target]
                if bound < total[p]:
                    return NEVerdict(False, DeviationWitness(pos, p, a, total[p] - bound))
        for p in range(n):
            paid[p] += step.cost[p]
    return NEVerdict(True)


def pareto_filter(vectors: Iterable[CostVector]) -> set[CostVector]:
    """Componentwise-minimal antichain of the given cost vectors."""
    items = list(vectors)
    lengths = {len(v) for v in items}
    if len(lengths) > 1:
        raise ValueError("cost vectors of mixed lengths")
    out: set[CostVector] = set()
    for v in items:
        if any(w != v and vle(w, v) for w in items):
            continue
        out.add(v)
    return out


# -- frontier search -------------------------------------------------------


class _Entry:
    __slots__ = ("length", "cost", "state", "back")

    def __init__(self, length, cost, state, back):
        self.length = length
        self.cost = cost
        self.state = state
        self.back = back  # None for seeds, else (step_index, child_entry)


@dataclass(frozen=True)
class NEAnalysis:
    """Everything the frontier search learned about a game."""

    egame: ExpandedGame
    punish: dict[int, ValueMap]
    frontier: tuple[FrontierEntry, ...]
    vectors: tuple[tuple[frozenset[int], CostVector], ...]
    witnesses: tuple[FrontierEntry, ...]


def _deviation_tables(egame: ExpandedGame, punish: dict[int, ValueMap]):
    """Per (state, step): the tightest deviation bound per player.

    dev[u][si][p] = min over p's alternative actions of
    (deviated edge cost for p) + (punishment value at its endpoint);
    infinite when p has no alternative action.
    """
    n = egame.n_players
    values = [punish[p].values for p in range(n)]
    tables: list[list[tuple[Cost, ...]]] = []
    for u in range(egame.n_states):
        row: list[tuple[Cost, ...]] = []
        for step in egame.arena_steps(u):
            bounds: list[Cost] = []
            for p in range(n):
                best: Cost = INF
                for a in egame.actions[p]:
                    if a == step.profile[p]:
                        continue
                    alt = step.profile[:p] + (a,) + step.profile[p + 1 :]
                    dev = egame.arena_step_for(u, alt)
                    cand = dev.cost[p] + values[p][dev.target]
                    if cand < best:
                        best = cand
                bounds.append(best)
            row.append(tuple(bounds))
        tables.append(row)
    return tables


def _live_region(egame, region: set[int], allowed, states: set[int]) -> set[int]:
    """States of the region that admit an infinite play staying inside it
    using only allowed transitions: iteratively delete states with no
    surviving in-region successor."""
    live = set(region)
    changed = True
    while changed:
        changed = False
        for u in sorted(live):
            ok = any(
                egame.arena_steps(u)[si].target in live and egame.arena_steps(u)[si].target in states
                for si in allowed[u]
            )
            if not ok:
                live.discard(u)
                changed = True
    return live


def _region_walk(egame, start: int, live: set[int], allowed):
    """Deterministic walk inside the live region until a state repeats;
    returns (head, cycle) as (state, profile) pairs."""
    trail: list[tuple[int, tuple[str, ...]]] = []
    seen: dict[int, int] = {}
    cur = start
    while cur not in seen:
        seen[cur] = len(trail)
        step = next(
            egame.arena_steps(cur)[si]
            for si in allowed[cur]
            if egame.arena_steps(cur)[si].target in live
        )
        trail.append((cur, step.profile))
        cur = step.target
    at = seen[cur]
    return trail[:at], trail[at:]


def analyze(game: Game, player_cap: int = DEFAULT_PLAYER_CAP, early_stop: bool = False) -> NEAnalysis:
    """Run the winner-set dynamic program over the expanded game.

    With ``early_stop`` the search returns as soon as one equilibrium
    vector reaches the initial state (enough for existence queries).
    """
    if game.n_players > player_cap:
        raise CapExceeded(
            f"{game.n_players} players exceed the winner-set loop cap {player_cap}"
        )
    egame = expand(game)
    n = egame.n_players
    punish = {p: coalition_values(egame, p) for p in range(n)}
    masks = safe_player_masks(egame, punish)
    dev = _deviation_tables(egame, punish)
    initial = egame.initial_state
    length_cap = (n + 1) * game.n_states

    reached_sets = sorted(
        {egame.reached(u) for u in range(egame.n_states)},
        key=lambda s: (len(s), sorted(s)),
    )

    found: list[tuple[frozenset[int], CostVector, Lasso]] = []
    for winners in reached_sets:
        loser_mask = 0
        for p in range(n):
            if p not in winners:
                loser_mask |= 1 << p
        allowed = [
            [si for si, m in enumerate(masks[u]) if m & loser_mask == loser_mask]
            for u in range(egame.n_states)
        ]
        # prune to states reachable through safe transitions
        states = {initial}
        queue = deque(states)
        while queue:
            u = queue.popleft()
            for si in allowed[u]:
                t = egame.arena_steps(u)[si].target
                if t not in states:
                    states.add(t)
                    queue.append(t)
        region = {u for u in states if egame.reached(u) == winners}
        live = _live_region(egame, region, allowed, states)
        if not live:
            continue
        live_allowed = [
            [si for si in allowed[u] if egame.arena_steps(u)[si].target in live]
            if u in live
            else []
            for u in range(egame.n_states)
        ]

        preds: dict[int, list[tuple[int, int]]] = {}
        for u in states:
            for si in allowed[u]:
                t = egame.arena_steps(u)[si].target
                if t in states:
                    preds.setdefault(t, []).append((u, si))

        zero = tuple(0 if p in winners else INF for p in range(n))
        entries: dict[int, list[_Entry]] = {}
        work: deque[_Entry] = deque()
        for u in sorted(live):
            e = _Entry(0, zero, u, None)
            entries[u] = [e]
            work.append(e)

        if early_stop and initial in entries:
            work.clear()
        while work:
            child = work.popleft()
            for (u, si) in preds.get(child.state, ()):
                if child.length + 1 > length_cap:
                    continue
                step = egame.arena_steps(u)[si]
                cost = vadd(step.cost, child.cost)
                bounds = dev[u][si]
                if any(cost[p] > bounds[p] for p in winners):
                    continue
                cand = _Entry(child.length + 1, cost, u, (si, child))
                bucket = entries.setdefault(u, [])
                if any(e.length <= cand.length and vle(e.cost, cand.cost) for e in bucket):
                    continue
                bucket[:] = [
                    e for e in bucket if not (cand.length <= e.length and vle(cand.cost, e.cost))
                ]
                bucket.append(cand)
                work.append(cand)
                if u == initial and early_stop:
                    work.clear()
                    break

        for entry in entries.get(initial, []):
            path: list[tuple[int, tuple[str, ...]]] = []
            e = entry
            while e.back is not None:
                si, child = e.back
                path.append((e.state, egame.arena_steps(e.state)[si].profile))
                e = child
            head, cycle = _region_walk(egame, e.state, live, live_allowed)
            lasso = Lasso(tuple(path + head), tuple(cycle), winners)
            found.append((winners, entry.cost, lasso))
            if early_stop:
                break
        if early_stop and found:
            break

    witnesses = []
    for winners, cost, lasso in found:
        verdict = check_ne(egame, lasso, punish)
        if not verdict.is_ne:
            raise RuntimeError(
                f"internal error: reconstructed witness fails the deviation check "
                f"({verdict.witness})"
            )
        got = outcome_cost(egame, lasso)
        if got != cost:
            raise RuntimeError(
                f"internal error: witness cost {got} differs from table cost {cost}"
            )
        witnesses.append(FrontierEntry(cost, lasso))

    frontier_costs = pareto_filter(c for _, c, _ in found)
    frontier = []
    seen_costs: set[CostVector] = set()
    for winners, cost, lasso in found:
        if cost in frontier_costs and cost not in seen_costs:
            seen_costs.add(cost)
            frontier.append(FrontierEntry(cost, lasso))
    frontier.sort(key=lambda fe: fe.cost)

    return NEAnalysis(
        egame=egame,
        punish=punish,
        frontier=tuple(frontier),
        vectors=tuple((w, c) for w, c, _ in found),
        witnesses=tuple(witnesses),
    )


def compute_ne_po(game: Game, player_cap: int = DEFAULT_PLAYER_CAP) -> tuple[FrontierEntry, ...]:
    """All Pareto-optimal equilibrium cost vectors, each with a verified
    lasso witness.  An all-losers equilibrium shows up as the all-infinite
    vector (and is dominated as soon as any other equilibrium exists)."""
    return analyze(game, player_cap=player_cap).frontier


def ne_exists(game: Game, player_cap: int = DEFAULT_PLAYER_CAP) -> bool:
    """Does the game admit any Nash equilibrium?"""
    return bool(analyze(game, player_cap=player_cap, early_stop=True).frontier)


def threshold_ne(
    game: Game, bound: CostVector, player_cap: int = DEFAULT_PLAYER_CAP
) -> ThresholdResult:
    """Is there an equilibrium whose cost is componentwise at most ``bound``?

    Checking the frontier suffices: every equilibrium vector dominates a
    Pareto-optimal one.
    """
    if len(bound) != game.n_players:
        raise ValueError("bound length must equal the player count")
    for entry in compute_ne_po(game, player_cap=player_cap):
        if vle(entry.cost, bound):
            return ThresholdResult(True, entry)
    return ThresholdResult(False, None)


def ne_po_joint_uniform(game: Game) -> tuple[FrontierEntry, ...]:
    """Fast path for joint-target, all-ones-cost games.

    The frontier is the single vector (d, ..., d) where d is the length
    of the shortest path from the initial state to the shared target set;
    when the target set is unreachable the only equilibrium is the
    all-losers one.
    """
    shared = game.targets[0]
    if any(t != shared for t in game.targets[1:]):
        raise FragmentError("fragment inapplicable: players have different target sets")
    ones = (1,) * game.n_players
    for rule in game.rules:
        if rule.cost != ones:
            raise FragmentError("fragment inapplicable: costs are not uniformly one")

    egame = expand(game)
    punish = {p: coalition_values(egame, p) for p in range(game.n_players)}

    # shortest path over realizable base transitions
    dist: dict[int, tuple[int, tuple]] = {game.initial: (0, None)}
    queue = deque([game.initial])
    goal = None
    if game.initial in shared:
        goal = game.initial
    while queue and goal is None:
        u = queue.popleft()
        for step in game.arena_steps(u):
            if step.target not in dist:
                dist[step.target] = (dist[u][0] + 1, (u, step))
                if step.target in shared:
                    goal = step.target
                    break
                queue.append(step.target)

    n = egame.n_states
    plain_allowed = [list(range(len(egame.arena_steps(u)))) for u in range(n)]
    if goal is None:
        # no winner is possible; the all-losers play is the frontier
        live = set(range(n))
        head, cycle = _region_walk(egame, egame.initial_state, live, plain_allowed)
        lasso = Lasso(tuple(head), tuple(cycle), frozenset())
        entry = FrontierEntry((INF,) * game.n_players, lasso)
    else:
        base_path = []
        cur = goal
        while dist[cur][1] is not None:
            u, step = dist[cur][1]
            base_path.append(step)
            cur = u
        base_path.reverse()
        prefix = []
        estate = egame.initial_state
        for step in base_path:
            prefix.append((estate, step.profile))
            estate = egame.arena_step_for(estate, step.profile).target
        live = set(range(n))
        head, cycle = _region_walk(egame, estate, live, plain_allowed)
        lasso = Lasso(tuple(prefix + head), tuple(cycle), egame.reached(estate))
        entry = FrontierEntry((dist[goal][0],) * game.n_players, lasso)

    verdict = check_ne(egame, lasso, punish)
    if not verdict.is_ne or outcome_cost(egame, lasso) != entry.cost:
        raise RuntimeError("internal error: fragment witness failed verification")
    return (entry,)
