"""Brute-force reference implementations for cross-checking the solvers.

These are deliberately naive: the punishment oracle enumerates every
memoryless coalition strategy, and the frontier oracle enumerates every
simple prefix of the expanded game together with every simple cycle at
its endpoint.  Memoryless strategies and simple lassos lose no
equilibria, which is what licenses the restriction; both facts also
underpin the main algorithms, so the oracles share only the deviation
check with them.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from typing import Iterable, Mapping, Sequence

from .coalition import ValueMap
from .costs import INF, Cost
from .equilibrium import FrontierEntry, Lasso, check_ne, outcome_cost, pareto_filter
from .errors import CapExceeded
from .expansion import expand
from .game import Game

DEFAULT_STRATEGY_CAP = 10**6
DEFAULT_PATH_CAP = 10**7


def oracle_coalition_values(arena, player: int, cap: int = DEFAULT_STRATEGY_CAP) -> ValueMap:
    """Punishment values by exhaustive strategy enumeration.

    Coalition strategies are enumerated per state over the coalition
    members that actually influence that state's transition (choices of
    uninfluential members never change the play, so skipping them loses
    nothing).  For each strategy the punished player's cheapest reply is
    a shortest-path computation; the oracle keeps the per-state maximum.
    """
    n_states = arena.n_states
    per_state_choices: list[list[dict[int, str]]] = []
    total = 1
    for u in range(n_states):
        if arena.is_target(u, player):
            # the value is frozen at 0 here; the coalition's move is moot
            per_state_choices.append([{}])
            continue
        members = [p for p in arena.arena_relevant(u) if p != player]
        combos = [dict(zip(members, combo)) for combo in itertools.product(
            *(arena.actions[p] for p in members)
        )]
        per_state_choices.append(combos)
        total *= len(combos)
        if total > cap:
            raise CapExceeded(f"{total}+ memoryless coalition strategies exceed cap {cap}")

    best: list[Cost] = [-1] * n_states
    filler = [arena.actions[p][0] for p in range(arena.n_players)]
    for assignment in itertools.product(*per_state_choices):
        # cheapest reply from every state via Dijkstra on reversed edges
        edges: list[list[tuple[int, Cost, int]]] = [[] for _ in range(n_states)]
        for u in range(n_states):
            for a in arena.actions[player]:
                profile = list(filler)
                profile[player] = a
                for member, sym in assignment[u].items():
                    profile[member] = sym
                step = arena.arena_step_for(u, tuple(profile))
                edges[step.target].append((u, step.cost[player], step.target))
        dist: list[Cost] = [INF] * n_states
        heap: list[tuple[Cost, int]] = []
        for u in range(n_states):
            if arena.is_target(u, player):
                dist[u] = 0
                heapq.heappush(heap, (0, u))
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for u, w, _ in edges[v]:
                if arena.is_target(u, player):
                    continue
                nd = d + w
                if nd < dist[u]:
                    dist[u] = nd
                    heapq.heappush(heap, (nd, u))
        for u in range(n_states):
            if dist[u] > best[u]:
                best[u] = dist[u]
    return ValueMap(player, tuple(best))


def oracle_ne_po(game: Game, cap: int = DEFAULT_PATH_CAP) -> tuple[FrontierEntry, ...]:
    """Frontier by exhaustive lasso enumeration.

    Every simple prefix from the initial expanded state is a candidate;
    the cost vector and the per-position deviation checks of a lasso do
    not depend on which cycle closes it (winners stop paying before the
    cycle, losers pay infinity regardless), so one valid cycle per prefix
    endpoint suffices.  A cycle is valid exactly when each of its steps
    keeps every loser's punishment value infinite under every unilateral
    change, and the shortest closed walk over such steps is automatically
    a simple cycle.

    Along the prefix the deviation criterion is tracked incrementally:
    a play survives iff, for every player, the smallest positional bound
    (cost paid so far + cheapest deviation-plus-punishment) still covers
    that player's total.  Survivors are confirmed with check_ne.
    """
    egame = expand(game)
    n = egame.n_players
    punish = {p: oracle_coalition_values(egame, p) for p in range(n)}
    budget = [cap]

    def tick():
        budget[0] -= 1
        if budget[0] < 0:
            raise CapExceeded(f"lasso enumeration exceeded cap {cap}")

    # per (state, step, player): cheapest deviation edge + punishment value
    devmin: list[list[tuple[Cost, ...]]] = []
    for u in range(egame.n_states):
        row = []
        for step in egame.arena_steps(u):
            per_player = []
            for p in range(n):
                best: Cost = INF
                for a in egame.actions[p]:
                    if a == step.profile[p]:
                        continue
                    alt = step.profile[:p] + (a,) + step.profile[p + 1 :]
                    other = egame.arena_step_for(u, alt)
                    cand = other.cost[p] + punish[p].values[other.target]
                    if cand < best:
                        best = cand
                per_player.append(best)
            row.append(tuple(per_player))
        devmin.append(row)

    def loser_safe(state: int, si: int) -> bool:
        step = egame.arena_steps(state)[si]
        for p in range(n):
            if p in egame.reached(state):
                continue
            if punish[p].values[step.target] != INF or devmin[state][si][p] != INF:
                return False
        return True

    cycle_cache: dict[int, tuple | None] = {}

    def good_cycle(anchor: int):
        """Shortest cycle through ``anchor`` over loser-safe steps."""
        if anchor in cycle_cache:
            return cycle_cache[anchor]
        parent: dict[int, tuple[int, object]] = {}
        queue = deque([anchor])
        hit = None
        while queue and hit is None:
            u = queue.popleft()
            for si, step in enumerate(egame.arena_steps(u)):
                tick()
                if not loser_safe(u, si):
                    continue
                if step.target == anchor:
                    hit = (u, step)
                    break
                if step.target not in parent:
                    parent[step.target] = (u, step)
                    queue.append(step.target)
        if hit is None:
            cycle_cache[anchor] = None
            return None
        cycle = [(hit[0], hit[1].profile)]
        cur = hit[0]
        while cur != anchor:
            u, step = parent[cur]
            cycle.append((u, step.profile))
            cur = u
        cycle.reverse()
        cycle_cache[anchor] = tuple(cycle)
        return cycle_cache[anchor]

    # first witness (prefix, endpoint) per surviving cost vector
    found: dict[tuple[Cost, ...], tuple[tuple, int]] = {}

    def consider(prefix, endpoint, paid, floor):
        reached = egame.reached(endpoint)
        total = tuple(paid[p] if p in reached else INF for p in range(n))
        if total in found:
            return
        if any(floor[p] < total[p] for p in range(n)):
            return
        if good_cycle(endpoint) is None:
            return
        found[total] = (tuple(prefix), endpoint)

    def dfs(cur, prefix, seen, paid, floor):
        consider(prefix, cur, paid, floor)
        for si, step in enumerate(egame.arena_steps(cur)):
            tick()
            nxt = step.target
            if nxt in seen:
                continue
            bounds = devmin[cur][si]
            new_floor = tuple(
                min(floor[p], paid[p] + bounds[p]) for p in range(n)
            )
            new_paid = tuple(paid[p] + step.cost[p] for p in range(n))
            seen.add(nxt)
            dfs(nxt, prefix + [(cur, step.profile)], seen, new_paid, new_floor)
            seen.discard(nxt)

    dfs(egame.initial_state, [], {egame.initial_state}, (0,) * n, (INF,) * n)

    frontier_costs = pareto_filter(found)
    out: list[FrontierEntry] = []
    for cost in sorted(frontier_costs):
        prefix, endpoint = found[cost]
        lasso = Lasso(prefix, good_cycle(endpoint), egame.reached(endpoint))
        verdict = check_ne(egame, lasso, punish)
        if not verdict.is_ne or outcome_cost(egame, lasso) != cost:
            raise RuntimeError("oracle fast filter disagrees with the deviation check")
        out.append(FrontierEntry(cost, lasso))
    return tuple(out)


# -- ground-truth deciders for the reduction contracts ---------------------


def oracle_decision(problem: str, instance, cap: int | None = None) -> bool:
    """Exhaustively decide a desk-scale source instance.

    ``partition``: a sequence of positive ints; ``sat``: a list of
    integer-literal clauses (DIMACS signs); ``hampath``: (adjacency
    mapping, start vertex).
    """
    if problem == "partition":
        xs: Sequence[int] = list(instance)
        if len(xs) > (cap or 20):
            raise CapExceeded("partition instance too large for exhaustive search")
        total = sum(xs)
        if total % 2:
            return False
        half = total // 2
        sums = {0}
        for x in xs:
            sums |= {s + x for s in sums}
        return half in sums

    if problem == "sat":
        clauses: list[Sequence[int]] = [list(c) for c in instance]
        variables = sorted({abs(l) for c in clauses for l in c})
        if len(variables) > (cap or 16):
            raise CapExceeded("sat instance too large for exhaustive search")
        for bits in itertools.product([False, True], repeat=len(variables)):
            assignment = dict(zip(variables, bits))
            if all(
                any(assignment[abs(l)] == (l > 0) for l in clause) for clause in clauses
            ):
                return True
        return False

    if problem == "hampath":
        adjacency, start = instance
        adj: Mapping[str, Iterable[str]] = {v: set(ws) for v, ws in adjacency.items()}
        vertices = sorted(adj)
        if len(vertices) > (cap or 8):
            raise CapExceeded("hampath instance too large for exhaustive search")
        if start not in adj:
            raise ValueError(f"start vertex {start!r} not in the graph")

        def extend(cur: str, left: set[str]) -> bool:
            if not left:
                return True
            return any(w in left and extend(w, left - {w}) for w in adj[cur])

        return extend(start, set(vertices) - {start})

    raise ValueError(f"unknown problem {problem!r}")
