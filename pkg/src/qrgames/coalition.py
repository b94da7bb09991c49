"""Punishment values and memoryless punishing strategies.

For a fixed player, the rest of the players act as one coalition trying
to make that player's reach-cost as large as possible (infinite when they
can keep it away from its targets forever).  The per-state guarantee is
the fixpoint of a max-min value iteration: coalition moves maximize, the
player's replies minimize, and target states stay frozen at zero.  The
fixpoint is reached within one sweep per state, and a memoryless
coalition strategy read off the fixpoint attains it.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

from .costs import INF, Cost


@dataclass(frozen=True)
class ValueMap:
    """Per-state punishment guarantee against one player."""

    player: int
    values: tuple[Cost, ...]

    def by_label(self, arena) -> dict[str, Cost]:
        return {arena.state_label(i): v for i, v in enumerate(self.values)}


@dataclass(frozen=True)
class PunishmentTable:
    """Memoryless coalition strategy: one move per state per member."""

    player: int
    moves: tuple[tuple[tuple[int, str], ...], ...]

    def move_profile(self, state: int, own_action: str, n_players: int) -> tuple[str, ...]:
        profile = [""] * n_players
        profile[self.player] = own_action
        for member, action in self.moves[state]:
            profile[member] = action
        return tuple(profile)


def _maxmin_groups(arena, state: int, player: int):
    """Coalition choice groups at a state.

    Returns a list of groups in canonical (declaration) order; each group
    fixes the coalition's relevant coordinates and lists the steps the
    fixed player can select among.
    """
    relevant = arena.arena_relevant(state)
    steps = arena.arena_steps(state)
    keys = itertools.product(*(arena.actions[p] for p in relevant))
    if player not in relevant:
        # Every projected profile is a pure coalition choice.
        return [[step] for step in steps]
    pos = relevant.index(player)
    groups: dict[tuple[str, ...], list] = {}
    for step, key in zip(steps, keys):
        ckey = key[:pos] + key[pos + 1 :]
        groups.setdefault(ckey, []).append(step)
    return list(groups.values())


def iterate_values(arena, player: int) -> list[tuple[Cost, ...]]:
    """All iterates of the value iteration, from the start vector to the
    fixpoint (the last two entries are equal)."""
    n = arena.n_states
    frozen = [arena.is_target(u, player) for u in range(n)]
    groups = [None if frozen[u] else _maxmin_groups(arena, u, player) for u in range(n)]
    current: tuple[Cost, ...] = tuple(0 if frozen[u] else INF for u in range(n))
    history = [current]
    for _ in range(n + 1):
        nxt: list[Cost] = []
        for u in range(n):
            if frozen[u]:
                nxt.append(0)
                continue
            acc: Cost | None = None
            for group in groups[u]:
                reply = min(step.cost[player] + current[step.target] for step in group)
                if acc is None or reply > acc:
                    acc = reply
            nxt.append(acc if acc is not None else INF)
        nxt_t = tuple(nxt)
        history.append(nxt_t)
        if nxt_t == current:
            return history
        current = nxt_t
    raise RuntimeError("value iteration failed to stabilize within the state bound")


def coalition_values(arena, player: int) -> ValueMap:
    """Largest per-state cost the coalition can force on ``player``.

    Infinite entries mark states from which the coalition can keep the
    player away from its targets forever.
    """
    return ValueMap(player, iterate_values(arena, player)[-1])


def punishing_strategy(arena, player: int) -> PunishmentTable:
    """Memoryless coalition strategy attaining the punishment values.

    At each state the coalition fixes the first (declaration-ordered)
    move whose guaranteed reply value matches the fixpoint; target states
    get each member's first action.
    """
    fix = coalition_values(arena, player).values
    members = [p for p in range(arena.n_players) if p != player]
    moves: list[tuple[tuple[int, str], ...]] = []
    for u in range(arena.n_states):
        assignment = {p: arena.actions[p][0] for p in members}
        if not arena.is_target(u, player):
            relevant = arena.arena_relevant(u)
            steps = arena.arena_steps(u)
            keys = list(itertools.product(*(arena.actions[p] for p in relevant)))
            if player in relevant:
                pos = relevant.index(player)
                groups: dict[tuple, list] = {}
                for step, key in zip(steps, keys):
                    groups.setdefault(key[:pos] + key[pos + 1 :], []).append(step)
                items = list(groups.items())
                crel = [p for p in relevant if p != player]
            else:
                items = [(key, [step]) for step, key in zip(steps, keys)]
                crel = list(relevant)
            for ckey, group in items:
                reply = min(step.cost[player] + fix[step.target] for step in group)
                if reply == fix[u]:
                    assignment.update(zip(crel, ckey))
                    break
        moves.append(tuple(sorted(assignment.items())))
    return PunishmentTable(player, tuple(moves))


def best_response_cost(arena, player: int, table: PunishmentTable, source: int) -> Cost:
    """Cheapest reach-cost for ``player`` when all others follow ``table``.

    Dijkstra over the one-player graph obtained by fixing the coalition
    moves; infinite when the targets are unreachable there.
    """
    if arena.is_target(source, player):
        return 0
    dist: dict[int, Cost] = {source: 0}
    heap: list[tuple[Cost, int]] = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist.get(u, INF):
            continue
        if arena.is_target(u, player):
            return d
        for a in arena.actions[player]:
            profile = table.move_profile(u, a, arena.n_players)
            step = arena.arena_step_for(u, profile)
            nd = d + step.cost[player]
            if nd < dist.get(step.target, INF):
                dist[step.target] = nd
                heapq.heappush(heap, (nd, step.target))
    return INF
