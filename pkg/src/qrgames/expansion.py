"""Target-tracking expansion of a game and its safe-transition restriction.

The expanded game pairs every base state with the set of players whose
target has already been visited.  A transition from (v, S) under a joint
move goes to (v', S ∪ {p : v' is a target of p}); the initial expanded
state seeds S with the players whose target contains the initial state.
Players already in S incur no further cost, so a finite sum over any play
of the expanded game equals the reach-cost semantics of the base game.

Only expanded states reachable from the initial one are materialized.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, NamedTuple

from .costs import INF
from .game import Game, Step

if TYPE_CHECKING:
    from .coalition import ValueMap


class ExpandedState(NamedTuple):
    base: int
    reached: frozenset[int]


@dataclass(frozen=True)
class ExpandedGame:
    """Reachable fragment of the expansion, with per-state step tables.

    Step tables are index-aligned with the base state's tables, so a
    projected-profile lookup on the base game addresses the expanded
    step directly.
    """

    base: Game
    estates: tuple[ExpandedState, ...]
    esteps: tuple[tuple[Step, ...], ...]
    initial: int = 0

    # -- arena protocol ------------------------------------------------

    @property
    def players(self) -> tuple[str, ...]:
        return self.base.players

    @property
    def actions(self) -> tuple[tuple[str, ...], ...]:
        return self.base.actions

    @property
    def n_players(self) -> int:
        return self.base.n_players

    @property
    def n_states(self) -> int:
        return len(self.estates)

    @property
    def initial_state(self) -> int:
        return self.initial

    def state_label(self, state: int) -> str:
        base, reached = self.estates[state]
        names = ",".join(self.base.players[p] for p in sorted(reached))
        return f"{self.base.states[base]}|{{{names}}}"

    def is_target(self, state: int, player: int) -> bool:
        return player in self.estates[state].reached

    def arena_steps(self, state: int) -> tuple[Step, ...]:
        return self.esteps[state]

    def arena_relevant(self, state: int) -> tuple[int, ...]:
        return self.base.arena_relevant(self.estates[state].base)

    def arena_step_for(self, state: int, profile: tuple[str, ...]) -> Step:
        base = self.estates[state].base
        table = self.base._tables[base]
        key = tuple(profile[p] for p in table.relevant)
        return self.esteps[state][table.lookup[key]]

    def reached(self, state: int) -> frozenset[int]:
        return self.estates[state].reached

    def find(self, base_name: str, reached: Iterable[int]) -> int:
        """Index of an expanded state by base-state name and reached set."""
        key = ExpandedState(self.base.state_index(base_name), frozenset(reached))
        return self.estates.index(key)


def expand(game: Game) -> ExpandedGame:
    """Build the reachable expanded game."""
    game.validate()
    n = game.n_players
    first = ExpandedState(
        game.initial, frozenset(p for p in range(n) if game.is_target(game.initial, p))
    )
    index: dict[ExpandedState, int] = {first: 0}
    estates: list[ExpandedState] = [first]
    esteps: list[tuple[Step, ...]] = []
    queue: deque[int] = deque([0])
    while queue:
        cur = queue.popleft()
        base, reached = estates[cur]
        out: list[Step] = []
        for step in game.arena_steps(base):
            gained = frozenset(
                p for p in range(n) if p not in reached and game.is_target(step.target, p)
            )
            nxt = ExpandedState(step.target, reached | gained)
            if nxt not in index:
                index[nxt] = len(estates)
                estates.append(nxt)
                queue.append(index[nxt])
            star = tuple(0 if p in reached else step.cost[p] for p in range(n))
            out.append(Step(step.profile, index[nxt], star, step.rule))
        # esteps grows in BFS order, matching estates
        while len(esteps) <= cur:
            esteps.append(())
        esteps[cur] = tuple(out)
    return ExpandedGame(game, tuple(estates), tuple(esteps))


@dataclass(frozen=True)
class RestrictedGame:
    """Subgraph of an expanded game keeping only W-safe transitions.

    ``allowed[u]`` lists the surviving step indices at expanded state u;
    ``states`` is the set of states still reachable from the initial one
    through surviving transitions.
    """

    egame: ExpandedGame
    winners: frozenset[int]
    allowed: tuple[tuple[int, ...], ...]
    states: frozenset[int]

    def transitions(self) -> list[tuple[int, Step]]:
        out = []
        for u in sorted(self.states):
            for si in self.allowed[u]:
                step = self.egame.arena_steps(u)[si]
                if step.target in self.states:
                    out.append((u, self.egame.arena_steps(u)[si]))
        return out

    @property
    def transition_count(self) -> int:
        return len(self.transitions())


def safe_player_masks(egame: ExpandedGame, punish: dict[int, "ValueMap"]) -> list[list[int]]:
    """Per (state, step): bitmask of players p such that every profile
    obtained by (possibly) changing p's action keeps p's punishment value
    infinite.  A step is safe for a winner set W when the mask covers all
    players outside W."""
    n = egame.n_players
    values = [punish[p].values for p in range(n)]
    masks: list[list[int]] = []
    for u in range(egame.n_states):
        row: list[int] = []
        for step in egame.arena_steps(u):
            mask = 0
            for p in range(n):
                if values[p][step.target] != INF:
                    continue
                ok = True
                for a in egame.actions[p]:
                    if a == step.profile[p]:
                        continue
                    alt = step.profile[:p] + (a,) + step.profile[p + 1 :]
                    other = egame.arena_step_for(u, alt)
                    if values[p][other.target] != INF:
                        ok = False
                        break
                if ok:
                    mask |= 1 << p
            row.append(mask)
        masks.append(row)
    return masks


def safe_restrict(
    egame: ExpandedGame, winners: Iterable[int], punish: dict[int, "ValueMap"]
) -> RestrictedGame:
    """Keep exactly the transitions safe for ``winners``; prune states no
    longer reachable from the initial expanded state.  The result may
    have no transitions at all."""
    wset = frozenset(winners)
    loser_mask = 0
    for p in range(egame.n_players):
        if p not in wset:
            loser_mask |= 1 << p
    masks = safe_player_masks(egame, punish)
    allowed = tuple(
        tuple(si for si, m in enumerate(masks[u]) if m & loser_mask == loser_mask)
        for u in range(egame.n_states)
    )
    seen = {egame.initial_state}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for si in allowed[u]:
            t = egame.arena_steps(u)[si].target
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return RestrictedGame(egame, wset, allowed, frozenset(seen))
