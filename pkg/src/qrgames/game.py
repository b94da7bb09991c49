"""Game data model: states, per-player action alphabets, transition rules.

A game is a finite graph where all players pick actions simultaneously.
The joint move is resolved against an ordered list of wildcard-pattern
rules; the first matching rule determines the successor state and the
per-player cost vector.  Rule order therefore makes the transition
function total and deterministic, and the parser/validator rejects games
where some (state, profile) pair matches no rule.

Each player owns a target set of states.  A player's cost along a play is
the sum of its cost entries up to and including the transition that first
enters its target set (infinite if the target set is never entered).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .costs import Cost, CostVector
from .errors import CapExceeded, ParseError

#: Guard for the per-state projected-profile enumeration.
PROFILE_SPACE_CAP = 1_000_000


@dataclass(frozen=True)
class Rule:
    """One transition rule: ``source [pattern] -> target cost [vector]``.

    ``pattern`` has one entry per player: an action symbol or None for a
    wildcard.  Costs are finite naturals.
    """

    source: int
    pattern: tuple[str | None, ...]
    target: int
    cost: tuple[int, ...]


class Step(NamedTuple):
    """A resolved transition class at some state.

    ``profile`` is the canonical full action profile representing the
    class (irrelevant coordinates filled with each player's first
    action); all profiles agreeing with it on the state's relevant
    coordinates behave identically.
    """

    profile: tuple[str, ...]
    target: int
    cost: CostVector
    rule: int


@dataclass(frozen=True)
class Transition:
    """User-facing transition: named states plus the realized profile."""

    source: str
    profile: tuple[str, ...]
    target: str
    cost: CostVector


class _StateTable(NamedTuple):
    relevant: tuple[int, ...]
    steps: tuple[Step, ...]
    lookup: dict[tuple[str, ...], int]


@dataclass(frozen=True)
class Game:
    """A validated concurrent game.

    Players, states and actions keep their declaration order; every
    set emitted by this package is sorted against those orders.
    """

    players: tuple[str, ...]
    actions: tuple[tuple[str, ...], ...]
    states: tuple[str, ...]
    initial: int
    targets: tuple[frozenset[int], ...]
    rules: tuple[Rule, ...]

    def __post_init__(self):
        if not self.players:
            raise ParseError("a game needs at least one player")
        if len(self.actions) != len(self.players):
            raise ParseError("one action alphabet per player is required")
        for name, alphabet in zip(self.players, self.actions):
            if not alphabet:
                raise ParseError(f"player {name!r} has an empty action alphabet")
            if len(set(alphabet)) != len(alphabet):
                raise ParseError(f"player {name!r} repeats an action symbol")
        if not self.states:
            raise ParseError("a game needs at least one state")
        if not 0 <= self.initial < len(self.states):
            raise ParseError("initial state out of range")
        if len(self.targets) != len(self.players):
            raise ParseError("one target set per player is required")
        for tset in self.targets:
            for s in tset:
                if not 0 <= s < len(self.states):
                    raise ParseError("target state out of range")
        for rule in self.rules:
            if not 0 <= rule.source < len(self.states):
                raise ParseError("rule source out of range")
            if not 0 <= rule.target < len(self.states):
                raise ParseError("rule target out of range")
            if len(rule.pattern) != len(self.players):
                raise ParseError("rule pattern length must equal the player count")
            for player, sym in enumerate(rule.pattern):
                if sym is not None and sym not in self.actions[player]:
                    raise ParseError(
                        f"rule at {self.states[rule.source]!r} uses action {sym!r} "
                        f"not declared for player {self.players[player]!r}"
                    )
            if len(rule.cost) != len(self.players):
                raise ParseError("rule cost length must equal the player count")
            for c in rule.cost:
                if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                    raise ParseError("rule costs must be non-negative integers")

    # -- arena protocol (shared with ExpandedGame) --------------------

    @property
    def n_players(self) -> int:
        return len(self.players)

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def initial_state(self) -> int:
        return self.initial

    def state_label(self, state: int) -> str:
        return self.states[state]

    def is_target(self, state: int, player: int) -> bool:
        return state in self.targets[player]

    def arena_steps(self, state: int) -> tuple[Step, ...]:
        return self._tables[state].steps

    def arena_relevant(self, state: int) -> tuple[int, ...]:
        return self._tables[state].relevant

    def arena_step_for(self, state: int, profile: tuple[str, ...]) -> Step:
        table = self._tables[state]
        key = tuple(profile[p] for p in table.relevant)
        return table.steps[table.lookup[key]]

    # -- rule resolution ----------------------------------------------

    @cached_property
    def _rules_by_state(self) -> tuple[tuple[tuple[int, Rule], ...], ...]:
        per_state: list[list[tuple[int, Rule]]] = [[] for _ in self.states]
        for idx, rule in enumerate(self.rules):
            per_state[rule.source].append((idx, rule))
        return tuple(tuple(rs) for rs in per_state)

    @cached_property
    def _tables(self) -> tuple[_StateTable, ...]:
        return tuple(self._build_table(s) for s in range(self.n_states))

    def _build_table(self, state: int) -> _StateTable:
        rules = self._rules_by_state[state]
        relevant = sorted(
            {p for _, rule in rules for p, sym in enumerate(rule.pattern) if sym is not None}
        )
        space = 1
        for p in relevant:
            space *= len(self.actions[p])
        if space > PROFILE_SPACE_CAP:
            raise CapExceeded(
                f"state {self.states[state]!r} constrains {len(relevant)} players "
                f"({space} projected profiles > cap {PROFILE_SPACE_CAP})"
            )
        # Rules constraining every relevant coordinate are resolvable by a
        # dict probe on the projected key; only wildcard-bearing rules need
        # a scan.  Both record their list position so first-match order is
        # preserved across the two groups.
        exact: dict[tuple[str, ...], int] = {}
        loose: list[tuple[int, list[tuple[int, str]], Rule]] = []
        for position, (idx, rule) in enumerate(rules):
            need = [
                (relevant.index(p), sym)
                for p, sym in enumerate(rule.pattern)
                if sym is not None
            ]
            if len(need) == len(relevant):
                key = tuple(sym for _, sym in sorted(need))
                exact.setdefault(key, position)
            else:
                loose.append((position, need, rule))
        base_profile = [alphabet[0] for alphabet in self.actions]
        steps: list[Step] = []
        lookup: dict[tuple[str, ...], int] = {}
        for key in itertools.product(*(self.actions[p] for p in relevant)):
            position = exact.get(key, len(rules))
            for loose_pos, need, _ in loose:
                if loose_pos > position:
                    break
                if all(key[pos] == sym for pos, sym in need):
                    position = loose_pos
                    break
            if position == len(rules):
                profile = list(base_profile)
                for pos, p in enumerate(relevant):
                    profile[p] = key[pos]
                raise ParseError(
                    f"transition function is not total: state {self.states[state]!r} "
                    f"has no rule matching profile ({','.join(profile)})"
                )
            idx, rule = rules[position]
            profile = list(base_profile)
            for pos, p in enumerate(relevant):
                profile[p] = key[pos]
            lookup[key] = len(steps)
            steps.append(Step(tuple(profile), rule.target, rule.cost, idx))
        return _StateTable(tuple(relevant), tuple(steps), lookup)

    def validate(self) -> None:
        """Force rule resolution (and with it the totality check)."""
        _ = self._tables

    def state_index(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise ParseError(f"unknown state {name!r}") from None

    def player_index(self, name: str) -> int:
        try:
            return self.players.index(name)
        except ValueError:
            raise ParseError(f"unknown player {name!r}") from None


def successor(game: Game, state: int | str, profile: tuple[str, ...]) -> Transition:
    """Resolve one joint move: the first matching rule wins.

    ``state`` may be an index or a state name; ``profile`` has one declared
    action symbol per player.
    """
    idx = game.state_index(state) if isinstance(state, str) else state
    if len(profile) != game.n_players:
        raise ParseError("profile length must equal the player count")
    for player, sym in enumerate(profile):
        if sym not in game.actions[player]:
            raise ParseError(
                f"action {sym!r} not declared for player {game.players[player]!r}"
            )
    step = game.arena_step_for(idx, tuple(profile))
    return Transition(game.states[idx], tuple(profile), game.states[step.target], step.cost)


def outcome_cost_base(game: Game, transitions: list[Step], start: int | None = None) -> CostVector:
    """Accumulated cost of a finite play in the base game.

    Each player pays its entries up to and including the transition that
    first enters its target set; players whose target set is never
    entered get an infinite cost.  A player starting inside its target
    pays nothing.  Used as the reference semantics in tests.
    """
    from .costs import INF

    state = game.initial if start is None else start
    totals: list[Cost] = [0] * game.n_players
    done = [game.is_target(state, p) for p in range(game.n_players)]
    for step in transitions:
        for p in range(game.n_players):
            if not done[p]:
                totals[p] += step.cost[p]
                if game.is_target(step.target, p):
                    done[p] = True
        state = step.target
    return tuple(totals[p] if done[p] else INF for p in range(game.n_players))
