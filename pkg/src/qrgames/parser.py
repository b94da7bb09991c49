"""Line-oriented game file format.

::

    players <name>+
    actions <player>: <symbol>+
    state <name> [init] [target: <player>+]
    trans <state> [<sym-or-*>(,<sym-or-*>)*] -> <state> cost [<nat>(,<nat>)*]

``#`` starts a comment.  Pattern and cost lists are in player-declaration
order, exactly one state carries ``init``, and the first matching trans
rule wins.  Parsing rejects games where some (state, profile) matches no
rule.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .game import Game, Rule

_BRACKET = re.compile(r"\[([^\]]*)\]")

# Token charset: anything except whitespace and the grammar's punctuation.
_NAME = re.compile(r"^[^\s\[\],:#]+$")


def _check_name(tok: str, line: int, kind: str) -> str:
    if not _NAME.match(tok):
        raise ParseError(f"invalid {kind} name {tok!r}", line)
    return tok


def parse_game(text: str) -> Game:
    """Parse and validate a game document; raises ParseError on any defect."""
    players: list[str] = []
    actions: dict[str, list[str]] = {}
    states: list[str] = []
    init: str | None = None
    targets: dict[str, list[str]] = {}
    raw_rules: list[tuple[int, str, list[str | None], str, list[int]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "players":
            if players:
                raise ParseError("duplicate players line", lineno)
            players = [_check_name(t, lineno, "player") for t in rest.split()]
            if not players:
                raise ParseError("players line declares no players", lineno)
            if len(set(players)) != len(players):
                raise ParseError("duplicate player name", lineno)
        elif head == "actions":
            name, sep, syms = rest.partition(":")
            name = name.strip()
            if not sep:
                raise ParseError("expected 'actions <player>: <symbol>+'", lineno)
            if name not in players:
                raise ParseError(f"undeclared player {name!r}", lineno)
            if name in actions:
                raise ParseError(f"duplicate actions line for player {name!r}", lineno)
            symbols = [_check_name(t, lineno, "action") for t in syms.split()]
            if not symbols:
                raise ParseError(f"player {name!r} declares no actions", lineno)
            actions[name] = symbols
        elif head == "state":
            parts = rest.split()
            if not parts:
                raise ParseError("state line without a name", lineno)
            name = _check_name(parts[0], lineno, "state")
            if name in states:
                raise ParseError(f"duplicate state {name!r}", lineno)
            states.append(name)
            i = 1
            while i < len(parts):
                if parts[i] == "init":
                    if init is not None:
                        raise ParseError("more than one init state", lineno)
                    init = name
                    i += 1
                elif parts[i] == "target:" or parts[i] == "target":
                    if parts[i] == "target":
                        raise ParseError("expected 'target:'", lineno)
                    owners = parts[i + 1 :]
                    if not owners:
                        raise ParseError("empty target player list", lineno)
                    for p in owners:
                        if p not in players:
                            raise ParseError(f"undeclared player {p!r}", lineno)
                        targets.setdefault(p, []).append(name)
                    i = len(parts)
                else:
                    raise ParseError(f"unexpected token {parts[i]!r} on state line", lineno)
        elif head == "trans":
            m = re.match(
                r"^(\S+)\s*\[([^\]]*)\]\s*->\s*(\S+)\s+cost\s*\[([^\]]*)\]\s*$", rest
            )
            if not m:
                raise ParseError(
                    "expected 'trans <state> [<pattern>] -> <state> cost [<nats>]'", lineno
                )
            src, pat_text, tgt, cost_text = m.groups()
            pattern: list[str | None] = []
            for item in pat_text.split(","):
                item = item.strip()
                if not item:
                    raise ParseError("empty pattern entry", lineno)
                pattern.append(None if item == "*" else _check_name(item, lineno, "action"))
            cost: list[int] = []
            for item in cost_text.split(","):
                item = item.strip()
                if not re.match(r"^\d+$", item):
                    raise ParseError(f"cost entry {item!r} is not a natural number", lineno)
                cost.append(int(item))
            raw_rules.append((lineno, src, pattern, tgt, cost))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)

    if not players:
        raise ParseError("missing players line")
    for p in players:
        if p not in actions:
            raise ParseError(f"player {p!r} has no actions line")
    if not states:
        raise ParseError("no states declared")
    if init is None:
        raise ParseError("no state is marked init")

    state_idx = {s: i for i, s in enumerate(states)}
    player_idx = {p: i for i, p in enumerate(players)}
    rules: list[Rule] = []
    for lineno, src, pattern, tgt, cost in raw_rules:
        if src not in state_idx:
            raise ParseError(f"undeclared state {src!r}", lineno)
        if tgt not in state_idx:
            raise ParseError(f"undeclared state {tgt!r}", lineno)
        if len(pattern) != len(players):
            raise ParseError(
                f"pattern lists {len(pattern)} actions for {len(players)} players", lineno
            )
        if len(cost) != len(players):
            raise ParseError(
                f"cost lists {len(cost)} entries for {len(players)} players", lineno
            )
        for p, sym in enumerate(pattern):
            if sym is not None and sym not in actions[players[p]]:
                raise ParseError(
                    f"action {sym!r} not declared for player {players[p]!r}", lineno
                )
        rules.append(Rule(state_idx[src], tuple(pattern), state_idx[tgt], tuple(cost)))

    game = Game(
        players=tuple(players),
        actions=tuple(tuple(actions[p]) for p in players),
        states=tuple(states),
        initial=state_idx[init],
        targets=tuple(
            frozenset(state_idx[s] for s in targets.get(p, [])) for p in players
        ),
        rules=tuple(rules),
    )
    game.validate()  # totality check happens here
    return game


def serialize_game(game: Game) -> str:
    """Canonical text for a game; parse(serialize(g)) == g."""
    lines = ["players " + " ".join(game.players)]
    for name, alphabet in zip(game.players, game.actions):
        lines.append(f"actions {name}: " + " ".join(alphabet))
    for i, name in enumerate(game.states):
        parts = [f"state {name}"]
        if i == game.initial:
            parts.append("init")
        owners = [p for p in range(game.n_players) if i in game.targets[p]]
        if owners:
            parts.append("target: " + " ".join(game.players[p] for p in owners))
        lines.append(" ".join(parts))
    for rule in game.rules:
        pat = ",".join("*" if s is None else s for s in rule.pattern)
        cost = ",".join(str(c) for c in rule.cost)
        lines.append(
            f"trans {game.states[rule.source]} [{pat}] -> "
            f"{game.states[rule.target]} cost [{cost}]"
        )
    return "\n".join(lines) + "\n"
