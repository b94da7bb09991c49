"""Builders for the example game families and the hardness reductions.

Each generator carries a machine-checkable contract (tested): the XOR
game has no equilibrium, the doubling chain has the full exponential
frontier, the self-loop game has exactly one Pareto-optimal equilibrium,
the stability example pins SO / PoS / PoA, and the three reduction
families have an equilibrium exactly when their source instance is a
yes-instance.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .errors import ParseError
from .game import Game, Rule

MAX_DOUBLING_STAGES = 20


def _game(players, actions, states, initial, targets, rules) -> Game:
    state_idx = {s: i for i, s in enumerate(states)}
    player_idx = {p: i for i, p in enumerate(players)}
    built = []
    for src, pattern, tgt, cost in rules:
        pat = tuple(
            None if sym is None else sym
            for sym in (pattern[player_idx[p]] if isinstance(pattern, dict) else pattern)
        )
        built.append(Rule(state_idx[src], pat, state_idx[tgt], tuple(cost)))
    game = Game(
        players=tuple(players),
        actions=tuple(tuple(a) for a in actions),
        states=tuple(states),
        initial=state_idx[initial],
        targets=tuple(
            frozenset(state_idx[s] for s in targets[p]) for p in players
        ),
        rules=tuple(built),
    )
    game.validate()
    return game


def gen_xor() -> Game:
    """Two players race through one matching-pennies step; whoever is
    "wrong" pays, so someone always wants to flip: no equilibrium."""
    rules = [
        ("s", ("a", "a"), "t", (0, 1)),
        ("s", ("b", "b"), "t", (0, 1)),
        ("s", ("a", "b"), "t", (1, 0)),
        ("s", ("b", "a"), "t", (1, 0)),
        ("t", (None, None), "t", (0, 0)),
    ]
    return _game(
        ["p1", "p2"], [["a", "b"], ["a", "b"]], ["s", "t"], "s",
        {"p1": ["t"], "p2": ["t"]}, rules,
    )


def gen_exp_ne(n: int) -> Game:
    """Chain of n matching-pennies stages with doubling stakes, then a
    final step that is free on agreement and ruinous otherwise.

    Every split (x, 2^n - 1 - x) of the stake is an equilibrium cost.
    """
    if not 1 <= n <= MAX_DOUBLING_STAGES:
        raise ParseError(f"stage count must be in 1..{MAX_DOUBLING_STAGES}")
    states = [f"s{i}" for i in range(n + 1)] + ["t"]
    rules = []
    for i in range(n):
        src, tgt = f"s{i}", f"s{i + 1}"
        rules.append((src, ("a", "a"), tgt, (0, 2**i)))
        rules.append((src, ("b", "b"), tgt, (0, 2**i)))
        rules.append((src, ("a", "b"), tgt, (2**i, 0)))
        rules.append((src, ("b", "a"), tgt, (2**i, 0)))
    rules.append((f"s{n}", ("b", "b"), "t", (0, 0)))
    rules.append((f"s{n}", (None, None), "t", (2**n, 2**n)))
    rules.append(("t", (None, None), "t", (0, 0)))
    return _game(
        ["p1", "p2"], [["a", "b"], ["a", "b"]], states, "s0",
        {"p1": ["t"], "p2": ["t"]}, rules,
    )


def gen_infinite_ne() -> Game:
    """Self-loop game: looping costs (1,1) per round and agreement exits
    for (1,1), so every number of warm-up rounds is an equilibrium but
    only the immediate exit is Pareto-optimal.  All costs are all-ones,
    keeping the game inside the joint-target uniform-cost fragment."""
    rules = [
        ("s", ("a", "a"), "s", (1, 1)),
        ("s", ("b", "b"), "t", (1, 1)),
        ("s", (None, None), "sink", (1, 1)),
        ("t", (None, None), "t", (1, 1)),
        ("sink", (None, None), "sink", (1, 1)),
    ]
    return _game(
        ["p1", "p2"], [["a", "b"], ["a", "b"]], ["s", "t", "sink"], "s",
        {"p1": ["t"], "p2": ["t"]}, rules,
    )


def gen_pos(weight: int) -> Game:
    """Stability example: a cheap branch that is strategically unstable
    and an expensive stable branch.

    The social optimum is 1; the best equilibrium costs (W, W), so the
    stability ratio is 2W, and staying in the expensive loop forever
    yields equilibria of unbounded social cost.
    """
    if weight < 1:
        raise ParseError("weight must be positive")
    w = weight
    rules = [
        ("s0", ("0", "0"), "s1", (0, 0)),
        ("s0", (None, None), "s3", (w, w)),
        ("s1", ("0", "0"), "s2", (0, 1)),
        ("s1", ("1", "1"), "s2", (0, 1)),
        ("s1", ("0", "1"), "s2", (1, 0)),
        ("s1", ("1", "0"), "s2", (1, 0)),
        ("s3", ("0", "0"), "s4", (0, 0)),
        ("s3", (None, None), "s3", (w, w)),
        ("s2", (None, None), "s2", (0, 0)),
        ("s4", (None, None), "s4", (0, 0)),
    ]
    return _game(
        ["p0", "p1"], [["0", "1"], ["0", "1"]],
        ["s0", "s1", "s2", "s3", "s4"], "s0",
        {"p0": ["s2", "s4"], "p1": ["s2", "s4"]}, rules,
    )


def gen_partition(xs: Sequence[int]) -> Game:
    """Two players split a set of numbers stage by stage.

    An escape branch guarantees either player cost S+1 where 2S is the
    (possibly doubled) total, and the final agreement step punishes
    disagreement with S+2, so the only possible equilibrium cost is
    (S, S): it exists exactly when the numbers admit an equal split.
    Numbers are doubled when any of them is odd, which keeps S integral
    and preserves the answer.
    """
    xs = list(xs)
    if not xs or any(not isinstance(x, int) or x <= 0 for x in xs):
        raise ParseError("expected a non-empty list of positive integers")
    if any(x % 2 for x in xs):
        xs = [2 * x for x in xs]
    total = sum(xs)
    half = total // 2
    n = len(xs)
    states = ["s"] + [f"v{i + 1}" for i in range(n)] + ["r1", "r2", "t1", "t2"]
    rules = [
        # opening choice: match to play the split, mismatch to escape
        ("s", ("0", "0"), "v1", (0, 0)),
        ("s", ("1", "1"), "v1", (0, 0)),
        ("s", (None, None), "t1", (half, half)),
        # escape: one more matching-pennies step on top of the S already paid
        ("t1", ("0", "0"), "t2", (0, 1)),
        ("t1", ("1", "1"), "t2", (0, 1)),
        ("t1", (None, None), "t2", (1, 0)),
    ]
    for i, x in enumerate(xs):
        src = f"v{i + 1}"
        tgt = f"v{i + 2}" if i + 1 < n else "r1"
        rules.append((src, ("0", "0"), tgt, (0, x)))
        rules.append((src, ("1", "1"), tgt, (0, x)))
        rules.append((src, (None, None), tgt, (x, 0)))
    rules += [
        # closing agreement: both must play the designated action
        ("r1", ("0", "0"), "r2", (0, 0)),
        ("r1", (None, None), "r2", (half + 2, half + 2)),
        ("r2", (None, None), "r2", (0, 0)),
        ("t2", (None, None), "t2", (0, 0)),
    ]
    return _game(
        ["p0", "p1"], [["0", "1"], ["0", "1"]], states, "s",
        {"p0": ["t2", "r2"], "p1": ["t2", "r2"]}, rules,
    )


def partition_state_count(xs: Sequence[int]) -> int:
    return len(xs) + 5


def gen_3sat(cnf: Sequence[Sequence[int]]) -> Game:
    """Clause-walk game over a 3-CNF (integer literals, DIMACS signs).

    A selector player picks a literal per clause; the literal's opposing
    player may stop the walk for a cost of 1 to itself and the selector,
    while letting it pass costs 2 to the player of the opposite phase.
    The walk survives to the final state exactly under a consistent,
    satisfying choice of literals, so an equilibrium exists iff the
    formula is satisfiable.  All costs are at most 2.
    """
    clauses = [list(c) for c in cnf]
    if not clauses:
        raise ParseError("expected at least one clause")
    for c in clauses:
        if len(c) != 3 or any(not isinstance(l, int) or l == 0 for l in c):
            raise ParseError(f"malformed clause {c!r}: need three non-zero integer literals")
    m = len(clauses)
    n = max(abs(l) for c in clauses for l in c)

    players = ["p0"] + [name for i in range(1, n + 1) for name in (f"t{i}", f"b{i}")]
    pidx = {name: k for k, name in enumerate(players)}
    actions = [["1", "2", "3"]] + [["c", "d"] for _ in range(2 * n)]

    def lit_state(lit: int, clause: int) -> str:
        return f"c{clause}_{'x' if lit > 0 else 'nx'}{abs(lit)}"

    clause_states = [str(j) for j in range(1, m + 2)]
    occurrence_states = sorted({lit_state(l, j + 1) for j, c in enumerate(clauses) for l in c})
    stop_states = [name for i in range(1, n + 1) for name in (f"T{i}", f"B{i}")]
    states = clause_states + occurrence_states + stop_states
    target_states = stop_states + [str(m + 1)]
    targets = {p: list(target_states) for p in players}

    k = len(players)
    zero = tuple(0 for _ in range(k))

    def cost(**named: int) -> tuple[int, ...]:
        c = [0] * k
        for name, value in named.items():
            c[pidx[name]] = value
        return tuple(c)

    def pat(**named: str) -> tuple[str | None, ...]:
        p: list[str | None] = [None] * k
        for name, value in named.items():
            p[pidx[name]] = value
        return tuple(p)

    rules: list[tuple] = []
    for j, clause in enumerate(clauses, start=1):
        for slot, lit in enumerate(clause, start=1):
            rules.append((str(j), pat(p0=str(slot)), lit_state(lit, j), zero))
    for j, clause in enumerate(clauses, start=1):
        for lit in dict.fromkeys(clause):  # dedupe repeated literals
            state = lit_state(lit, j)
            i = abs(lit)
            stopper, victim = (f"t{i}", f"b{i}") if lit > 0 else (f"b{i}", f"t{i}")
            stop_state = f"T{i}" if lit > 0 else f"B{i}"
            onward = str(j + 1)
            go = cost(**{victim: 2})
            stop = cost(p0=1, **{stopper: 1})
            rules.append((state, pat(p0="1", **{stopper: "c"}), onward, go))
            rules.append((state, pat(p0="2", **{stopper: "d"}), onward, go))
            rules.append((state, pat(p0="3", **{stopper: "d"}), onward, go))
            rules.append((state, pat(), stop_state, stop))
    for terminal in [str(m + 1)] + stop_states:
        rules.append((terminal, pat(), terminal, zero))

    return _game(players, actions, states, "1", targets, rules)


def sat_state_count(cnf: Sequence[Sequence[int]]) -> int:
    clauses = [list(c) for c in cnf]
    m = len(clauses)
    n = max(abs(l) for c in clauses for l in c)
    occ = {(abs(l), l > 0, j) for j, c in enumerate(clauses) for l in c}
    return (m + 1) + len(occ) + 2 * n


def gen_hampath(adjacency: Mapping[str, Iterable[str]], start: str) -> Game:
    """Vertex players walk a directed graph by unanimous edge choice.

    Every transition costs one to everyone.  A parity gadget at the entry
    state lets any player bail to a shared escape corridor of total cost
    2n; vertex v's targets are v itself, the corridor's end, and the end
    of v's private punishment corridor (entered on edge disagreement).
    Equilibria exist exactly for graphs with a Hamiltonian path from the
    start vertex: any walk that misses a vertex, or first reaches one
    after more than 2n steps, loses to the bail-out.
    """
    vertices = sorted(adjacency)
    if start not in adjacency:
        raise ParseError(f"start vertex {start!r} not in the graph")
    for v, ws in adjacency.items():
        for w in ws:
            if w not in adjacency:
                raise ParseError(f"edge target {w!r} not a declared vertex")
            if w == v:
                raise ParseError(f"self-loop at {v!r} not supported")
        if "~" in v:
            raise ParseError("vertex names may not contain '~'")
    n = len(vertices)
    out_edges = {v: sorted(set(adjacency[v])) for v in vertices}
    degree = max((len(ws) for ws in out_edges.values()), default=0)

    symbols = [f"e{i + 1}" for i in range(degree)] + ["c", "d"]
    players = list(vertices)
    actions = [list(symbols) for _ in players]

    q_states = [f"q{j}" for j in range(2 * n + 1)]  # q0 .. q2n
    edge_states = [f"{v}~{w}" for v in vertices for w in out_edges[v]]
    r_states = [f"r{j}~{v}" for v in vertices for j in range(2 * n + 4)]
    states = q_states + list(vertices) + edge_states + r_states
    corridor_end = f"q{2 * n}"
    targets = {v: [v, corridor_end, f"r{2 * n + 3}~{v}"] for v in vertices}

    ones = tuple(1 for _ in players)
    sink_of = vertices[0]  # all disagreements funnel into this corridor

    rules: list[tuple] = []
    # entry state: odd number of 'd' symbols bails out, otherwise play begins
    for profile in itertools.product(symbols, repeat=n):
        bail = sum(1 for sym in profile if sym == "d") % 2 == 1
        rules.append(("q0", tuple(profile), "q1" if bail else start, ones))
    for j in range(1, 2 * n):
        rules.append((f"q{j}", tuple([None] * n), f"q{j + 1}", ones))
    rules.append((corridor_end, tuple([None] * n), corridor_end, ones))
    for v in vertices:
        for i, w in enumerate(out_edges[v]):
            sym = f"e{i + 1}"
            rules.append((v, tuple([sym] * n), f"{v}~{w}", ones))
        rules.append((v, tuple([None] * n), f"r0~{sink_of}", ones))
        for i, w in enumerate(out_edges[v]):
            rules.append((f"{v}~{w}", tuple([None] * n), w, ones))
    for v in vertices:
        for j in range(2 * n + 3):
            rules.append((f"r{j}~{v}", tuple([None] * n), f"r{j + 1}~{v}", ones))
        rules.append((f"r{2 * n + 3}~{v}", tuple([None] * n), f"r{2 * n + 3}~{v}", ones))

    return _game(players, actions, states, "q0", targets, rules)


def hampath_state_count(adjacency: Mapping[str, Iterable[str]]) -> int:
    n = len(adjacency)
    n_edges = sum(len(set(ws)) for ws in adjacency.values())
    return (2 * n + 1) + n + n_edges + n * (2 * n + 4)
