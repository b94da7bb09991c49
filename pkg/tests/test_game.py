import itertools

import pytest

from qrgames.costs import INF
from qrgames.errors import ParseError
from qrgames.game import Game, Rule, outcome_cost_base, successor
from qrgames.generators import gen_infinite_ne, gen_xor
from qrgames.expansion import expand

from randgames import random_game, random_walk


def test_successor_fig1_profiles():
    game = gen_xor()
    t = successor(game, "s", ("a", "a"))
    assert (t.target, t.cost) == ("t", (0, 1))
    t = successor(game, "s", ("a", "b"))
    assert (t.target, t.cost) == ("t", (1, 0))


def test_first_match_wins():
    game = Game(
        players=("p1", "p2"),
        actions=(("a", "b"), ("a", "b")),
        states=("s", "u", "w"),
        initial=0,
        targets=(frozenset(), frozenset()),
        rules=(
            Rule(0, ("a", None), 1, (0, 0)),
            Rule(0, (None, None), 2, (0, 0)),
            Rule(1, (None, None), 1, (0, 0)),
            Rule(2, (None, None), 2, (0, 0)),
        ),
    )
    assert successor(game, "s", ("a", "b")).target == "u"
    assert successor(game, "s", ("b", "b")).target == "w"


def test_successor_rejects_unknown_action():
    with pytest.raises(ParseError, match="not declared"):
        successor(gen_xor(), "s", ("a", "z"))


@pytest.mark.parametrize("seed", range(20))
def test_totality_every_profile_resolves(seed):
    game = random_game(seed, n_players=seed % 3 + 1)
    for state in range(game.n_states):
        for profile in itertools.product(*game.actions):
            step = game.arena_step_for(state, profile)
            assert 0 <= step.target < game.n_states


def test_totality_four_players_three_actions():
    import random as rnd

    rng = rnd.Random(77)
    actions = tuple(("x", "y", "z") for _ in range(4))
    rules = []
    for s in range(3):
        for _ in range(4):
            pattern = tuple(
                None if rng.random() < 0.5 else rng.choice("xyz") for _ in range(4)
            )
            rules.append(Rule(s, pattern, rng.randrange(3), (0, 1, 2, 3)))
        rules.append(Rule(s, (None,) * 4, rng.randrange(3), (1, 1, 1, 1)))
    game = Game(
        players=("p0", "p1", "p2", "p3"),
        actions=actions,
        states=("s0", "s1", "s2"),
        initial=0,
        targets=(frozenset({2}),) * 4,
        rules=tuple(rules),
    )
    game.validate()
    for state in range(3):
        for profile in itertools.product(*actions):
            assert 0 <= game.arena_step_for(state, profile).target < 3


def test_base_cost_counts_until_first_target_visit():
    game = gen_infinite_ne()
    loop = game.arena_step_for(0, ("a", "a"))
    exit_ = game.arena_step_for(0, ("b", "b"))
    after = game.arena_step_for(1, ("a", "a"))
    # two warm-up loops, exit, then a post-target step that must be free
    assert outcome_cost_base(game, [loop, loop, exit_, after]) == (3, 3)
    assert outcome_cost_base(game, [loop, loop]) == (INF, INF)


def test_initial_state_inside_target_costs_nothing():
    game = Game(
        players=("p",),
        actions=(("a",),),
        states=("s",),
        initial=0,
        targets=(frozenset({0}),),
        rules=(Rule(0, (None,), 0, (7,)),),
    )
    step = game.arena_step_for(0, ("a",))
    assert outcome_cost_base(game, [step, step]) == (0,)


@pytest.mark.parametrize("seed", range(30))
def test_expanded_cost_matches_base_semantics(seed):
    game = random_game(seed, n_players=seed % 2 + 2)
    walk = random_walk(game, seed * 7 + 1, length=9)
    base = outcome_cost_base(game, walk)
    egame = expand(game)
    state = egame.initial_state
    totals = [0] * game.n_players
    for step in walk:
        estep = egame.arena_step_for(state, step.profile)
        for p in range(game.n_players):
            totals[p] += estep.cost[p]
        state = estep.target
    reached = egame.reached(state)
    expanded = tuple(totals[p] if p in reached else INF for p in range(game.n_players))
    assert expanded == base
