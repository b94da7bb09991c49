import pytest

from qrgames.errors import ParseError
from qrgames.parser import parse_game, serialize_game

from randgames import random_game

XOR_TEXT = """\
# two players race to t; whoever mismatches the other's action pays
players p1 p2
actions p1: a b
actions p2: a b
state s init
state t target: p1 p2
trans s [a,a] -> t cost [0,1]
trans s [b,b] -> t cost [0,1]
trans s [a,b] -> t cost [1,0]
trans s [b,a] -> t cost [1,0]
trans t [*,*] -> t cost [0,0]
"""


def test_parse_xor_game():
    game = parse_game(XOR_TEXT)
    assert game.players == ("p1", "p2")
    assert game.states == ("s", "t")
    assert game.initial == 0
    assert game.targets == (frozenset({1}), frozenset({1}))
    assert len(game.rules) == 5
    assert game.rules[0].cost == (0, 1)


def test_parse_minimal_one_player_game():
    game = parse_game(
        "players p\nactions p: x\nstate s init target: p\ntrans s [*] -> s cost [0]\n"
    )
    assert game.n_players == 1
    assert game.arena_steps(0)[0].target == 0


def test_missing_profile_is_totality_error():
    text = (
        "players p1 p2\nactions p1: a b\nactions p2: a b\n"
        "state s init\nstate t target: p1\n"
        "trans s [a,*] -> t cost [0,0]\n"
        "trans s [b,b] -> t cost [0,0]\n"
        "trans t [*,*] -> t cost [0,0]\n"
    )
    with pytest.raises(ParseError, match="not total"):
        parse_game(text)


@pytest.mark.parametrize(
    "line,fragment",
    [
        ("trans s [a,a] -> nowhere cost [0,0]", "nowhere"),
        ("trans s [a,z] -> t cost [0,0]", "'z'"),
        ("trans s [a,a] -> t cost [0,-1]", "natural"),
        ("trans s [a,a] -> t cost [0]", "2 entries" if False else "cost lists"),
        ("actions p3: a", "p3"),
        ("state s", "duplicate state"),
        ("bogus directive", "bogus"),
    ],
)
def test_bad_lines_report_line_numbers(line, fragment):
    text = XOR_TEXT + line + "\n"
    with pytest.raises(ParseError) as err:
        parse_game(text)
    assert fragment in str(err.value)
    assert "line 12" in str(err.value)


def test_duplicate_init_rejected():
    text = XOR_TEXT.replace("state t target: p1 p2", "state t init target: p1 p2")
    with pytest.raises(ParseError, match="init"):
        parse_game(text)


def test_missing_init_rejected():
    text = XOR_TEXT.replace("state s init", "state s")
    with pytest.raises(ParseError, match="init"):
        parse_game(text)


def test_rule_order_preserved():
    game = parse_game(XOR_TEXT)
    assert [r.cost for r in game.rules[:4]] == [(0, 1), (0, 1), (1, 0), (1, 0)]


def test_round_trip_is_identity():
    game = parse_game(XOR_TEXT)
    assert parse_game(serialize_game(game)) == game


@pytest.mark.parametrize("seed", range(25))
def test_round_trip_random_games(seed):
    game = random_game(seed, n_players=seed % 3 + 1)
    assert parse_game(serialize_game(game)) == game
