import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cmstoch.errors import ControllerError, GameSyntaxError, GameValidationError
from cmstoch.fixtures import GAME_FIXTURES, fixture_text, load_fixture
from cmstoch.model import (Controller, StochasticGame, delete_action, detect_controller, insert_zero,
                           make_strategy, parse_game, parse_rational, reward_vector, serialize_game,
                           swap_roles, transition_matrix, uniform_strategy)

from conftest import random_single_controller_game, random_strategy

H = Fraction(1, 2)

TRIVIAL = """{"states": 1, "actions_p1": [1], "actions_p2": [1],
 "payoff": {"s1": [["0"]]}, "transitions": {"s1": {"1,1": ["1"]}}}"""


def test_trivial_game():
    g = parse_game(TRIVIAL)
    assert g.n_states == 1
    assert g.controller is Controller.PLAYER_TWO
    assert detect_controller(g) is Controller.BOTH


def test_rationals():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == -2
    assert parse_rational("0.5") == H
    with pytest.raises(ValueError):
        parse_rational(0.5)
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_row_sum_error_names_the_pair():
    bad = TRIVIAL.replace('["1"]', '["9/10"]')
    with pytest.raises(GameValidationError, match=r"s1.*\(1,1\).*9/10"):
        parse_game(bad)


def test_syntax_error_has_position():
    with pytest.raises(GameSyntaxError) as info:
        parse_game('{"states": 1,\n  "actions_p1": [1,}')
    assert info.value.line == 2


@pytest.mark.parametrize("text", [
    TRIVIAL.replace('"states": 1', '"states": 0'),
    TRIVIAL.replace('"1,1"', '"1,2"'),
    TRIVIAL.replace('[["0"]]', '[["0", "1"]]'),
    TRIVIAL.replace('["1"]', '["-1", "2"]'),
    '[]',
])
def test_validation_errors(text):
    with pytest.raises(GameValidationError):
        parse_game(text)


def test_controller_detection():
    p1 = StochasticGame([[[0, 0], [0, 0]], [[0]]],
                        [[[(1, 0), (1, 0)], [(0, 1), (0, 1)]], [[(0, 1)]]])
    assert p1.controller is Controller.PLAYER_ONE
    both = StochasticGame([[[0, 0], [0, 0]]], [[[(1,), (1,)], [(1,), (1,)]]])
    assert detect_controller(both) is Controller.BOTH
    assert both.controller is Controller.PLAYER_TWO
    none = StochasticGame([[[0, 0], [0, 0]], [[0]]],
                          [[[(1, 0), (0, 1)], [(0, 1), (1, 0)]], [[(0, 1)]]])
    assert none.controller is Controller.NONE
    with pytest.raises(ControllerError):
        transition_matrix(none, uniform_strategy(none, 2))
    assert swap_roles(p1).controller is Controller.PLAYER_TWO


def test_transition_and_reward_on_example9(example9):
    g = make_strategy(example9, [["1/2", "1/2"], ["1/2", "1/2"]], 2)
    f = make_strategy(example9, [[1, 0], ["1/2", "1/2"]], 1)
    assert transition_matrix(example9, g) == [[0, 1], [0, 1]]
    assert reward_vector(example9, f, g) == (1, 1)


def test_reward_dimension_mismatch(example9):
    with pytest.raises(ValueError):
        reward_vector(example9, [(1,)], [(1, 0)])


def test_make_strategy_validation(example9):
    with pytest.raises(ValueError):
        make_strategy(example9, [[1, 1], [0, 1]], 1)
    with pytest.raises(ValueError):
        make_strategy(example9, [[1, 0]], 1)


def test_delete_and_insert(example14):
    small = delete_action(example14, 2, 0, 1)
    assert small.actions_p2 == (1, 2)
    assert small.payoff[0] == ((2,), (0,))
    assert insert_zero(((1,), (H, H)), 0, 1) == ((1, 0), (H, H))


@pytest.mark.parametrize("name", GAME_FIXTURES)
def test_fixture_files_are_canonical(name):
    assert serialize_game(load_fixture(name)) == fixture_text(name)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_serialize_round_trip(seed):
    game = random_single_controller_game(random.Random(seed))
    again = parse_game(serialize_game(game))
    assert again == game
    assert serialize_game(again) == serialize_game(game)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.fractions(0, 1))
def test_reward_vector_is_bilinear(seed, t):
    rng = random.Random(seed)
    game = random_single_controller_game(rng)
    f1, f2 = (random_strategy(rng, game.actions_p1) for _ in range(2))
    g = random_strategy(rng, game.actions_p2)
    mix = tuple(tuple(t * a + (1 - t) * b for a, b in zip(u, w)) for u, w in zip(f1, f2))
    lhs = reward_vector(game, mix, g)
    r1, r2 = reward_vector(game, f1, g), reward_vector(game, f2, g)
    assert lhs == tuple(t * a + (1 - t) * b for a, b in zip(r1, r2))
    # Q(g) is a stochastic matrix
    assert all(sum(row) == 1 and min(row) >= 0 for row in transition_matrix(game, g))
