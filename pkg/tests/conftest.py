import random

import pytest

from worstfair.games import ExplicitGame, ISGame


def triangle_game():
    return ISGame.from_named_edges("ABC", [("A", "B", 2), ("A", "C", 4), ("B", "C", 6)])


def additive_game(cs):
    return ExplicitGame.from_function(len(cs), lambda s: sum(cs[i] for i in s))


@pytest.fixture
def triangle():
    return triangle_game()


@pytest.fixture
def edge():
    return ISGame.from_named_edges("AB", [("A", "B", 5)])


@pytest.fixture
def rng():
    return random.Random(12345)
