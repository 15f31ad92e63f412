import json
import random
import warnings
from fractions import Fraction
from itertools import permutations

import pytest

from conftest import additive_game, triangle_game
from worstfair.games import (
    ExplicitGame,
    GameFormatError,
    ISGame,
    MonotonicityWarning,
    check_cover,
    check_supermodular,
    coalition_value,
    dual_game,
    game_to_dict,
    loads_game,
    mask_of,
    shapley_general,
    shapley_is,
    to_explicit,
    utopia_payoff,
)
from worstfair.generate import GeneratorConfig, random_convex_game, random_is_game


def shapley_by_permutations(g):
    """Average marginal contribution over all player orderings."""
    g = to_explicit(g)
    total = [Fraction(0)] * g.n
    perms = list(permutations(range(g.n)))
    for perm in perms:
        mask = 0
        for i in perm:
            total[i] += g.values[mask | 1 << i] - g.values[mask]
            mask |= 1 << i
    return tuple(t / len(perms) for t in total)


def test_coalition_values(triangle):
    assert coalition_value(triangle, mask_of(triangle, "BC")) == 6
    assert coalition_value(triangle, mask_of(triangle, "A")) == 0
    assert coalition_value(triangle, triangle.grand) == 12
    assert coalition_value(triangle, 0) == 0
    with pytest.raises(ValueError):
        coalition_value(triangle, 8)


def test_to_explicit(triangle, edge):
    t = to_explicit(triangle)
    assert [t.values[mask_of(t, s)] for s in ("AB", "AC", "BC", "ABC")] == [2, 4, 6, 12]
    assert to_explicit(edge).values == (0, 0, 0, 5)
    with pytest.raises(ValueError):
        ISGame(("A", "B"), ())


@pytest.mark.parametrize(
    "players,edges",
    [("AB", [(0, 0, 1)]), ("AB", [(0, 1, 1), (1, 0, 2)]), ("AB", [(0, 1, -1)]), ("ABC", [(0, 1, 3)])],
)
def test_is_game_invariants(players, edges):
    with pytest.raises(ValueError):
        ISGame(tuple(players), tuple(edges))


def test_explicit_game_checks():
    with pytest.raises(ValueError):
        ExplicitGame(2, (1, 0, 0, 1))
    with pytest.raises(ValueError):
        ExplicitGame(2, (0, 1, 1))
    with pytest.warns(MonotonicityWarning):
        ExplicitGame(2, (0, 2, 0, 1))


def test_dual_game(triangle):
    d = dual_game(to_explicit(triangle))
    assert d.values[mask_of(d, "C")] == 10
    assert d.values[0] == 0
    assert d.values[d.grand] == 12
    assert dual_game(d) == to_explicit(triangle)


def test_dual_is_involution_and_flips_modularity(rng):
    for _ in range(30):
        g = random_convex_game(rng.randint(1, 5), rng)
        d = dual_game(g)
        assert dual_game(d) == g
        # dual of a supermodular game is submodular: v*(S+i+j) + v*(S) <= v*(S+i) + v*(S+j)
        v = d.values
        for s in range(1 << d.n):
            for i in range(d.n):
                for j in range(i + 1, d.n):
                    bi, bj = 1 << i, 1 << j
                    if s & (bi | bj):
                        continue
                    assert v[s | bi | bj] + v[s] <= v[s | bi] + v[s | bj]


def test_check_supermodular_examples(triangle):
    assert check_supermodular(triangle) == (True, None)
    ok, witness = check_supermodular(ExplicitGame(2, (0, 1, 1, 1)))
    assert not ok and witness == (0b01, 0b10)
    assert check_supermodular(additive_game([3, 1, 4, 1]))[0]


def test_supermodular_brute_force_agrees(rng):
    # all-pairs definition on small random games, convex or not
    for _ in range(60):
        n = rng.randint(1, 4)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", MonotonicityWarning)
            g = ExplicitGame(n, (0,) + tuple(rng.randint(0, 6) for _ in range((1 << n) - 1)))
        brute = all(g.values[s | t] + g.values[s & t] >= g.values[s] + g.values[t]
                    for s in range(1 << n) for t in range(1 << n))
        ok, witness = check_supermodular(g)
        assert ok == brute
        if witness:
            s, t = witness
            assert g.values[s | t] + g.values[s & t] < g.values[s] + g.values[t]


def test_random_is_games_are_supermodular():
    rng = random.Random(8)
    for k in range(100):
        g, _ = random_is_game(GeneratorConfig(rng.randint(2, 7), rng.uniform(0.2, 1.0), 6, k))
        assert check_supermodular(g)[0]


def test_check_cover_examples(triangle):
    assert check_cover(triangle, (0, 2, 10)) == (True, [])
    assert check_cover(triangle, (3, 4, 5)) == (True, [])
    ok, violated = check_cover(triangle, (12, 0, 0))
    assert not ok and mask_of(triangle, "BC") in violated
    ok, violated = check_cover(triangle, (0, 2, 9))
    assert not ok and triangle.grand in violated


def test_utopia(triangle):
    assert utopia_payoff(triangle, 2) == 10
    assert utopia_payoff(triangle, 0) == 6
    g = additive_game([3, 1, 4])
    assert [utopia_payoff(g, j) for j in range(3)] == [3, 1, 4]


def test_shapley_examples(triangle, edge):
    assert shapley_general(triangle) == (3, 4, 5)
    assert shapley_is(triangle) == (3, 4, 5)
    assert shapley_general(additive_game([2, 7, 1])) == (2, 7, 1)
    sym = ExplicitGame.from_function(3, lambda s: len(s) ** 2)
    assert shapley_general(sym) == (3, 3, 3)
    assert shapley_is(edge) == (Fraction(5, 2), Fraction(5, 2))
    star = ISGame.from_named_edges("CWXYZ", [("C", x, 1) for x in "WXYZ"])
    assert shapley_is(star) == (2,) + (Fraction(1, 2),) * 4


def test_shapley_too_many_players():
    with pytest.raises(ValueError):
        shapley_general(ExplicitGame.from_function(13, len))


def test_shapley_is_matches_general_and_permutations():
    rng = random.Random(21)
    for k in range(60):
        g, _ = random_is_game(GeneratorConfig(rng.randint(2, 8), rng.uniform(0.3, 1.0), 5, k))
        sh = shapley_is(g)
        assert sh == shapley_general(g)
        assert sum(sh) == g.total_weight
        if g.n <= 5:
            assert sh == shapley_by_permutations(g)


def test_json_round_trip(triangle):
    g2 = loads_game('{"type":"is","players":["A","B","C"],"edges":[["A","B",2],["A","C",4],["B","C",6]]}')
    assert g2 == triangle
    assert loads_game(json.dumps(game_to_dict(triangle))) == triangle
    ex = to_explicit(triangle)
    data = game_to_dict(ex)
    assert "∅" not in data["values"] and data["values"]["A,B"] == 2
    assert loads_game(json.dumps(data)) == ex


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"type":"weird","players":["A"]}',
        '{"type":"is","players":["A","B"],"edges":[["A","Q",1]]}',
        '{"type":"is","players":["A","B"],"edges":[["A","B"]]}',
        '{"type":"explicit","players":["A","B"],"values":{"A":1,"B":1}}',
        '{"type":"explicit","players":["A","B"],"values":{"A":1,"B":1,"A,Z":3}}',
    ],
)
def test_json_rejects(text):
    with pytest.raises(GameFormatError):
        loads_game(text)


def test_explicit_json_empty_key_optional():
    g = loads_game('{"type":"explicit","players":["A","B"],"values":{"∅":0,"A":1,"B":0,"A,B":3}}')
    assert g.values == (0, 1, 0, 3)
