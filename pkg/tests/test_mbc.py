import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from client import BalancedGames
from balancedgames import BalancedCollection, BudgetExceededError, InvalidInputError
from balancedgames.types.games import coalitions
from balancedgames.types.models import WeightStatus
from balancedgames.schemas.games import additive_game
from balancedgames.schemas.mbc import (
    characteristic,
    complement,
    enumerate_mbc,
    is_minimal_balanced,
    solve_weights,
    special_partitions,
)

HALF = Fraction(1, 2)


def _as_sets(collections):
    return [frozenset(b.sets) for b in collections]


def test_solve_weights_statuses():
    verdict = solve_weights(3, [3, 5, 6])
    assert verdict.status == WeightStatus.minimal
    assert verdict.collection.weights == (HALF, HALF, HALF)

    assert solve_weights(3, [1, 2, 4]).collection.weights == (1, 1, 1)
    assert solve_weights(3, [1, 3]).status == WeightStatus.not_balanced

    verdict = solve_weights(3, [1, 2, 4, 3])
    assert verdict.status == WeightStatus.not_minimal
    assert verdict.is_balanced and not verdict.is_minimal
    assert all(w > 0 for w in verdict.collection.weights)


def test_solve_weights_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        solve_weights(3, [3, 3])
    with pytest.raises(InvalidInputError):
        solve_weights(3, [7])
    with pytest.raises(InvalidInputError):
        solve_weights(3, [0, 1])


def test_enumerate_three_players():
    found = enumerate_mbc(3)
    assert _as_sets(found) == [
        frozenset({1, 6}),
        frozenset({2, 5}),
        frozenset({3, 4}),
        frozenset({1, 2, 4}),
        frozenset({3, 5, 6}),
    ]
    assert found[4].weights == (HALF, HALF, HALF)
    assert all(w == 1 for b in found[:4] for w in b.weights)
    assert _as_sets(enumerate_mbc(2)) == [frozenset({1, 2})]


def test_enumerate_four_players_matches_brute_force():
    n = 4
    proper = list(coalitions(n, proper = True))
    expected = set()
    for k in range(1, n + 1):
        for sets in combinations(proper, k):
            matrix = sympy.Matrix([characteristic(S, n) for S in sets]).T
            if matrix.rank() < k: continue
            try:
                solution, _ = matrix.gauss_jordan_solve(sympy.ones(n, 1))
            except ValueError:
                continue
            if all(x > 0 for x in solution):
                expected.add(frozenset(sets))
    found = enumerate_mbc(n)
    assert set(_as_sets(found)) == expected
    assert len(found) == 41
    assert [b.key for b in found] == sorted(b.key for b in found)


def test_every_enumerated_collection_is_minimal():
    for b in enumerate_mbc(4):
        assert is_minimal_balanced(4, list(b.sets))
        assert solve_weights(4, list(b.sets)).collection == b


@pytest.mark.parametrize('n', [3, 4])
def test_complement_is_an_involution(n):
    found = enumerate_mbc(n)
    members = set(found)
    for b in found:
        c = complement(b)
        assert c in members
        assert complement(c) == b


def test_complement_examples():
    b = solve_weights(3, [3, 5, 6]).collection
    assert complement(b) == BalancedCollection(3, [4, 2, 1], [1, 1, 1])
    with pytest.raises(InvalidInputError):
        complement(BalancedCollection(2, [3], [1], verify = False))


def test_special_partitions():
    assert len(special_partitions(3)) == 4
    partitions = special_partitions(4)
    assert len(partitions) == 11
    assert all(is_minimal_balanced(4, list(b.sets)) for b in partitions)
    assert list(partitions[0].sets) == [1, 2, 4, 8]


@pytest.mark.parametrize('n', [3, 4])
def test_additive_games_are_tight_on_every_collection(n):
    rng = random.Random(5 + n)
    partitions = special_partitions(n)
    found = enumerate_mbc(n)
    for _ in range(1000):
        v = additive_game(n, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)])
        assert all(b.slack(v) == 0 for b in partitions)
        assert all(b.slack(v) == 0 for b in found)


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_mbc(6)
    with pytest.raises(InvalidInputError):
        enumerate_mbc(1)


def test_client_sorts_canonically():
    found = BalancedGames.mbc.enumerate(3)
    assert BalancedGames.mbc.sort(list(reversed(found))) == found
    assert BalancedGames.enumerate_mbc(3) == found
