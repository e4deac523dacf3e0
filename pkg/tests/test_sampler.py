import random
from collections import Counter
from fractions import Fraction

import pytest

from client import BalancedGames
from balancedgames import InvalidInputError, VertexCollection
from balancedgames.types.games import coalition, grand
from balancedgames.schemas.polytope import count_table, enumerate_vertices
from balancedgames.schemas.sampler import p2, sample_vertex, sampler_probabilities, vertex_probability

# chi-square quantile for 18 degrees of freedom at p = 0.001
CHI2_CRITICAL = 42.31


def test_branch_probabilities():
    probabilities = sampler_probabilities(3)
    assert probabilities.p0 == Fraction(1, 19)
    assert probabilities.p1 == [Fraction(15, 18), Fraction(3, 18)]
    assert probabilities.p2 == [Fraction(4, 5), Fraction(1)]
    assert sum(probabilities.p1) == 1
    assert p2(1) == 1
    assert p2(2) == Fraction(4, 5)
    assert p2(3) == Fraction(64, 109)

    probabilities = sampler_probabilities(4)
    assert probabilities.p0 == Fraction(1, 471)
    assert probabilities.p2 == [Fraction(64, 109), Fraction(4, 5), Fraction(1)]
    assert sum(probabilities.p1) == 1
    with pytest.raises(InvalidInputError):
        sampler_probabilities(1)


@pytest.mark.parametrize('n', [3, 4])
def test_every_vertex_has_probability_one_over_b(n):
    b = count_table(n).b[-1]
    assert all(vertex_probability(D) == Fraction(1, b) for D in enumerate_vertices(n))


@pytest.mark.parametrize('n', [3, 4, 5, 6])
def test_every_branch_has_probability_one_over_b(n):
    b = count_table(n).b[-1]
    assert vertex_probability(VertexCollection(n, [])) == Fraction(1, b)
    for k in range(1, n):
        S = coalition(range(1, k + 1))
        R = grand(n) ^ S
        # the intersection S belongs to the family
        assert vertex_probability(VertexCollection(n, [S])) == Fraction(1, b)
        if n - k >= 2:
            low = R & -R
            assert vertex_probability(VertexCollection(n, [S, S | low])) == Fraction(1, b)
            # the intersection S is missing from the family
            assert vertex_probability(VertexCollection(n, [S | low, S | (R ^ low)])) == Fraction(1, b)
    rng = random.Random(n)
    for _ in range(50):
        assert vertex_probability(sample_vertex(n, rng)) == Fraction(1, b)


@pytest.mark.parametrize('seed', [1, 2, 3])
def test_uniformity_on_three_players(seed):
    rng = random.Random(seed)
    vertices = enumerate_vertices(3)
    draws = Counter(sample_vertex(3, rng) for _ in range(19000))
    assert set(draws) <= set(vertices)
    expected = 1000
    chi2 = sum((draws[D] - expected) ** 2 / expected for D in vertices)
    assert chi2 < CHI2_CRITICAL


def test_samples_are_vertices():
    rng = random.Random(4)
    for n in (2, 5, 6):
        for _ in range(50):
            assert sample_vertex(n, rng).is_vertex


def test_seeded_streams_repeat():
    first = BalancedGames.sampler.sample_many(4, 20, seed = 7)
    assert first == BalancedGames.sampler.sample_many(4, 20, seed = 7)
    assert sample_vertex(4, 7) == sample_vertex(4, random.Random(7))
    with pytest.raises(InvalidInputError):
        sample_vertex(3, True)
