"""
Uniform random vertices of BG_+(n).

Every branch is drawn with an exact integer draw against the branch weights
from the count table, so each vertex comes out with probability exactly 1/b_n.
"""

import random
from fractions import Fraction
from math import comb
from typing import List, Optional, Union

from balancedgames.utils.config import BalancedGamesSettings
from balancedgames.utils.config import settings as bg_settings
from balancedgames.types.errors import InvalidInputError
from balancedgames.types.games import Coalition, coalition, grand, size
from balancedgames.types.collections import VertexCollection, intersection
from balancedgames.types.models import SamplerProbabilities
from balancedgames.schemas.polytope import count_table, proper_subsets

RandomSource = Union[random.Random, int]


def _rng(rng: RandomSource) -> random.Random:
    if isinstance(rng, random.Random): return rng
    if isinstance(rng, int) and not isinstance(rng, bool): return random.Random(rng)
    raise InvalidInputError("A seeded random.Random or an integer seed is required")


def sampler_probabilities(n: int, settings: Optional[BalancedGamesSettings] = None) -> SamplerProbabilities:
    """
    p0 = 1/(1 + f_n), p1^k = C(n,k)(s_{n-k} + t_{n-k})/f_n and
    p2(n-k) = t_{n-k}/(s_{n-k} + t_{n-k}), all exact.
    """
    if n < 2:
        raise InvalidInputError("Sampler probabilities are defined for n >= 2")
    table = count_table(n, settings = settings)
    t, s, f = table.t, table.s, table.f[n - 1]
    p1, p2 = [], []
    for k in range(1, n):
        m = n - k
        weight = s[m - 1] + t[m - 1]
        p1.append(Fraction(comb(n, k) * weight, f))
        p2.append(Fraction(t[m - 1], weight))
    return SamplerProbabilities(n = n, p0 = Fraction(1, 1 + f), p1 = p1, p2 = p2)


def p2(m: int) -> Fraction:
    """
    Probability that the common intersection belongs to the family, given |N minus S| = m.
    """
    table = count_table(m)
    return Fraction(table.t[m - 1], table.s[m - 1] + table.t[m - 1])


def _draw_family(rng: random.Random, inner: List[Coalition]) -> List[Coalition]:
    if not inner: return []
    bits = rng.getrandbits(len(inner))
    return [A for b, A in enumerate(inner) if bits >> b & 1]


def sample_vertex(n: int, rng: RandomSource, settings: Optional[BalancedGamesSettings] = None) -> VertexCollection:
    """
    Draws one vertex of BG_+(n) uniformly at random.

    :param n: the player count
    :param rng: a seeded `random.Random` (or an integer seed)
    """
    rng = _rng(rng)
    table = count_table(n, settings = settings)
    t, s = table.t, table.s
    f, b = table.f[n - 1], table.b[n - 1]
    if rng.randrange(b) == 0:
        return VertexCollection(n, [])

    r = rng.randrange(f)
    for k in range(1, n):
        m = n - k
        weight = comb(n, k) * (s[m - 1] + t[m - 1])
        if r < weight: break
        r -= weight
    S = coalition(p + 1 for p in rng.sample(range(n), k))
    R = grand(n) ^ S
    inner = proper_subsets(R)

    if rng.randrange(s[m - 1] + t[m - 1]) < t[m - 1]:
        return VertexCollection(n, [S] + [S | A for A in _draw_family(rng, inner)])
    if m == 2:
        chosen = [R & -R, R ^ (R & -R)]
    else:
        while True:
            chosen = _draw_family(rng, inner)
            if chosen and intersection(chosen, n) & R == 0: break
    return VertexCollection(n, [S | A for A in chosen])


def vertex_probability(D: VertexCollection, settings: Optional[BalancedGamesSettings] = None) -> Fraction:
    """
    The exact probability that `sample_vertex` returns D, as the product of
    the branch probabilities along its path.
    """
    n = D.n
    table = count_table(n, settings = settings)
    t, s = table.t, table.s
    f, b = table.f[n - 1], table.b[n - 1]
    if not D.sets:
        return Fraction(1, b)
    S = D.intersection
    k, m = size(S), n - size(S)
    weight = s[m - 1] + t[m - 1]
    prob = Fraction(f, b) * Fraction(comb(n, k) * weight, f) * Fraction(1, comb(n, k))
    if S in D:
        return prob * Fraction(t[m - 1], weight) * Fraction(1, t[m - 1])
    return prob * Fraction(s[m - 1], weight) * Fraction(1, s[m - 1])


class SamplerClient:

    def __init__(
        self,
        settings: Optional[BalancedGamesSettings] = None,
    ):
        self.settings = settings if settings is not None else bg_settings

    def probabilities(self, n: int) -> SamplerProbabilities:
        return sampler_probabilities(n, settings = self.settings)

    def sample(self, n: int, rng: RandomSource) -> VertexCollection:
        return sample_vertex(n, rng, settings = self.settings)

    def sample_many(self, n: int, count: int, seed: int) -> List[VertexCollection]:
        """
        `count` vertices from one stream seeded with `seed`.
        """
        rng = random.Random(seed)
        return [sample_vertex(n, rng, settings = self.settings) for _ in range(count)]
