"""
Minimal balanced collections.

A collection of proper coalitions is minimal balanced iff its characteristic
vectors are linearly independent and the system sum(lambda_S 1^S) = 1^N has
a strictly positive solution. Enumeration walks independent supports in
canonical order and never extends a balanced support.
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from balancedgames.utils import logger
from balancedgames.utils.config import BalancedGamesSettings
from balancedgames.utils.config import settings as bg_settings
from balancedgames.utils.linalg import EchelonBasis, rank, solve
from balancedgames.utils.lp import LinearProgram
from balancedgames.types.errors import InvalidInputError
from balancedgames.types.games import Coalition, check_coalition, coalitions, grand, size
from balancedgames.types.collections import BalancedCollection, canonical_key
from balancedgames.types.models import WeightStatus, WeightVerdict

_Found = List[Tuple[Tuple[Coalition, ...], Tuple[Fraction, ...]]]

_CACHE: Dict[int, Tuple[BalancedCollection, ...]] = {}


def characteristic(S: Coalition, n: int) -> List[int]:
    """
    The 0-1 vector 1^S over players 1..n.
    """
    return [S >> i & 1 for i in range(n)]


def _system(n: int, sets: Sequence[Coalition]) -> List[List[int]]:
    # rows are players, columns are coalitions
    return [[S >> i & 1 for S in sets] for i in range(n)]


def _check_sets(n: int, sets: Sequence[Coalition]) -> List[Coalition]:
    sets = list(sets)
    for S in sets:
        check_coalition(S, n, allow_grand = False)
    if len(set(sets)) != len(sets):
        raise InvalidInputError("Duplicate coalitions in collection")
    return sets


def _positive_weights(n: int, sets: Sequence[Coalition]) -> Optional[List[Fraction]]:
    """
    The unique strictly positive balancing weights of an independent support, if any.
    """
    weights = solve(_system(n, sets), [1] * n)
    if weights is None or any(w <= 0 for w in weights): return None
    return weights


def _max_min_weight(n: int, sets: Sequence[Coalition]) -> Optional[List[Fraction]]:
    """
    Balancing weights maximizing the smallest weight; None when no positive weights exist.
    """
    k = len(sets)
    lp = LinearProgram(k + 1, objective = {k: 1}, maximize = True)
    for row in _system(n, sets):
        lp.add_constraint(row + [0], '==', 1)
    for j in range(k):
        lp.add_constraint({j: 1, k: -1}, '>=', 0)
    lp.add_constraint({k: 1}, '<=', 1)
    result = lp.solve()
    if not result.is_optimal or result.objective <= 0: return None
    return result.x[:k]


def solve_weights(n: int, sets: Sequence[Coalition]) -> WeightVerdict:
    """
    Solves the balancing system for `sets`.

    :param n: the player count
    :param sets: distinct proper nonempty coalitions (bitmasks)

    Returns
    -------
    WeightVerdict
        `minimal` with the unique weights, `not_minimal` with one positive
        weight vector, or `not_balanced`.
    """
    sets = _check_sets(n, sets)
    if not sets:
        return WeightVerdict(status = WeightStatus.not_balanced)
    if rank([characteristic(S, n) for S in sets]) == len(sets):
        weights = _positive_weights(n, sets)
        if weights is None:
            return WeightVerdict(status = WeightStatus.not_balanced)
        return WeightVerdict(
            status = WeightStatus.minimal,
            collection = BalancedCollection(n, sets, weights),
        )
    weights = _max_min_weight(n, sets)
    if weights is None:
        return WeightVerdict(status = WeightStatus.not_balanced)
    return WeightVerdict(
        status = WeightStatus.not_minimal,
        collection = BalancedCollection(n, sets, weights),
    )


def is_minimal_balanced(n: int, sets: Sequence[Coalition]) -> bool:
    return solve_weights(n, sets).is_minimal


def _extend(n: int, start: int, chosen: List[Coalition], basis: EchelonBasis, found: _Found) -> None:
    full = grand(n)
    for S in range(start, full):
        if not basis.add(characteristic(S, n)): continue
        chosen.append(S)
        weights = _positive_weights(n, chosen)
        if weights is not None:
            found.append((tuple(chosen), tuple(weights)))
        elif len(chosen) < n:
            _extend(n, S + 1, chosen, basis, found)
        chosen.pop()
        basis.pop()


def _search_from(n: int, first: Coalition) -> _Found:
    """
    All minimal balanced collections whose smallest coalition is `first`.
    """
    found: _Found = []
    basis = EchelonBasis(n)
    basis.add(characteristic(first, n))
    chosen = [first]
    weights = _positive_weights(n, chosen)
    if weights is not None:
        found.append((tuple(chosen), tuple(weights)))
    else:
        _extend(n, first + 1, chosen, basis, found)
    return found


def _enumerate(n: int, workers: int) -> Tuple[BalancedCollection, ...]:
    firsts = list(coalitions(n, proper = True))
    if workers > 1:
        with ProcessPoolExecutor(max_workers = workers) as pool:
            parts = list(pool.map(_search_from, [n] * len(firsts), firsts))
    else:
        parts = [_search_from(n, first) for first in firsts]
    found = [BalancedCollection(n, sets, weights, verify = False) for part in parts for sets, weights in part]
    found.sort(key = lambda b: b.key)
    return tuple(found)


def enumerate_mbc(
    n: int,
    allow_large: Optional[bool] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> List[BalancedCollection]:
    """
    All minimal balanced collections on n players except {N}, sorted by size
    and then by their sorted bitmasks. Results are cached per n.

    :param n: the player count, 2 <= n <= mbc cap
    :param allow_large: opt into the larger cap
    """
    settings = settings if settings is not None else bg_settings
    if n < 2:
        raise InvalidInputError("Minimal balanced collections are enumerated for n >= 2")
    settings.check_budget('mbc', n, allow_large)
    if n not in _CACHE:
        workers = settings.workers if n >= settings.parallel_min_n else 1
        _CACHE[n] = _enumerate(n, workers)
        if settings.debug_enabled:
            logger.info(f"Enumerated {len(_CACHE[n])} minimal balanced collections for n={n} with {workers} worker(s)")
    return list(_CACHE[n])


def complement(b: BalancedCollection) -> BalancedCollection:
    """
    The complementary collection {N minus S} with weights
    lambda_{N minus S} / (sum(lambda) - 1).
    """
    total = b.weight_sum
    if total <= 1:
        raise InvalidInputError("The complement needs a weight sum above 1")
    N = grand(b.n)
    return BalancedCollection(
        b.n,
        [N ^ S for S in b.sets],
        [w / (total - 1) for w in b.weights],
    )


def special_partitions(n: int) -> List[BalancedCollection]:
    """
    The singleton partition followed by {S} plus the singletons of N minus S,
    for every proper S with at least two players. All weights are 1.
    """
    if n < 2:
        raise InvalidInputError("Special partitions are defined for n >= 2")
    N = grand(n)
    singletons = [1 << i for i in range(n)]
    out = [BalancedCollection(n, singletons, [1] * n)]
    for S in coalitions(n, proper = True):
        if size(S) < 2: continue
        sets = sorted([S] + [1 << i for i in range(n) if (N ^ S) >> i & 1])
        out.append(BalancedCollection(n, sets, [1] * len(sets)))
    return out


def mbc_count(n: int, allow_large: Optional[bool] = None) -> int:
    return len(enumerate_mbc(n, allow_large = allow_large))


class MBCClient:
    """
    Minimal balanced collections bound to a settings object.
    """

    def __init__(
        self,
        settings: Optional[BalancedGamesSettings] = None,
    ):
        self.settings = settings if settings is not None else bg_settings

    def solve_weights(self, n: int, sets: Sequence[Coalition]) -> WeightVerdict:
        return solve_weights(n, sets)

    def enumerate(self, n: int, allow_large: Optional[bool] = None) -> List[BalancedCollection]:
        return enumerate_mbc(n, allow_large = allow_large, settings = self.settings)

    def complement(self, b: BalancedCollection) -> BalancedCollection:
        return complement(b)

    def special_partitions(self, n: int) -> List[BalancedCollection]:
        return special_partitions(n)

    def sort(self, collections: Sequence[BalancedCollection]) -> List[BalancedCollection]:
        return sorted(collections, key = lambda b: canonical_key(b.sets))
