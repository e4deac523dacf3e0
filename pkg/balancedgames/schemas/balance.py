"""
Balancedness tests by two independent routes.

The m.b.c. route scans every minimal balanced collection for a violated
inequality. The LP route tests feasibility of the core system directly,
generating coalition rows lazily, and recovers a violating minimal balanced
collection from the dual balancing program when the core is empty.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from balancedgames.types.errors import ConsistencyError
from balancedgames.utils.config import BalancedGamesSettings
from balancedgames.utils.config import settings as bg_settings
from balancedgames.utils.lp import LinearProgram
from balancedgames.types.games import Allocation, Coalition, Game, coalitions, grand
from balancedgames.types.collections import BalancedCollection
from balancedgames.types.models import BalancednessVerdict
from balancedgames.schemas.mbc import enumerate_mbc

# rows added per round of row generation
ROW_BATCH = 8


def subset_sums(x: Sequence[Fraction]) -> List[Fraction]:
    """
    x(S) for every bitmask S in 0..2^n - 1.
    """
    sums = [Fraction(0)] * (1 << len(x))
    for S in range(1, len(sums)):
        low = S & -S
        sums[S] = sums[S ^ low] + x[low.bit_length() - 1]
    return sums


def balancedness_slack(v: Game, b: BalancedCollection) -> Fraction:
    return b.slack(v)


def _restricted_core(v: Game, rows: Sequence[Coalition]) -> Optional[List[Fraction]]:
    """
    A point of {x >= v(i), x(S) >= v(S) for S in rows, x(N) = v(N)}, or None.
    """
    n = v.n
    base = [v[1 << i] for i in range(n)]
    lp = LinearProgram(n)
    lp.add_constraint([1] * n, '==', v.grand_value - sum(base))
    for S in rows:
        lp.add_constraint(
            [S >> i & 1 for i in range(n)], '>=',
            v[S] - sum(base[i] for i in range(n) if S >> i & 1),
        )
    result = lp.solve()
    if not result.is_optimal: return None
    return [y + b for y, b in zip(result.x, base)]


def _dual_certificate(v: Game, rows: Sequence[Coalition]) -> Tuple[BalancedCollection, Fraction]:
    """
    Maximizes sum(lambda_S v(S)) over balancing weights supported on the
    singletons and `rows`; a basic optimum is a minimal balanced collection.
    """
    n = v.n
    columns = sorted(set(rows) | {1 << i for i in range(n)})
    lp = LinearProgram(len(columns), objective = [v[S] for S in columns], maximize = True)
    for i in range(n):
        lp.add_constraint([S >> i & 1 for S in columns], '==', 1)
    result = lp.solve()
    support = [(S, w) for S, w in zip(columns, result.x) if w > 0]
    collection = BalancedCollection(n, [S for S, _ in support], [w for _, w in support])
    return collection, collection.slack(v)


def is_balanced_lp(v: Game) -> BalancednessVerdict:
    """
    Exact feasibility test of the core system.

    Returns
    -------
    BalancednessVerdict
        with a core point as witness, or a violating minimal balanced
        collection and its slack when the core is empty
    """
    n = v.n
    N = grand(n)
    rows: List[Coalition] = []
    while True:
        x = _restricted_core(v, rows)
        if x is None:
            collection, slack = _dual_certificate(v, rows)
            return BalancednessVerdict(balanced = False, violation = collection, slack = slack)
        sums = subset_sums(x)
        violated = sorted(
            (S for S in coalitions(n, proper = True) if sums[S] < v[S]),
            key = lambda S: (sums[S] - v[S], S),
        )
        if not violated:
            return BalancednessVerdict(balanced = True, witness = Allocation(x))
        rows.extend(violated[:ROW_BATCH])


def is_balanced_mbc(
    v: Game,
    allow_large: Optional[bool] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> BalancednessVerdict:
    """
    Scans the minimal balanced collections in canonical order and returns
    the first violated inequality; a balanced verdict carries a core witness
    from the LP route.
    """
    collections = enumerate_mbc(v.n, allow_large = allow_large, settings = settings) if v.n > 1 else []
    for b in collections:
        slack = b.slack(v)
        if slack > 0:
            return BalancednessVerdict(balanced = False, violation = b, slack = slack)
    witness = is_balanced_lp(v)
    if not witness.balanced:
        raise ConsistencyError(f"Balancedness routes disagree on {v!r}")
    return BalancednessVerdict(balanced = True, witness = witness.witness)


def is_balanced(v: Game, settings: Optional[BalancedGamesSettings] = None) -> BalancednessVerdict:
    """
    Uses the m.b.c. route within its default cap and the LP route beyond it.
    """
    settings = settings if settings is not None else bg_settings
    if v.n <= settings.mbc_max_n:
        return is_balanced_mbc(v, settings = settings)
    return is_balanced_lp(v)


class BalanceClient:

    def __init__(
        self,
        settings: Optional[BalancedGamesSettings] = None,
    ):
        self.settings = settings if settings is not None else bg_settings

    def is_balanced_mbc(self, v: Game, allow_large: Optional[bool] = None) -> BalancednessVerdict:
        return is_balanced_mbc(v, allow_large = allow_large, settings = self.settings)

    def is_balanced_lp(self, v: Game) -> BalancednessVerdict:
        return is_balanced_lp(v)

    def is_balanced(self, v: Game) -> BalancednessVerdict:
        return is_balanced(v, settings = self.settings)

    def slack(self, v: Game, b: BalancedCollection) -> Fraction:
        return balancedness_slack(v, b)
