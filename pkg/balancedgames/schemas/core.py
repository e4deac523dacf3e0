"""
The core polytope: vertices, dimension, effective coalitions and point cores.

All programs work in the shifted variables y_i = x_i - v({i}) >= 0, so the
singleton constraints become variable bounds.
"""

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

from balancedgames.utils import logger
from balancedgames.utils.config import BalancedGamesSettings
from balancedgames.utils.config import settings as bg_settings
from balancedgames.utils.linalg import EchelonBasis, affine_rank, rank, solve
from balancedgames.utils.lp import LinearProgram, LPResult
from balancedgames.types.errors import ConsistencyError, InvalidInputError, NotAdjacentError, NotBalancedError
from balancedgames.types.games import Allocation, Coalition, Game, coalitions, grand, size
from balancedgames.types.collections import BalancedCollection, VertexCollection
from balancedgames.types.models import CoreDescription, EdgeCoreReport
from balancedgames.schemas.balance import is_balanced_mbc
from balancedgames.schemas.mbc import characteristic, enumerate_mbc, solve_weights
from balancedgames.schemas.adjacency import are_adjacent


def _core_program(v: Game, objective: Optional[Coalition] = None, maximize: bool = False) -> LPResult:
    """
    Solves min/max x(objective) over the core, or a pure feasibility program.
    """
    n = v.n
    base = [v[1 << i] for i in range(n)]
    cost = characteristic(objective, n) if objective is not None else None
    lp = LinearProgram(n, objective = cost, maximize = maximize)
    lp.add_constraint([1] * n, '==', v.grand_value - sum(base))
    for S in coalitions(n, proper = True):
        if size(S) < 2: continue
        lp.add_constraint(
            characteristic(S, n), '>=',
            v[S] - sum(base[i] for i in range(n) if S >> i & 1),
        )
    result = lp.solve()
    if not result.is_optimal or objective is None: return result
    shift = sum((base[i] for i in range(n) if objective >> i & 1), Fraction(0))
    return LPResult(result.status, [y + b for y, b in zip(result.x, base)], result.objective + shift)


def core_is_empty(v: Game) -> bool:
    return not _core_program(v).is_optimal


def core_bounds(v: Game, S: Coalition) -> Optional[Tuple[Fraction, Fraction]]:
    """
    (min, max) of x(S) over the core; None when the core is empty.
    """
    low = _core_program(v, S)
    if not low.is_optimal: return None
    high = _core_program(v, S, maximize = True)
    return low.objective, high.objective


def _require_core(v: Game) -> None:
    if core_is_empty(v):
        raise NotBalancedError("The game is not balanced: its core is empty")


def effective_coalitions_lp(v: Game) -> Set[Coalition]:
    """
    Coalitions S with x(S) = v(S) for every core element, found by maximizing x(S).
    """
    _require_core(v)
    effective = {grand(v.n)}
    for S in coalitions(v.n, proper = True):
        if _core_program(v, S, maximize = True).objective == v[S]:
            effective.add(S)
    return effective


def effective_coalitions(
    v: Game,
    cross_check: bool = True,
    allow_large: Optional[bool] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> Set[Coalition]:
    """
    The union of all tight minimal balanced collections, plus N.

    :param cross_check: also compute the forced-equality set by LP and fail on disagreement
    """
    verdict = is_balanced_mbc(v, allow_large = allow_large, settings = settings)
    if not verdict.balanced:
        raise NotBalancedError(f"The game is not balanced: slack {verdict.slack} on {verdict.violation!r}")
    effective = {grand(v.n)}
    if v.n > 1:
        for b in enumerate_mbc(v.n, allow_large = allow_large, settings = settings):
            if b.is_tight(v):
                effective.update(b.sets)
    if cross_check:
        forced = effective_coalitions_lp(v)
        if forced != effective:
            raise ConsistencyError(f"Effective coalitions disagree for {v!r}: {sorted(effective)} vs {sorted(forced)}")
    return effective


def core_dimension(v: Game) -> int:
    """
    n minus the rank of the forced equalities; -1 for an empty core.
    """
    if core_is_empty(v): return -1
    rows = [characteristic(S, v.n) for S in effective_coalitions_lp(v)]
    return v.n - rank(rows)


def tight_candidates(v: Game) -> List[Coalition]:
    """
    Proper coalitions whose inequality is tight at some core point.
    """
    return [S for S in coalitions(v.n, proper = True) if _core_program(v, S).objective == v[S]]


def core_vertices(
    v: Game,
    settings: Optional[BalancedGamesSettings] = None,
) -> CoreDescription:
    """
    Enumerates the extreme points of the core.

    Each vertex solves the efficiency equality together with n - 1
    independent inequalities that are tight somewhere on the core.

    :param v: a game with n within the core cap
    """
    settings = settings if settings is not None else bg_settings
    settings.check_budget('core', v.n)
    n = v.n
    if core_is_empty(v):
        return CoreDescription(vertices = [], dimension = -1, effective = [])
    candidates = tight_candidates(v)
    points: Set[Allocation] = set()
    basis = EchelonBasis(n)
    basis.add([1] * n)
    chosen: List[Coalition] = []

    def visit(start: int) -> None:
        if len(basis) == n:
            rows = [[1] * n] + [characteristic(S, n) for S in chosen]
            x = solve(rows, [v.grand_value] + [v[S] for S in chosen])
            point = Allocation(x)
            if point.in_core(v):
                points.add(point)
            return
        for idx in range(start, len(candidates)):
            S = candidates[idx]
            if not basis.add(characteristic(S, n)): continue
            chosen.append(S)
            visit(idx + 1)
            chosen.pop()
            basis.pop()

    visit(0)
    vertices = sorted(points)
    effective = sorted(effective_coalitions_lp(v))
    return CoreDescription(
        vertices = vertices,
        dimension = affine_rank([list(x) for x in vertices]),
        effective = effective,
    )


def has_point_core(v: Game) -> Tuple[bool, Optional[Allocation]]:
    """
    Whether the core is a single allocation, found by bounding every coordinate.

    Returns
    -------
    (flag, allocation)
        the allocation is the unique core point when the flag is true
    """
    _require_core(v)
    low = []
    for i in range(v.n):
        lo, hi = core_bounds(v, 1 << i)
        if lo != hi: return False, None
        low.append(lo)
    return True, Allocation(low)


def _as_mbc(n: int, item: Union[BalancedCollection, Sequence[Coalition]]) -> BalancedCollection:
    sets = item.sets if isinstance(item, BalancedCollection) else list(item)
    if isinstance(item, BalancedCollection) and item.n != n:
        raise InvalidInputError(f"Collection on {item.n} players given for n={n}")
    verdict = solve_weights(n, sets)
    if not verdict.is_minimal:
        raise InvalidInputError(f"Not a minimal balanced collection: {sets}")
    return verdict.collection


def face_point_core_rank(n: int, mbcs: Iterable[Union[BalancedCollection, Sequence[Coalition]]]) -> bool:
    """
    True iff the characteristic vectors of all sets in `mbcs` have rank n,
    that is, every game on the corresponding face has a point core.
    """
    collections = [_as_mbc(n, b) for b in mbcs]
    if not collections:
        raise InvalidInputError("At least one collection is required")
    sets = sorted({S for b in collections for S in b.sets})
    return rank([characteristic(S, n) for S in sets]) == n


def facet_point_core(b: BalancedCollection) -> bool:
    return face_point_core_rank(b.n, [b])


def predicted_edge_point_core(D1: VertexCollection, D2: VertexCollection) -> Optional[bool]:
    """
    Point-core prediction for the open edge between two adjacent vertices
    with singleton intersections; None where no prediction applies.
    """
    i, j = D1.intersection, D2.intersection
    if size(i) != 1 or size(j) != 1 or not D1.sets or not D2.sets: return None
    if i == j or D1.n <= 4: return True
    return None


def edge_point_core_check(D1: VertexCollection, D2: VertexCollection, lam: Union[Fraction, int, str]) -> EdgeCoreReport:
    """
    Computes the core of lam * d_D1 + (1 - lam) * d_D2 and compares it with
    the point-core prediction for edges of BG_+(n).

    :param lam: a rational strictly between 0 and 1
    """
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise InvalidInputError(f"lambda must lie strictly between 0 and 1, got {lam}")
    if not are_adjacent(D1, D2):
        raise NotAdjacentError(f"{D1!r} and {D2!r} are not adjacent")
    v = lam * D1.game() + (1 - lam) * D2.game()
    dimension = core_dimension(v)
    point = has_point_core(v)[1] if dimension == 0 else None
    report = EdgeCoreReport(
        game = v,
        dimension = dimension,
        point_core = dimension == 0,
        point = point,
        predicted = predicted_edge_point_core(D1, D2),
    )
    if not report.agrees:
        logger.error(f"Edge point-core prediction fails between {D1!r} and {D2!r}: dimension {dimension}")
    return report


class CoreClient:

    def __init__(
        self,
        settings: Optional[BalancedGamesSettings] = None,
    ):
        self.settings = settings if settings is not None else bg_settings

    def vertices(self, v: Game) -> CoreDescription:
        return core_vertices(v, settings = self.settings)

    def effective_coalitions(self, v: Game, cross_check: bool = True) -> Set[Coalition]:
        return effective_coalitions(v, cross_check = cross_check, settings = self.settings)

    def dimension(self, v: Game) -> int:
        return core_dimension(v)

    def has_point_core(self, v: Game) -> Tuple[bool, Optional[Allocation]]:
        return has_point_core(v)

    def face_point_core_rank(self, n: int, mbcs: Iterable[BalancedCollection]) -> bool:
        return face_point_core_rank(n, mbcs)

    def edge_point_core_check(self, D1: VertexCollection, D2: VertexCollection, lam) -> EdgeCoreReport:
        return edge_point_core_check(D1, D2, lam)
