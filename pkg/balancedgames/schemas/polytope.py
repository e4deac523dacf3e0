"""
The polytope BG_+(n) of nonnegative balanced games with v(N) = 1.

Its vertices are the 0-1 games d_D where D is empty or has a nonempty
common intersection. Grouping vertices by S = the intersection of D gives
the counting recursion used by `count_table` and by the sampler: either S
belongs to D (any family of supersets of S), or it does not (a family whose
traces on N minus S have an empty intersection).
"""

from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, List, Optional, Sequence

from balancedgames.utils import logger
from balancedgames.utils.config import BalancedGamesSettings
from balancedgames.utils.config import settings as bg_settings
from balancedgames.utils.linalg import affine_rank
from balancedgames.types.errors import BudgetExceededError, ConsistencyError, InfeasibleError, InvalidInputError
from balancedgames.types.games import Allocation, Coalition, coalitions, compact_label, grand, size
from balancedgames.types.collections import VertexCollection, intersection
from balancedgames.types.models import CountTable, Facet, FacetKind
from balancedgames.schemas.mbc import enumerate_mbc


def is_vertex(n: int, D: Iterable[Coalition]) -> bool:
    """
    True iff D is empty or its members share a player.

    :param D: proper nonempty coalitions
    """
    return VertexCollection(n, D, strict = False).is_vertex


def proper_subsets(R: Coalition) -> List[Coalition]:
    """
    Nonempty proper subsets of R in ascending order.
    """
    out, A = [], (R - 1) & R
    while A:
        out.append(A)
        A = (A - 1) & R
    return sorted(out)


def _families(S: Coalition, n: int) -> Iterator[frozenset]:
    """
    All vertex families whose common intersection is exactly S.
    """
    R = grand(n) ^ S
    inner = proper_subsets(R)
    for bits in range(1 << len(inner)):
        chosen = [inner[b] for b in range(len(inner)) if bits >> b & 1]
        yield frozenset([S] + [S | A for A in chosen])
        if chosen and intersection(chosen, n) & R == 0:
            yield frozenset(S | A for A in chosen)


def enumerate_vertices(
    n: int,
    allow_large: Optional[bool] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> List[VertexCollection]:
    """
    All vertices of BG_+(n) in canonical order (u_N first).

    :param n: the player count, within the vertex cap
    :param allow_large: opt into the larger cap
    """
    settings = settings if settings is not None else bg_settings
    settings.check_budget('vertices', n, allow_large)
    families = [frozenset()]
    for S in coalitions(n, proper = True):
        families.extend(_families(S, n))
    vertices = sorted((VertexCollection(n, D, strict = False) for D in families), key = lambda v: v.key)
    if settings.debug_enabled:
        logger.info(f"Enumerated {len(vertices)} vertices of BG_+({n})")
    return vertices


@lru_cache(maxsize = None)
def _counts(n: int) -> CountTable:
    t, s, f, b = [], [], [], []
    for k in range(1, n + 1):
        t_k = 1 << ((1 << k) - 2)
        f_k = sum(comb(k, j) * (2 * t[j - 1] - f[j - 1] - 1) for j in range(1, k))
        t.append(t_k)
        f.append(f_k)
        s.append(t_k - f_k - 1)
        b.append(f_k + 1)
    return CountTable(n = n, t = t, s = s, f = f, b = b)


def count_table(
    n: int,
    allow_large: Optional[bool] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> CountTable:
    """
    Exact t_k, s_k, f_k and b_k (the number of vertices of BG_+(k)) for k = 1..n.
    """
    settings = settings if settings is not None else bg_settings
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"Invalid player count: {n!r}")
    cap = settings.budget('counts', allow_large)
    if n > cap:
        raise BudgetExceededError(f"counts for n={n} exceeds the cap n <= {cap}")
    return _counts(n)


def minimal_members(D: Iterable[Coalition]) -> List[Coalition]:
    D = list(D)
    return sorted(S for S in D if not any(T != S and T & S == T for T in D))


def is_upward_closed(n: int, D: Iterable[Coalition]) -> bool:
    """
    Whether D together with N contains every superset of its members.
    """
    D = set(D)
    return all(T in D for S in D for T in coalitions(n, proper = True) if T & S == S)


def vertex_label(D: VertexCollection) -> str:
    """
    u_N for the empty family, joined unanimity games (u_12∨u_13) for
    upward-closed families, and d_ followed by the members otherwise.
    """
    n = D.n
    if not D.sets:
        return f"u_{compact_label(grand(n), n)}"
    if is_upward_closed(n, D.sets):
        return '∨'.join(f"u_{compact_label(S, n)}" for S in minimal_members(D.sets))
    return 'd_' + ','.join(compact_label(S, n) for S in D.sorted())


def vertex_core(D: VertexCollection) -> List[Allocation]:
    """
    Extreme points of the core of d_D: the unit vectors of the players in the intersection.
    """
    common = D.intersection
    return [Allocation.unit(D.n, i + 1) for i in range(D.n) if common >> i & 1]


def vertex_core_dimension(D: VertexCollection) -> int:
    return size(D.intersection) - 1


def vertex_effective(D: VertexCollection) -> List[Coalition]:
    """
    Effective coalitions of d_D: N, the members of D, and the coalitions
    missing the common intersection.
    """
    common = D.intersection
    return sorted({grand(D.n)} | set(D.sets) | {S for S in coalitions(D.n, proper = True) if S & common == 0})


def polytope_dimension_witness(n: int) -> int:
    """
    Affine rank of u_N and the games d_{T} for every proper T; equals 2^n - 2.
    """
    points = [VertexCollection(n, []).game().vector()]
    points += [VertexCollection(n, [T]).game().vector() for T in coalitions(n, proper = True)]
    return affine_rank(points)


def facets_bgplus(
    n: int,
    allow_large: Optional[bool] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> List[Facet]:
    """
    The facets of BG_+(n): v(S) >= 0 for every proper S, then one
    balancedness facet per minimal balanced collection.
    """
    nonnegativity = [Facet(kind = FacetKind.nonnegativity, coalition = S) for S in coalitions(n, proper = True)]
    balancedness = [
        Facet(kind = FacetKind.balancedness, collection = b)
        for b in enumerate_mbc(n, allow_large = allow_large, settings = settings)
    ]
    return nonnegativity + balancedness


def facet_vertices(facet: Facet, vertices: Sequence[VertexCollection]) -> List[VertexCollection]:
    return [D for D in vertices if facet.is_tight(D.game())]


def facet_rank(facet: Facet, vertices: Sequence[VertexCollection]) -> int:
    """
    Affine rank of the vertices on `facet`; 2^n - 3 for a facet.
    """
    return affine_rank([D.game().vector() for D in facet_vertices(facet, vertices)])


def _check_chain(D1: VertexCollection, D2: VertexCollection, D3: VertexCollection) -> None:
    if not D1.n == D2.n == D3.n:
        raise InvalidInputError("Vertices must share the same player count")
    if not (D1.sets <= D2.sets <= D3.sets):
        raise InfeasibleError("Property B needs a monotone chain d_D1 <= d_D2 <= d_D3")


def property_b_combination(D1: VertexCollection, D2: VertexCollection, D3: VertexCollection) -> VertexCollection:
    """
    The family of d_D1 + d_D3 - d_D2 for a monotone chain, which is D1
    together with the members of D3 missing from D2.
    """
    _check_chain(D1, D2, D3)
    return VertexCollection(D1.n, D1.sets | (D3.sets - D2.sets), strict = False)


def property_b_closure(D1: VertexCollection, D2: VertexCollection, D3: VertexCollection) -> bool:
    result = property_b_combination(D1, D2, D3)
    expected = D1.game() + D3.game() - D2.game()
    if result.game() != expected:
        raise ConsistencyError(f"Property B combination mismatch for {D1!r}, {D2!r}, {D3!r}")
    return result.is_vertex


class PolytopeClient:
    """
    Vertices, counts and facets of BG_+(n).
    """

    def __init__(
        self,
        settings: Optional[BalancedGamesSettings] = None,
    ):
        self.settings = settings if settings is not None else bg_settings

    def is_vertex(self, n: int, D: Iterable[Coalition]) -> bool:
        return is_vertex(n, D)

    def vertices(self, n: int, allow_large: Optional[bool] = None) -> List[VertexCollection]:
        return enumerate_vertices(n, allow_large = allow_large, settings = self.settings)

    def counts(self, n: int, allow_large: Optional[bool] = None) -> CountTable:
        return count_table(n, allow_large = allow_large, settings = self.settings)

    def facets(self, n: int, allow_large: Optional[bool] = None) -> List[Facet]:
        return facets_bgplus(n, allow_large = allow_large, settings = self.settings)

    def label(self, D: VertexCollection) -> str:
        return vertex_label(D)

    def property_b_closure(self, D1: VertexCollection, D2: VertexCollection, D3: VertexCollection) -> bool:
        return property_b_closure(D1, D2, D3)
