"""
The cone BG(n) of balanced games and the affine cone BG_alpha(n).

Both are cut out by one inequality per minimal balanced collection B:

    sum(lambda_S v(S) for S in B) - v(N) <= 0

For BG(n) the grand coalition is a coordinate. For BG_alpha(n) it is fixed to
alpha, and everything is computed on the translated cone BG_alpha(n) - alpha u_n,
whose members have v(N) = 0 and whose coordinates exclude N.
"""

from fractions import Fraction
from typing import List, Optional, Tuple, Union

from balancedgames.utils.config import BalancedGamesSettings
from balancedgames.utils.config import settings as bg_settings
from balancedgames.utils.linalg import rank
from balancedgames.utils.lp import LinearProgram
from balancedgames.types.errors import ConsistencyError, InfeasibleError, InvalidInputError
from balancedgames.types.games import Coalition, Game, RationalLike, coalitions, grand, size
from balancedgames.types.collections import BalancedCollection
from balancedgames.types.models import Ambient, ConicDecomposition, CoreDescription, Ray, RayKind
from balancedgames.schemas.balance import is_balanced_lp
from balancedgames.schemas.core import core_vertices
from balancedgames.schemas.mbc import enumerate_mbc

AmbientLike = Union[Ambient, str]


def _ambient(ambient: AmbientLike) -> Ambient:
    try:
        return Ambient(ambient)
    except ValueError as e:
        raise InvalidInputError(f"Unknown ambient cone {ambient!r}, expected bg or bga") from e


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidInputError(f"Cones are defined for n >= 2, got {n!r}")


def _direction(n: int, plus: List[Coalition], minus: List[Coalition] = ()) -> Game:
    mapping = {S: 1 for S in plus}
    mapping.update({S: -1 for S in minus})
    return Game.from_mapping(n, mapping, default = 0)


def ambient_dimension(n: int, ambient: AmbientLike = Ambient.bg) -> int:
    return grand(n) if _ambient(ambient) == Ambient.bg else grand(n) - 1


def lineality_dimension(n: int, ambient: AmbientLike = Ambient.bg) -> int:
    return n if _ambient(ambient) == Ambient.bg else n - 1


"""
Rays
"""

def lineality_basis_bg(n: int) -> List[Ray]:
    """
    w_i = sum of delta_S over S containing i (N included), for i = 1..n.
    """
    _check_n(n)
    return [
        Ray(
            kind = RayKind.lineality_pos,
            index = 1 << i,
            direction = _direction(n, [S for S in coalitions(n) if S >> i & 1]),
        )
        for i in range(n)
    ]


def lineality_basis_bga(n: int) -> List[Ray]:
    """
    w_i = sum of delta_S over S containing i but not n, minus the sum over S
    containing n but not i, for i = 1..n-1.
    """
    _check_n(n)
    last = 1 << (n - 1)
    proper = coalitions(n, proper = True)
    return [
        Ray(
            kind = RayKind.lineality_pos,
            index = 1 << i,
            direction = _direction(
                n,
                [S for S in proper if S >> i & 1 and not S & last],
                [S for S in proper if not S >> i & 1 and S & last],
            ),
            ambient = Ambient.bga,
        )
        for i in range(n - 1)
    ]


def _negated(ray: Ray) -> Ray:
    return Ray(kind = RayKind.lineality_neg, index = ray.index, direction = -ray.direction, ambient = ray.ambient)


def extremal_rays_bg(n: int) -> List[Ray]:
    """
    The 2^n + 2n - 2 extremal rays of BG(n): w_i, -w_i, r_S = -delta_S for
    proper S with |S| > 1, and r_i = sum of delta_S over S containing i with |S| > 1.
    """
    basis = lineality_basis_bg(n)
    rays = basis + [_negated(w) for w in basis]
    rays += [
        Ray(kind = RayKind.r_S, index = S, direction = _direction(n, [], [S]))
        for S in coalitions(n, proper = True) if size(S) > 1
    ]
    rays += [
        Ray(
            kind = RayKind.r_i,
            index = 1 << i,
            direction = _direction(n, [S for S in coalitions(n) if S >> i & 1 and size(S) > 1]),
        )
        for i in range(n)
    ]
    return rays


def extremal_rays_bga(n: int) -> List[Ray]:
    """
    The 2^n + 2n - 4 extremal rays of BG_alpha(n), as directions of the
    translated cone (v(N) = 0).
    """
    basis = lineality_basis_bga(n)
    last = 1 << (n - 1)
    proper = coalitions(n, proper = True)
    rays = basis + [_negated(w) for w in basis]
    rays += [
        Ray(kind = RayKind.r_S, index = S, direction = _direction(n, [], [S]), ambient = Ambient.bga)
        for S in proper if size(S) > 1
    ]
    for i in range(n - 1):
        direction = _direction(
            n,
            [S for S in proper if S >> i & 1 and not S & last and size(S) > 1],
            [S for S in proper if not S >> i & 1 and S & last],
        )
        rays.append(Ray(kind = RayKind.r_i, index = 1 << i, direction = direction, ambient = Ambient.bga))
    rays.append(Ray(kind = RayKind.r_i, index = last, direction = _direction(n, [], [last]), ambient = Ambient.bga))
    return rays


def extremal_rays(n: int, ambient: AmbientLike = Ambient.bg) -> List[Ray]:
    return extremal_rays_bg(n) if _ambient(ambient) == Ambient.bg else extremal_rays_bga(n)


def lineality_basis(n: int, ambient: AmbientLike = Ambient.bg) -> List[Ray]:
    return lineality_basis_bg(n) if _ambient(ambient) == Ambient.bg else lineality_basis_bga(n)


"""
Inequalities
"""

def cone_rows(
    n: int,
    ambient: AmbientLike = Ambient.bg,
    allow_large: Optional[bool] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> List[Tuple[BalancedCollection, List[Fraction]]]:
    """
    One coefficient row per minimal balanced collection, over the ambient
    coordinates. The BG(n) row carries -1 on N.
    """
    ambient = _ambient(ambient)
    rows = []
    for b in enumerate_mbc(n, allow_large = allow_large, settings = settings):
        row = [b.weight(S) for S in coalitions(n, proper = True)]
        if ambient == Ambient.bg:
            row.append(Fraction(-1))
        rows.append((b, row))
    return rows


def translate_bga(v: Game) -> Game:
    """
    v - alpha u_n with alpha = v(N): a member of the translated cone exactly
    when v belongs to BG_alpha(n).
    """
    last = 1 << (v.n - 1)
    alpha = v.grand_value
    return Game(v.n, [value - (alpha if S & last else 0) for S, value in v.items()])


def cone_slacks(
    v: Game,
    allow_large: Optional[bool] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> List[Tuple[BalancedCollection, Fraction]]:
    """
    sum(lambda_S v(S)) - v(N) for every minimal balanced collection; v lies
    in the cone iff none is positive. The same values apply to BG_alpha(n)
    with alpha = v(N).
    """
    return [(b, b.slack(v)) for b in enumerate_mbc(v.n, allow_large = allow_large, settings = settings)]


def in_cone(
    v: Game,
    ambient: AmbientLike = Ambient.bg,
    alpha: Optional[RationalLike] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> bool:
    """
    Membership in BG(n), or in BG_alpha(n) when `ambient` is bga.

    :param alpha: the required v(N) for bga; defaults to v(N)
    """
    settings = settings if settings is not None else bg_settings
    if _ambient(ambient) == Ambient.bga and alpha is not None and v.grand_value != Fraction(alpha):
        return False
    if v.n == 1:
        return True
    if v.n <= settings.mbc_max_n:
        return all(slack <= 0 for _, slack in cone_slacks(v, settings = settings))
    return is_balanced_lp(v).balanced


def facet_tightness(
    v: Game,
    ambient: AmbientLike = Ambient.bg,
    settings: Optional[BalancedGamesSettings] = None,
) -> List[Tuple[BalancedCollection, bool]]:
    """
    For each minimal balanced collection, whether v lies on its facet.

    Raises
    ------
    InfeasibleError
        when v is outside the cone
    """
    _ambient(ambient)
    slacks = cone_slacks(v, settings = settings)
    outside = [b for b, slack in slacks if slack > 0]
    if outside:
        raise InfeasibleError(f"{v!r} violates the inequality of {outside[0]!r}")
    return [(b, slack == 0) for b, slack in slacks]


def _ray_slacks(ray: Ray, settings: Optional[BalancedGamesSettings] = None) -> List[Tuple[BalancedCollection, Fraction]]:
    if ray.direction.grand_value != 0 and ray.ambient == Ambient.bga:
        raise InvalidInputError("BG_alpha directions must vanish on N")
    return cone_slacks(ray.direction, settings = settings)


def verify_extremal(
    n: int,
    r: Ray,
    ambient: Optional[AmbientLike] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> bool:
    """
    Whether r spans an extremal ray of the cone modulo its lineality space.

    The solution space of the inequalities tight at r must have dimension
    lineality + 1; a lineality direction qualifies when every inequality is
    tight at it.

    Raises
    ------
    InfeasibleError
        when r violates an inequality of the cone
    """
    ambient = _ambient(ambient if ambient is not None else r.ambient)
    if r.n != n:
        raise InvalidInputError(f"Ray on {r.n} players given for n={n}")
    if all(x == 0 for x in r.direction.values):
        raise InvalidInputError("The zero direction is not a ray")
    slacks = _ray_slacks(r, settings)
    if any(slack > 0 for _, slack in slacks):
        raise InfeasibleError(f"{r.name} is outside the cone")
    rows = dict((b, row) for b, row in cone_rows(n, ambient, settings = settings))
    tight = [rows[b] for b, slack in slacks if slack == 0]
    lineality = lineality_dimension(n, ambient)
    if len(tight) == len(slacks):
        return ambient_dimension(n, ambient) - rank(tight) == lineality
    return ambient_dimension(n, ambient) - rank(tight) == lineality + 1


def cone_dimension(n: int, ambient: AmbientLike = Ambient.bg) -> int:
    """
    Rank of all rays together; 2^n - 1 for BG(n) and 2^n - 2 for BG_alpha(n).
    """
    return rank([r.coordinates() for r in extremal_rays(n, ambient)])


def incidence_table(
    n: int,
    ambient: AmbientLike = Ambient.bg,
    settings: Optional[BalancedGamesSettings] = None,
) -> List[Tuple[BalancedCollection, List[Ray]]]:
    """
    The rays lying on each facet, facets in canonical order and rays in
    `extremal_rays` order.
    """
    rays = extremal_rays(n, ambient)
    table = {b: [] for b in enumerate_mbc(n, settings = settings)}
    for ray in rays:
        for b, slack in _ray_slacks(ray, settings):
            if slack == 0: table[b].append(ray)
    return list(table.items())


def facet_ray_rank(
    n: int,
    b: BalancedCollection,
    ambient: AmbientLike = Ambient.bg,
    settings: Optional[BalancedGamesSettings] = None,
) -> int:
    """
    Rank of the rays on the facet of b; one less than the cone dimension
    when the inequality defines a facet.
    """
    for facet, rays in incidence_table(n, ambient, settings = settings):
        if facet == b:
            return rank([r.coordinates() for r in rays])
    raise InvalidInputError(f"{b!r} is not a minimal balanced collection on {n} players")


def ray_core(r: Ray, settings: Optional[BalancedGamesSettings] = None) -> CoreDescription:
    """
    The core of the ray direction read as a game.
    """
    return core_vertices(r.direction, settings = settings)


def conic_decomposition(
    v: Game,
    ambient: AmbientLike = Ambient.bg,
    settings: Optional[BalancedGamesSettings] = None,
) -> ConicDecomposition:
    """
    Writes v (or v - alpha u_n for bga) as a lineality part plus a
    nonnegative combination of the remaining rays, exactly.

    Raises
    ------
    InfeasibleError
        when no such combination exists, i.e. v is outside the cone
    """
    ambient = _ambient(ambient)
    target = v if ambient == Ambient.bg else translate_bga(v)
    rays = extremal_rays(v.n, ambient)
    basis = [r for r in rays if r.kind == RayKind.lineality_pos]
    pointed = [r for r in rays if not r.is_lineality]
    # columns: beta+ then beta- for the basis, then one per pointed ray
    columns = [r.coordinates() for r in basis]
    columns += [[-x for x in c] for c in columns]
    columns += [r.coordinates() for r in pointed]
    lp = LinearProgram(len(columns))
    goal = target.vector(include_grand = ambient == Ambient.bg)
    for k, value in enumerate(goal):
        lp.add_constraint([c[k] for c in columns], '==', value)
    result = lp.solve()
    if not result.is_optimal:
        raise InfeasibleError(f"{v!r} has no conic decomposition in {ambient.value}")
    m = len(basis)
    beta = [result.x[i] - result.x[m + i] for i in range(m)]
    decomposition = ConicDecomposition(
        ambient = ambient,
        lineality = list(zip(basis, beta)),
        rays = list(zip(pointed, result.x[2 * m:])),
    )
    if decomposition.combine().vector(ambient == Ambient.bg) != goal:
        raise ConsistencyError(f"Conic decomposition does not reproduce {v!r}")
    return decomposition


class ConesClient:
    """
    Rays, facets and membership for BG(n) and BG_alpha(n).
    """

    def __init__(
        self,
        settings: Optional[BalancedGamesSettings] = None,
    ):
        self.settings = settings if settings is not None else bg_settings

    def rays(self, n: int, ambient: AmbientLike = Ambient.bg) -> List[Ray]:
        return extremal_rays(n, ambient)

    def lineality(self, n: int, ambient: AmbientLike = Ambient.bg) -> List[Ray]:
        return lineality_basis(n, ambient)

    def verify_extremal(self, r: Ray) -> bool:
        return verify_extremal(r.n, r, settings = self.settings)

    def facet_tightness(self, v: Game, ambient: AmbientLike = Ambient.bg) -> List[Tuple[BalancedCollection, bool]]:
        return facet_tightness(v, ambient, settings = self.settings)

    def incidence_table(self, n: int, ambient: AmbientLike = Ambient.bg) -> List[Tuple[BalancedCollection, List[Ray]]]:
        return incidence_table(n, ambient, settings = self.settings)

    def in_cone(self, v: Game, ambient: AmbientLike = Ambient.bg, alpha: Optional[RationalLike] = None) -> bool:
        return in_cone(v, ambient, alpha, settings = self.settings)

    def decompose(self, v: Game, ambient: AmbientLike = Ambient.bg) -> ConicDecomposition:
        return conic_decomposition(v, ambient, settings = self.settings)

    def ray_core(self, r: Ray) -> CoreDescription:
        return ray_core(r, settings = self.settings)
