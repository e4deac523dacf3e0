import random
from fractions import Fraction
from itertools import combinations

import pytest

from client import BalancedGames
from balancedgames import Allocation, ConsistencyError, Game, NotAdjacentError, NotBalancedError, VertexCollection
from balancedgames.schemas import core as core_module
from balancedgames.types.games import coalitions, grand, size
from balancedgames.utils.linalg import solve
from balancedgames.schemas.adjacency import are_adjacent
from balancedgames.schemas.core import (
    core_dimension,
    core_vertices,
    edge_point_core_check,
    effective_coalitions,
    effective_coalitions_lp,
    face_point_core_rank,
    has_point_core,
)
from balancedgames.schemas.games import dirac, from_collection, unanimity
from balancedgames.schemas.mbc import characteristic, enumerate_mbc
from balancedgames.schemas.polytope import enumerate_vertices, vertex_core, vertex_core_dimension, vertex_effective

THIRD = Fraction(1, 3)


def test_core_of_canonical_games():
    core = core_vertices(unanimity(3, '123'))
    assert core.vertices == [Allocation([0, 0, 1]), Allocation([0, 1, 0]), Allocation([1, 0, 0])]
    assert core.dimension == 2

    core = core_vertices(from_collection(3, ['12', '13']))
    assert core.vertices == [Allocation([1, 0, 0])]
    assert core.point_core

    core = core_vertices(dirac(3, '12'))
    assert core.is_empty
    assert core.vertices == []
    assert core_dimension(dirac(3, '12')) == -1


def test_effective_coalitions():
    v = Game.from_mapping(3, {1: Fraction(1, 2), 6: Fraction(1, 2), 7: 1}, default = 0)
    assert effective_coalitions(v) == {1, 6, 7}
    assert effective_coalitions_lp(v) == {1, 6, 7}

    interior = Game.from_mapping(3, {7: 1}, default = 0)
    assert effective_coalitions(interior) == {7}
    assert core_dimension(interior) == 2

    assert effective_coalitions(from_collection(3, ['1'])) == {1, 2, 4, 6, 7}
    with pytest.raises(NotBalancedError):
        effective_coalitions(dirac(3, '12'))


def test_vertex_cores_match_closed_forms():
    for D in enumerate_vertices(3):
        core = core_vertices(D.game())
        assert core.vertices == sorted(vertex_core(D))
        assert core.effective == vertex_effective(D)


def test_has_point_core():
    v = Game.from_mapping(3, {7: 1}, default = THIRD)
    assert has_point_core(v) == (True, Allocation([THIRD, THIRD, THIRD]))
    assert has_point_core(unanimity(3, '12')) == (False, None)
    assert has_point_core(unanimity(4, '3')) == (True, Allocation.unit(4, 3))
    with pytest.raises(NotBalancedError):
        has_point_core(dirac(3, '12'))


def test_counterexample_core_on_five_players():
    v = VertexCollection.parse(5, ['13', '14', '15', '12345'], drop_grand = True).game()
    w = VertexCollection.parse(5, ['234', '245', '235'], drop_grand = True).game()
    game = Fraction(1, 2) * v + Fraction(1, 2) * w
    assert core_dimension(game) >= 1
    quarter = Fraction(1, 4)
    x = Allocation([quarter, 0, quarter, quarter, quarter])
    y = Allocation([Fraction(1, 2), Fraction(1, 2), 0, 0, 0])
    assert x.in_core(game) and y.in_core(game)


def _random_values(rng: random.Random, n: int) -> Game:
    return Game(n, [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(grand(n))])


def _lifted(v: Game, extra: Fraction) -> Game:
    """
    v with v(N) raised to the largest balanced-collection value plus `extra`.
    """
    top = max(b.evaluate(v) for b in enumerate_mbc(v.n))
    return v.with_value(grand(v.n), top + extra)


def _basis_vertices(v: Game) -> set:
    n = v.n
    found = set()
    for chosen in combinations(coalitions(n, proper = True), n - 1):
        rows = [[1] * n] + [characteristic(S, n) for S in chosen]
        x = solve(rows, [v.grand_value] + [v[S] for S in chosen])
        if x is not None and Allocation(x).in_core(v):
            found.add(Allocation(x))
    return found


def test_effective_coalition_routes_agree():
    for D in enumerate_vertices(3):
        v = D.game()
        assert effective_coalitions(v) == effective_coalitions_lp(v)
    rng = random.Random(21)
    for _ in range(200):
        v = _lifted(_random_values(rng, 4), Fraction(rng.choice([0, 0, 1]), 2))
        assert effective_coalitions(v, cross_check = False) == effective_coalitions_lp(v)


def test_disagreeing_effective_routes_raise(monkeypatch):
    monkeypatch.setattr(core_module, 'effective_coalitions_lp', lambda v: {grand(v.n)})
    with pytest.raises(ConsistencyError):
        core_module.effective_coalitions(unanimity(3, '1'))


@pytest.mark.parametrize('n', [3, 4])
def test_interior_games_have_full_dimensional_cores(n):
    rng = random.Random(30 + n)
    for _ in range(20):
        v = _lifted(_random_values(rng, n), Fraction(rng.randint(1, 4), 3))
        assert core_dimension(v) == n - 1
        assert effective_coalitions(v) == {grand(n)}
        assert has_point_core(v) == (False, None)


@pytest.mark.parametrize('n', [3, 4])
def test_core_vertices_match_basis_search(n):
    rng = random.Random(40 + n)
    games = [D.game() for D in rng.sample(enumerate_vertices(n), 8)]
    games += [_lifted(_random_values(rng, n), Fraction(rng.randint(0, 2), 2)) for _ in range(12)]
    for v in games:
        assert set(core_vertices(v).vertices) == _basis_vertices(v)


def test_vertex_cores_on_four_players():
    rng = random.Random(50)
    for D in rng.sample(enumerate_vertices(4), 100):
        core = core_vertices(D.game())
        assert core.vertices == sorted(vertex_core(D))
        assert core.dimension == vertex_core_dimension(D)


def test_point_core_iff_single_vertex():
    for D in enumerate_vertices(3):
        flag, point = has_point_core(D.game())
        vertices = core_vertices(D.game()).vertices
        assert flag == (len(vertices) == 1)
        assert flag == (size(D.intersection) == 1)
        if flag:
            assert point == vertices[0]
    rng = random.Random(60)
    for _ in range(30):
        v = _lifted(_random_values(rng, 4), Fraction(0))
        flag, point = has_point_core(v)
        vertices = core_vertices(v).vertices
        assert flag == (len(vertices) == 1)
        if flag:
            assert point == vertices[0]


def test_face_point_core_rank():
    assert not face_point_core_rank(4, [[3, 12], [1, 14]])
    assert face_point_core_rank(4, [[1, 14], [2, 13], [4, 11]])
    assert face_point_core_rank(3, [[1, 2, 4]])
    assert not face_point_core_rank(3, [[1, 6]])


def test_edge_point_core_same_player():
    D1 = VertexCollection.parse(3, ['1', '12', '13'])
    D2 = VertexCollection.parse(3, ['1', '12'])
    report = edge_point_core_check(D1, D2, Fraction(1, 2))
    assert report.point_core
    assert report.point == Allocation([1, 0, 0])
    assert report.predicted is True and report.agrees


def test_edge_point_core_distinct_players():
    rng = random.Random(9)
    vertices = [D for D in enumerate_vertices(4) if D.sets and bin(D.intersection).count('1') == 1]
    checked = 0
    while checked < 15:
        D1, D2 = rng.sample(vertices, 2)
        if D1.intersection == D2.intersection or not are_adjacent(D1, D2): continue
        report = edge_point_core_check(D1, D2, THIRD)
        assert report.point_core
        assert report.agrees
        checked += 1


def test_edge_point_core_rejects_non_edges():
    D1 = VertexCollection.parse(3, ['1', '12', '13'])
    D2 = VertexCollection.parse(3, ['12'])
    with pytest.raises(NotAdjacentError):
        edge_point_core_check(D1, D2, THIRD)


def test_client_core():
    description = BalancedGames.core_vertices(unanimity(3, '1'))
    assert description.to_dict()['point_core'] is True
    assert BalancedGames.core.dimension(unanimity(3, '12')) == 1
