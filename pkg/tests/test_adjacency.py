import random
from itertools import combinations

import pytest

from client import BalancedGames
from balancedgames import BudgetExceededError, ConsistencyError, InvalidInputError, VertexCollection
from balancedgames.schemas import adjacency
from balancedgames.schemas.adjacency import (
    adjacency_graph,
    adjacent_by_theorem,
    are_adjacent,
    hamiltonian_path,
    is_hamilton_connected,
    non_adjacency_witness,
)
from balancedgames.schemas.polytope import enumerate_vertices, vertex_label

# edges of the adjacency graph of BG_+(3), by vertex label
THREE_PLAYER_EDGES = {
    'u_1': ['u_12∨u_13', 'u_12∨u_23', 'u_13∨u_23', 'u_2', 'u_3', 'd_1,12', 'd_1,13'],
    'u_2': ['d_2,12', 'u_12∨u_23', 'u_12∨u_13', 'u_13∨u_23', 'u_3', 'd_2,23'],
    'u_3': ['d_3,13', 'u_13∨u_23', 'u_12∨u_23', 'u_12∨u_13', 'd_3,23'],
    'u_12∨u_13': ['u_12', 'u_13', 'u_13∨u_23', 'u_12∨u_23', 'd_1,13', 'd_3,13', 'd_1,12', 'd_2,12'],
    'u_13∨u_23': ['u_13', 'u_23', 'u_12∨u_23', 'd_2,23', 'd_3,23', 'd_1,13', 'd_3,13'],
    'u_12∨u_23': ['u_12', 'u_23', 'd_2,23', 'd_3,23', 'd_1,12', 'd_2,12'],
    'd_1,12': ['u_12', 'd_1', 'd_2,12', 'd_3,23'],
    'd_2,12': ['u_12', 'd_2', 'd_3,13'],
    'd_1,13': ['u_13', 'd_1', 'd_3,13', 'd_2,23'],
    'd_3,13': ['u_13', 'd_3'],
    'd_2,23': ['u_23', 'd_2'],
    'd_3,23': ['u_23', 'd_3'],
    'u_12': ['u_123', 'd_3'],
    'd_1': ['u_123', 'd_2', 'd_3'],
    'u_13': ['u_123', 'd_2'],
    'd_2': ['u_123', 'd_3'],
    'u_23': ['u_123', 'd_1'],
    'd_3': ['u_123'],
}


def _labelled_edges(g):
    return {frozenset((vertex_label(g.vertices[a]), vertex_label(g.vertices[b]))) for a, b in g.edges}


def test_three_player_graph():
    g = adjacency_graph(3)
    expected = {frozenset((a, b)) for a, targets in THREE_PLAYER_EDGES.items() for b in targets}
    assert len(expected) == 69
    assert _labelled_edges(g) == expected
    u_23 = g.index(VertexCollection.parse(3, ['23']))
    assert {vertex_label(g.vertices[i]) for i in g.neighbors(u_23)} == {
        'u_13∨u_23', 'u_12∨u_23', 'd_2,23', 'd_3,23', 'u_123', 'd_1',
    }


def test_two_player_graph_is_a_triangle():
    g = adjacency_graph(2)
    assert len(g) == 3
    assert g.edges == {(0, 1), (0, 2), (1, 2)}


def test_non_adjacency_witness():
    D1 = VertexCollection.parse(3, ['1', '12', '13'])
    D2 = VertexCollection.parse(3, ['12'])
    D3, D4 = non_adjacency_witness(D1, D2)
    assert {D3, D4}.isdisjoint({D1, D2})
    assert D1.game() + D2.game() == D3.game() + D4.game()
    assert D3.is_vertex and D4.is_vertex
    assert non_adjacency_witness(D1, VertexCollection.parse(3, ['1', '12'])) is None


def test_five_player_pair_is_adjacent():
    D1 = VertexCollection.parse(5, ['13', '14', '15'])
    D2 = VertexCollection.parse(5, ['234', '245', '235'])
    assert are_adjacent(D1, D2)


def test_theorem_agrees_with_split_search():
    for D1, D2 in combinations(enumerate_vertices(3), 2):
        predicted = adjacent_by_theorem(D1, D2)
        if predicted is None: continue
        assert predicted == (non_adjacency_witness(D1, D2) is None)

    rng = random.Random(12)
    vertices = enumerate_vertices(4)
    for _ in range(3000):
        D1, D2 = rng.sample(vertices, 2)
        predicted = adjacent_by_theorem(D1, D2)
        if predicted is None: continue
        assert predicted == (non_adjacency_witness(D1, D2) is None)


def test_theorem_agrees_on_random_five_player_pairs():
    rng = random.Random(6)
    checked = 0
    while checked < 100:
        D1 = BalancedGames.sampler.sample(5, rng)
        D2 = BalancedGames.sampler.sample(5, rng)
        if D1 == D2: continue
        predicted = adjacent_by_theorem(D1, D2)
        if predicted is None: continue
        assert predicted == (non_adjacency_witness(D1, D2) is None)
        checked += 1


def test_invalid_pairs():
    D = VertexCollection.parse(3, ['12'])
    with pytest.raises(InvalidInputError):
        are_adjacent(D, D)
    with pytest.raises(InvalidInputError):
        are_adjacent(D, VertexCollection.parse(4, ['12']))


def test_fast_path_disagreement_raises(monkeypatch):
    u_1 = VertexCollection.parse(3, ['1', '12', '13'])
    u_2 = VertexCollection.parse(3, ['2', '12', '23'])
    assert adjacent_by_theorem(u_1, u_2) is True
    monkeypatch.setattr(adjacency, 'adjacent_by_theorem', lambda D1, D2: False)
    with pytest.raises(ConsistencyError):
        adjacency.are_adjacent(u_1, u_2)
    assert adjacency.are_adjacent(u_1, u_2, cross_check = False)


def test_hamiltonian_paths():
    g = adjacency_graph(3)
    source = g.index(VertexCollection(3, []))
    target = g.index(VertexCollection.parse(3, ['2', '23']))
    path = hamiltonian_path(g, source, target)
    assert path[0] == source and path[-1] == target
    assert sorted(path) == list(range(19))
    assert all(g.graph.has_edge(a, b) for a, b in zip(path, path[1:]))
    assert hamiltonian_path(g, source, source) is None
    with pytest.raises(InvalidInputError):
        hamiltonian_path(g, source, 19)


def test_three_player_graph_is_hamilton_connected():
    g = adjacency_graph(3)
    pairs = list(combinations(range(len(g)), 2))
    assert len(pairs) == 171
    assert is_hamilton_connected(g)
    assert is_hamilton_connected(adjacency_graph(2))


def test_budgets():
    with pytest.raises(BudgetExceededError):
        adjacency_graph(4)
    g = BalancedGames.adjacency_graph(3)
    assert BalancedGames.adjacency.hamiltonian_path(g, 0, 1) is not None
