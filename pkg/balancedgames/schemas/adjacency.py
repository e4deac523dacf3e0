"""
Adjacency on BG_+(n).

Two vertices d_D1, d_D2 are non-adjacent iff d_D1 + d_D2 = d_D3 + d_D4 for two
other vertices. Then D3 and D4 share the common part of D1 and D2 and split
their symmetric difference, so the oracle only searches those splits.
"""

from itertools import product
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from balancedgames.utils import logger
from balancedgames.utils.config import BalancedGamesSettings
from balancedgames.utils.config import settings as bg_settings
from balancedgames.types.errors import ConsistencyError, InvalidInputError
from balancedgames.types.games import Coalition, members, size
from balancedgames.types.collections import VertexCollection, intersection
from balancedgames.types.models import AdjacencyGraph
from balancedgames.schemas.polytope import enumerate_vertices

Split = Tuple[frozenset, frozenset]


def _check_pair(D1: VertexCollection, D2: VertexCollection) -> None:
    if D1.n != D2.n:
        raise InvalidInputError(f"Vertices on {D1.n} and {D2.n} players cannot be compared")
    if D1 == D2:
        raise InvalidInputError("Adjacency needs two distinct vertices")
    if not D1.is_vertex or not D2.is_vertex:
        raise InvalidInputError("Both collections must be vertices")


def _find_split(n: int, common: frozenset, delta: List[Coalition], excluded: Set[frozenset]) -> Optional[Split]:
    """
    Depth-first assignment of `delta` to two sides, pruned as soon as a
    nonempty side loses its common player. delta[0] is pinned to the first side.
    """
    start = intersection(common, n)
    first: List[Coalition] = []
    second: List[Coalition] = []

    def visit(k: int, left: int, right: int) -> Optional[Split]:
        if left == 0 or right == 0: return None
        if k == len(delta):
            side = frozenset(first)
            if side in excluded: return None
            return common | side, common | frozenset(second)
        S = delta[k]
        first.append(S)
        found = visit(k + 1, left & S, right)
        first.pop()
        if found is not None or k == 0: return found
        second.append(S)
        found = visit(k + 1, left, right & S)
        second.pop()
        return found

    return visit(0, start, start)


def non_adjacency_witness(D1: VertexCollection, D2: VertexCollection) -> Optional[Tuple[VertexCollection, VertexCollection]]:
    """
    Two other vertices D3, D4 with d_D1 + d_D2 = d_D3 + d_D4, or None when
    D1 and D2 are adjacent.
    """
    _check_pair(D1, D2)
    common = D1.sets & D2.sets
    delta = sorted(D1.sets ^ D2.sets)
    excluded = {D1.sets - D2.sets, D2.sets - D1.sets}
    split = _find_split(D1.n, common, delta, excluded)
    if split is None: return None
    return VertexCollection(D1.n, split[0]), VertexCollection(D1.n, split[1])


def _singleton_player(mask: Coalition) -> Optional[int]:
    return members(mask)[0] if size(mask) == 1 else None


def _same_player(D1: VertexCollection, D2: VertexCollection) -> bool:
    """
    Adjacency when both families meet in the same single player.
    """
    nested = D1.sets <= D2.sets or D2.sets <= D1.sets
    return nested and len(D1.sets ^ D2.sets) == 1


def _disjoint_families(D1: VertexCollection, D2: VertexCollection, i: Coalition, j: Coalition) -> bool:
    """
    Adjacency for distinct single players i, j and disjoint families.
    """
    if any(S & j for S in D1.sets) or any(T & i for T in D2.sets):
        return False
    excluded = {D1.sets, D2.sets}
    return _find_split(D1.n, frozenset(), sorted(D1.sets | D2.sets), excluded) is None


def _subsets(T: List[int]):
    """
    Pairs of disjoint subsets (K, K') of T, as bitmasks.
    """
    for labels in product((0, 1, 2), repeat = len(T)):
        K = sum(1 << t for t, l in zip(T, labels) if l == 1)
        K2 = sum(1 << t for t, l in zip(T, labels) if l == 2)
        yield K, K2


def _covered(sets: frozenset, K: Coalition, K2: Coalition) -> bool:
    return all(S & K == K or S & K2 == K2 for S in sets)


def _overlapping_families(D1: VertexCollection, D2: VertexCollection, i: Coalition, j: Coalition) -> bool:
    """
    Adjacency for distinct single players i, j when the families share members.
    """
    only1 = D1.sets - D2.sets
    only2 = D2.sets - D1.sets
    if any(S & j for S in only1) or any(S & i for S in only2):
        return False
    T = intersection(D1.sets & D2.sets, D1.n) & ~(i | j)
    bits = [t for t in range(D1.n) if T >> t & 1]
    pairs = list(_subsets(bits))
    for K1, K2 in pairs:
        if not K1 or not K2 or not _covered(only1, K1, K2): continue
        for K3, K4 in pairs:
            if K1 & K3 and K2 & K4 and _covered(only2, K3, K4):
                return False
    return True


def adjacent_by_theorem(D1: VertexCollection, D2: VertexCollection) -> Optional[bool]:
    """
    Adjacency from the characterizations for families whose intersections
    are single players; None when they do not apply.
    """
    _check_pair(D1, D2)
    if not D1.sets or not D2.sets: return None
    i, j = D1.intersection, D2.intersection
    if _singleton_player(i) is None or _singleton_player(j) is None: return None
    if i == j:
        return _same_player(D1, D2)
    if not D1.sets & D2.sets:
        return _disjoint_families(D1, D2, i, j)
    return _overlapping_families(D1, D2, i, j)


def are_adjacent(D1: VertexCollection, D2: VertexCollection, cross_check: bool = True) -> bool:
    """
    Whether d_D1 and d_D2 span an edge of BG_+(n).

    :param cross_check: compare with the theorem fast path where it applies and
        raise `ConsistencyError` on disagreement
    """
    adjacent = non_adjacency_witness(D1, D2) is None
    if cross_check:
        predicted = adjacent_by_theorem(D1, D2)
        if predicted is not None and predicted != adjacent:
            raise ConsistencyError(f"Adjacency fast path disagrees with the split search for {D1!r} and {D2!r}")
    return adjacent


def adjacency_graph(
    n: int,
    allow_large: Optional[bool] = None,
    settings: Optional[BalancedGamesSettings] = None,
) -> AdjacencyGraph:
    """
    The adjacency graph over `enumerate_vertices(n)`.
    """
    settings = settings if settings is not None else bg_settings
    settings.check_budget('adjacency', n, allow_large)
    vertices = enumerate_vertices(n, allow_large = True, settings = settings)
    edges = [
        (a, b)
        for a in range(len(vertices))
        for b in range(a + 1, len(vertices))
        if are_adjacent(vertices[a], vertices[b], cross_check = False)
    ]
    if settings.debug_enabled:
        logger.info(f"Adjacency graph of BG_+({n}): {len(vertices)} vertices, {len(edges)} edges")
    return AdjacencyGraph(vertices, edges)


def hamiltonian_path(g: AdjacencyGraph, source: int, target: int) -> Optional[List[int]]:
    """
    A path from `source` to `target` visiting every vertex once, by
    backtracking with degree and connectivity pruning.

    Returns
    -------
    list of vertex indices, or None when no such path exists
    """
    order = len(g)
    if not 0 <= source < order or not 0 <= target < order:
        raise InvalidInputError(f"Vertex indices must lie in 0..{order - 1}")
    if order == 1:
        return [source]
    if source == target:
        return None
    adj: Dict[int, Set[int]] = {u: set(g.graph.neighbors(u)) for u in range(order)}
    path = [source]
    unvisited = set(range(order)) - {source}

    def dead_end(current: int) -> bool:
        for u in unvisited:
            degree = len(adj[u] & unvisited) + (current in adj[u])
            if degree < (1 if u == target else 2): return True
        if not nx.is_connected(g.graph.subgraph(unvisited | {current})): return True
        return False

    def visit(current: int) -> bool:
        if not unvisited: return current == target
        if dead_end(current): return False
        steps = sorted(adj[current] & unvisited, key = lambda u: (len(adj[u] & unvisited), u))
        for u in steps:
            if u == target and len(unvisited) > 1: continue
            unvisited.discard(u)
            path.append(u)
            if visit(u): return True
            path.pop()
            unvisited.add(u)
        return False

    if visit(source):
        return path
    if g.n >= 2:
        logger.warning(f"No Hamiltonian path between vertices {source} and {target} of BG_+({g.n})")
    return None


def is_hamilton_connected(g: AdjacencyGraph) -> bool:
    order = len(g)
    return all(
        hamiltonian_path(g, a, b) is not None
        for a in range(order) for b in range(a + 1, order)
    )


class AdjacencyClient:

    def __init__(
        self,
        settings: Optional[BalancedGamesSettings] = None,
    ):
        self.settings = settings if settings is not None else bg_settings

    def are_adjacent(self, D1: VertexCollection, D2: VertexCollection) -> bool:
        return are_adjacent(D1, D2)

    def graph(self, n: int, allow_large: Optional[bool] = None) -> AdjacencyGraph:
        return adjacency_graph(n, allow_large = allow_large, settings = self.settings)

    def hamiltonian_path(self, g: AdjacencyGraph, source: int, target: int) -> Optional[List[int]]:
        self.settings.check_budget('hamilton', g.n)
        return hamiltonian_path(g, source, target)
