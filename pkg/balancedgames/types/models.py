"""
Typed result models.
"""

from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel

from balancedgames.types.collections import BalancedCollection, VertexCollection
from balancedgames.types.games import Allocation, Coalition, Game, compact_label, label


class Ambient(str, Enum):
    bg = 'bg'
    bga = 'bga'


class RayKind(str, Enum):
    lineality_pos = 'lineality+'
    lineality_neg = 'lineality-'
    r_S = 'r_S'
    r_i = 'r_i'


class WeightStatus(str, Enum):
    minimal = 'minimal'
    not_minimal = 'not_minimal'
    not_balanced = 'not_balanced'


class _Model(BaseModel):

    class Config:
        arbitrary_types_allowed = True


class WeightVerdict(_Model):
    """
    Outcome of solving the balancing system for a list of coalitions.

    `collection` carries the unique weights for a minimal collection and one
    positive weight vector when the collection is balanced but not minimal.
    """
    status: WeightStatus
    collection: Optional[BalancedCollection] = None

    @property
    def is_minimal(self) -> bool:
        return self.status == WeightStatus.minimal

    @property
    def is_balanced(self) -> bool:
        return self.status != WeightStatus.not_balanced


class BalancednessVerdict(_Model):
    balanced: bool
    witness: Optional[Allocation] = None
    violation: Optional[BalancedCollection] = None
    slack: Optional[Fraction] = None

    def to_dict(self) -> Dict[str, Any]:
        if self.balanced:
            return {'balanced': True, 'witness': self.witness.to_list()}
        return {'balanced': False, 'violation': self.violation.to_dict(), 'slack': str(self.slack)}


class CoreDescription(_Model):
    vertices: List[Allocation]
    dimension: int
    effective: List[Coalition]

    @property
    def is_empty(self) -> bool:
        return self.dimension < 0

    @property
    def point_core(self) -> bool:
        return self.dimension == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'vertices': [x.to_list() for x in self.vertices],
            'dimension': self.dimension,
            'effective': [label(s) for s in self.effective],
            'point_core': self.point_core,
        }


class EdgeCoreReport(_Model):
    game: Game
    dimension: int
    point_core: bool
    point: Optional[Allocation] = None
    predicted: Optional[bool] = None

    @property
    def agrees(self) -> bool:
        return self.predicted is None or self.predicted == self.point_core


class Ray(_Model):
    """
    An extremal ray of BG(n) or BG_alpha(n).

    `index` is the coalition S for r_S, and the singleton {i} for w_i, -w_i and r_i.
    For BG_alpha(n) the direction carries a zero grand-coalition coordinate.
    """
    kind: RayKind
    index: Coalition
    direction: Game
    ambient: Ambient = Ambient.bg

    @property
    def n(self) -> int:
        return self.direction.n

    @property
    def name(self) -> str:
        tag = compact_label(self.index, self.n)
        if self.kind == RayKind.lineality_pos: return f"w_{tag}"
        if self.kind == RayKind.lineality_neg: return f"-w_{tag}"
        if self.kind == RayKind.r_S: return f"-delta_{tag}"
        return f"r_{tag}"

    @property
    def is_lineality(self) -> bool:
        return self.kind in {RayKind.lineality_pos, RayKind.lineality_neg}

    def coordinates(self) -> List[Fraction]:
        return self.direction.vector(include_grand = self.ambient == Ambient.bg)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'kind': self.kind.value,
            'index': label(self.index),
            'direction': {label(m): str(v) for m, v in self.direction.items() if v != 0},
        }


class FacetKind(str, Enum):
    nonnegativity = 'nonnegativity'
    balancedness = 'balancedness'


class Facet(_Model):
    """
    A facet of BG_+(n): v(S) >= 0, or sum(lambda_S v(S)) <= 1 for a minimal balanced collection.
    """
    kind: FacetKind
    coalition: Optional[Coalition] = None
    collection: Optional[BalancedCollection] = None

    def value(self, v: Game) -> Fraction:
        """
        The left-hand side at `v`.
        """
        if self.kind == FacetKind.nonnegativity:
            return v[self.coalition]
        return self.collection.evaluate(v)

    def is_tight(self, v: Game) -> bool:
        if self.kind == FacetKind.nonnegativity:
            return v[self.coalition] == 0
        return self.collection.evaluate(v) == 1

    def describe(self, n: int) -> str:
        if self.kind == FacetKind.nonnegativity:
            return f"v({compact_label(self.coalition, n)}) >= 0"
        terms = ' + '.join(f"{w}*v({compact_label(s, n)})" for s, w in self.collection)
        return f"{terms} <= 1"


class CountTable(_Model):
    n: int
    t: List[int]
    s: List[int]
    f: List[int]
    b: List[int]

    def row(self, k: int) -> Dict[str, int]:
        i = k - 1
        return {'t': self.t[i], 's': self.s[i], 'f': self.f[i], 'b': self.b[i]}

    def lines(self) -> List[str]:
        out = []
        for k in range(1, self.n + 1):
            for name, value in self.row(k).items():
                out.append(f"{name}_{k} = {value}")
        return out


class SamplerProbabilities(_Model):
    """
    Branch probabilities of the uniform vertex sampler.

    p1[k-1] is the probability of choosing |S| = k, and p2[k-1] is the
    probability of the S-in-D branch once |S| = k (that is p2(n-k)).
    """
    n: int
    p0: Fraction
    p1: List[Fraction]
    p2: List[Fraction]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'p0': str(self.p0),
            'p1': {str(k): str(p) for k, p in enumerate(self.p1, 1)},
            'p2': {str(k): str(p) for k, p in enumerate(self.p2, 1)},
        }


class AdjacencyGraph:
    """
    The adjacency graph of BG_+(n) over vertices in canonical order.

    Nodes are vertex indices; `graph` is the underlying `networkx.Graph`.
    """

    def __init__(self, vertices: List[VertexCollection], edges: List[Tuple[int, int]]):
        self.vertices = list(vertices)
        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(len(self.vertices)))
        self.graph.add_edges_from(edges)

    @property
    def n(self) -> int:
        return self.vertices[0].n

    @property
    def edges(self) -> set:
        return {tuple(sorted(e)) for e in self.graph.edges()}

    def neighbors(self, index: int) -> List[int]:
        return sorted(self.graph.neighbors(index))

    def index(self, vertex: VertexCollection) -> int:
        return self.vertices.index(vertex)

    def __len__(self) -> int:
        return len(self.vertices)


class ConicDecomposition(_Model):
    """
    v = sum(beta_i w_i) + sum(alpha_r r) with free beta and alpha >= 0.

    For BG_alpha(n) the decomposition is of the translated game v - alpha u_n.
    """
    ambient: Ambient
    lineality: List[Tuple[Ray, Fraction]]
    rays: List[Tuple[Ray, Fraction]]

    def combine(self) -> Game:
        terms = self.lineality + self.rays
        total = Game.zero(terms[0][0].n)
        for ray, coefficient in terms:
            if coefficient != 0:
                total = total + coefficient * ray.direction
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {
            'ambient': self.ambient.value,
            'lineality': {r.name: str(c) for r, c in self.lineality},
            'rays': {r.name: str(c) for r, c in self.rays if c != 0},
        }
