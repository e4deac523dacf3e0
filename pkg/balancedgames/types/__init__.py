from __future__ import absolute_import

from balancedgames.types.errors import (
    BalancedGamesException,
    InvalidInputError,
    BudgetExceededError,
    NotBalancedError,
    NotAdjacentError,
    InfeasibleError,
    ConsistencyError,
)
from balancedgames.types.games import (
    Coalition,
    Game,
    Allocation,
    coalition,
    coalitions,
    members,
    grand,
    label,
    compact_label,
)
from balancedgames.types.collections import BalancedCollection, VertexCollection
from balancedgames.types.models import (
    Ambient,
    RayKind,
    WeightStatus,
    WeightVerdict,
    BalancednessVerdict,
    CoreDescription,
    EdgeCoreReport,
    Ray,
    Facet,
    FacetKind,
    CountTable,
    SamplerProbabilities,
    AdjacencyGraph,
    ConicDecomposition,
)
