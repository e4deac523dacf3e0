from __future__ import absolute_import


from balancedgames.schemas.games import GamesClient
from balancedgames.schemas.mbc import MBCClient
from balancedgames.schemas.balance import BalanceClient
from balancedgames.schemas.core import CoreClient
from balancedgames.schemas.cones import ConesClient
from balancedgames.schemas.polytope import PolytopeClient
from balancedgames.schemas.sampler import SamplerClient
from balancedgames.schemas.adjacency import AdjacencyClient
