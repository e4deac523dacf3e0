import asyncio
import functools

from balancedgames.schemas import *
from balancedgames.utils.config import BalancedGamesSettings
from balancedgames.utils.config import settings as bg_settings
from balancedgames.types.games import Game
from balancedgames.types.collections import BalancedCollection, VertexCollection
from balancedgames.types.models import (
    AdjacencyGraph,
    BalancednessVerdict,
    CoreDescription,
    CountTable,
)
from typing import Any, Callable, List, Optional


class BalancedGamesClient:

    def __init__(
        self,
        settings: Optional[BalancedGamesSettings] = None,
    ):
        """
        The Balanced Games Client
        """
        self.settings = settings if settings is not None else bg_settings

        self.games: GamesClient = GamesClient(settings = self.settings)
        self.mbc: MBCClient = MBCClient(settings = self.settings)
        self.balance: BalanceClient = BalanceClient(settings = self.settings)
        self.core: CoreClient = CoreClient(settings = self.settings)
        self.cones: ConesClient = ConesClient(settings = self.settings)
        self.polytope: PolytopeClient = PolytopeClient(settings = self.settings)
        self.sampler: SamplerClient = SamplerClient(settings = self.settings)
        self.adjacency: AdjacencyClient = AdjacencyClient(settings = self.settings)

    def enumerate_mbc(self, n: int, allow_large: Optional[bool] = None) -> List[BalancedCollection]:
        return self.mbc.enumerate(n, allow_large = allow_large)

    def is_balanced(self, v: Game) -> BalancednessVerdict:
        return self.balance.is_balanced(v)

    def core_vertices(self, v: Game) -> CoreDescription:
        return self.core.vertices(v)

    def vertices(self, n: int, allow_large: Optional[bool] = None) -> List[VertexCollection]:
        return self.polytope.vertices(n, allow_large = allow_large)

    def counts(self, n: int, allow_large: Optional[bool] = None) -> CountTable:
        return self.polytope.counts(n, allow_large = allow_large)

    def adjacency_graph(self, n: int, allow_large: Optional[bool] = None) -> AdjacencyGraph:
        return self.adjacency.graph(n, allow_large = allow_large)


class BalancedGamesAPI:
    settings: Optional[BalancedGamesSettings] = bg_settings
    _api: Optional[BalancedGamesClient] = None

    """
    The Global Class for the Balanced Games API.
    """

    def configure(
        self,
        debug_enabled: Optional[bool] = None,
        threads: Optional[int] = None,
        allow_large: Optional[bool] = None,
        max_players: Optional[int] = None,
        parallel_min_n: Optional[int] = None,
        reset: Optional[bool] = None,
        **kwargs
    ):
        """
        Configure the global Balanced Games client.

        :param debug_enabled: whether to log enumeration progress
        :param threads: the number of worker processes for enumeration
        :param allow_large: whether to use the larger enumeration caps
        :param max_players: the library-wide player cap
        :param parallel_min_n: the smallest n enumerated with a process pool
        :param reset: rebuild the client
        """
        self.settings.configure(
            debug_enabled = debug_enabled,
            threads = threads,
            allow_large = allow_large,
            max_players = max_players,
            parallel_min_n = parallel_min_n,
            **kwargs
        )
        if reset: self._api = None
        if self._api is None:
            self.get_api()

    def get_api(self) -> BalancedGamesClient:
        if self._api is None:
            self._api = BalancedGamesClient(settings = self.settings)
        return self._api

    @property
    def api(self) -> BalancedGamesClient:
        """
        Returns the inherited Balanced Games client.
        """
        if self._api is None:
            self.configure()
        return self._api

    @property
    def games(self) -> GamesClient:
        return self.api.games

    @property
    def mbc(self) -> MBCClient:
        return self.api.mbc

    @property
    def balance(self) -> BalanceClient:
        return self.api.balance

    @property
    def core(self) -> CoreClient:
        return self.api.core

    @property
    def cones(self) -> ConesClient:
        return self.api.cones

    @property
    def polytope(self) -> PolytopeClient:
        return self.api.polytope

    @property
    def sampler(self) -> SamplerClient:
        return self.api.sampler

    @property
    def adjacency(self) -> AdjacencyClient:
        return self.api.adjacency

    """
    Subclassing
    """

    def enumerate_mbc(self, n: int, allow_large: Optional[bool] = None) -> List[BalancedCollection]:
        return self.api.enumerate_mbc(n, allow_large = allow_large)

    def is_balanced(self, v: Game) -> BalancednessVerdict:
        return self.api.is_balanced(v)

    def vertices(self, n: int, allow_large: Optional[bool] = None) -> List[VertexCollection]:
        return self.api.vertices(n, allow_large = allow_large)

    def counts(self, n: int, allow_large: Optional[bool] = None) -> CountTable:
        return self.api.counts(n, allow_large = allow_large)

    def adjacency_graph(self, n: int, allow_large: Optional[bool] = None) -> AdjacencyGraph:
        return self.api.adjacency_graph(n, allow_large = allow_large)

    """
    Async
    """

    async def _run(self, func: Callable, *args, **kwargs) -> Any:
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(None, functools.partial(func, *args, **kwargs))

    async def async_enumerate_mbc(self, n: int, allow_large: Optional[bool] = None) -> List[BalancedCollection]:
        """
        [Async] Enumerates the minimal balanced collections in the default executor.
        """
        return await self._run(self.enumerate_mbc, n, allow_large = allow_large)

    async def async_is_balanced(self, v: Game) -> BalancednessVerdict:
        return await self._run(self.is_balanced, v)

    async def async_vertices(self, n: int, allow_large: Optional[bool] = None) -> List[VertexCollection]:
        return await self._run(self.vertices, n, allow_large = allow_large)

    async def async_adjacency_graph(self, n: int, allow_large: Optional[bool] = None) -> AdjacencyGraph:
        return await self._run(self.adjacency_graph, n, allow_large = allow_large)


BalancedGames: BalancedGamesAPI = BalancedGamesAPI()
