import os
from typing import Optional

from lazyops.types import validator, BaseSettings
from balancedgames.types.errors import BudgetExceededError, InvalidInputError

# kind -> (default cap field, opt-in cap field)
BUDGETS = {
    'mbc': ('mbc_max_n', 'mbc_large_n'),
    'vertices': ('vertex_max_n', 'vertex_large_n'),
    'adjacency': ('adjacency_max_n', 'adjacency_large_n'),
    'hamilton': ('hamilton_max_n', 'hamilton_large_n'),
    'core': ('core_max_n', 'core_max_n'),
    'counts': ('counts_max_n', 'counts_large_n'),
}


def _check_threads(value) -> Optional[int]:
    if value is None or value == '': return None
    value = int(value)
    if value < 1:
        raise InvalidInputError(f"Invalid thread count: {value}")
    return value


def _check_max_players(value) -> int:
    if value is None: return 16
    value = int(value)
    if not 1 <= value <= 16:
        raise InvalidInputError(f"max_players must lie in 1..16, got {value}")
    return value


class BalancedGamesSettings(BaseSettings):

    debug_enabled: Optional[bool] = False
    threads: Optional[int] = None
    max_players: Optional[int] = 16
    allow_large: Optional[bool] = False

    # Enumeration Budgets
    mbc_max_n: Optional[int] = 5
    mbc_large_n: Optional[int] = 6
    vertex_max_n: Optional[int] = 4
    vertex_large_n: Optional[int] = 5
    adjacency_max_n: Optional[int] = 3
    adjacency_large_n: Optional[int] = 4
    hamilton_max_n: Optional[int] = 3
    hamilton_large_n: Optional[int] = 4
    core_max_n: Optional[int] = 6
    counts_max_n: Optional[int] = 20
    counts_large_n: Optional[int] = 30

    # Parallelism
    parallel_min_n: Optional[int] = 5

    class Config:
        env_prefix = "BG_"
        case_sensitive = False

    @validator("threads", pre = True, always = True)
    def validate_threads(cls, value: Optional[int]) -> Optional[int]:
        return _check_threads(value)

    @validator("max_players", pre = True, always = True)
    def validate_max_players(cls, value: Optional[int]) -> int:
        return _check_max_players(value)

    @property
    def workers(self) -> int:
        if self.threads is not None: return self.threads
        return os.cpu_count() or 1

    def check_players(self, n: int) -> int:
        """
        Validates a player count against the library-wide cap.
        """
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidInputError(f"Invalid player count: {n!r}")
        if n > self.max_players:
            raise InvalidInputError(f"Player count {n} exceeds the library cap of {self.max_players}")
        return n

    def budget(self, kind: str, allow_large: Optional[bool] = None) -> int:
        allow_large = allow_large if allow_large is not None else self.allow_large
        default_field, large_field = BUDGETS[kind]
        return getattr(self, large_field if allow_large else default_field)

    def check_budget(self, kind: str, n: int, allow_large: Optional[bool] = None) -> int:
        """
        Raises `BudgetExceededError` when `n` is beyond the cap for `kind`.

        :param kind: one of mbc, vertices, adjacency, hamilton, core, counts
        :param n: the player count
        :param allow_large: opt into the larger cap
        """
        self.check_players(n)
        cap = self.budget(kind, allow_large)
        if n > cap:
            hint = '' if (allow_large or self.allow_large) else ' (pass allow_large to raise it)'
            raise BudgetExceededError(f"{kind} for n={n} exceeds the cap n <= {cap}{hint}")
        return n

    def configure(
        self,
        *,
        debug_enabled: Optional[bool] = None,
        threads: Optional[int] = None,
        allow_large: Optional[bool] = None,
        max_players: Optional[int] = None,
        parallel_min_n: Optional[int] = None,
        **kwargs,
    ):
        """
        Configure the global balancedgames settings

        :param debug_enabled: whether to log enumeration progress
        :param threads: the number of worker processes
        :param allow_large: whether to use the larger enumeration caps
        :param max_players: the library-wide player cap
        :param parallel_min_n: the smallest n enumerated with a process pool
        """
        if debug_enabled is not None: self.debug_enabled = debug_enabled
        if threads is not None: self.threads = _check_threads(threads)
        if allow_large is not None: self.allow_large = allow_large
        if max_players is not None: self.max_players = _check_max_players(max_players)
        if parallel_min_n is not None: self.parallel_min_n = parallel_min_n
        for k,v in kwargs.items():
            if v is None: continue
            if hasattr(self, k):
                setattr(self, k, v)


settings = BalancedGamesSettings()
