from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from balancedgames.utils.config import BalancedGamesSettings
from balancedgames.utils.config import settings as bg_settings
from balancedgames.types.errors import InvalidInputError
from balancedgames.types.games import (
    Coalition,
    Game,
    RationalLike,
    as_coalition,
    check_coalition,
    coalitions,
    grand,
)
from balancedgames.types.collections import VertexCollection

CoalitionLike = Union[Coalition, Iterable[int], str]


def _players(n: int, settings: Optional[BalancedGamesSettings] = None) -> int:
    settings = settings if settings is not None else bg_settings
    return settings.check_players(n)


def dirac(n: int, S: CoalitionLike, settings: Optional[BalancedGamesSettings] = None) -> Game:
    """
    The Dirac game: 1 on S, 0 elsewhere.
    """
    _players(n, settings)
    S = as_coalition(S, n)
    values = [0] * grand(n)
    values[S - 1] = 1
    return Game(n, values)


def unanimity(n: int, S: CoalitionLike, settings: Optional[BalancedGamesSettings] = None) -> Game:
    """
    The unanimity game: 1 on every superset of S.
    """
    _players(n, settings)
    S = as_coalition(S, n)
    return Game(n, [1 if T & S == S else 0 for T in coalitions(n)])


def zero_game(n: int) -> Game:
    return Game.zero(_players(n))


def additive_game(n: int, x: Sequence[RationalLike]) -> Game:
    """
    v(S) = sum of x_i over S.
    """
    _players(n)
    if len(x) != n:
        raise InvalidInputError(f"Expected {n} individual values, got {len(x)}")
    x = [Fraction(v) for v in x]
    return Game(n, [sum((x[i] for i in range(n) if T >> i & 1), Fraction(0)) for T in coalitions(n)])


def from_collection(n: int, D: Iterable[CoalitionLike], settings: Optional[BalancedGamesSettings] = None) -> Game:
    """
    The 0-1 game d_D with value 1 exactly on D and on N.

    :param D: proper nonempty coalitions; the vertex condition is not required
    """
    _players(n, settings)
    sets = [as_coalition(S, n) for S in D]
    for S in sets:
        check_coalition(S, n, allow_grand = False)
    return VertexCollection(n, sets, strict = False).game()


def is_zero_one(v: Game) -> bool:
    return all(value in (0, 1) for value in v.values)


def is_monotone(v: Game) -> bool:
    n = v.n
    for S in coalitions(n, proper = True):
        for i in range(n):
            bit = 1 << i
            if not S & bit and v[S] > v[S | bit]:
                return False
    return True


def is_simple_proper(v: Game) -> Tuple[bool, bool]:
    """
    Returns (simple, proper).

    simple: 0-1 valued and monotone. proper: no coalition S with
    v(S) = v(N minus S) = 1.
    """
    N = grand(v.n)
    simple = is_zero_one(v) and is_monotone(v)
    proper = not any(v[S] == 1 and v[N ^ S] == 1 for S in coalitions(v.n, proper = True))
    return simple, proper


def winning_coalitions(v: Game) -> list:
    return [S for S, value in v.items() if value == 1]


def veto_players(v: Game) -> Coalition:
    """
    Players common to every winning coalition of a 0-1 game.
    """
    if not is_zero_one(v):
        raise InvalidInputError("Veto players are defined for 0-1 games")
    common = grand(v.n)
    for S in winning_coalitions(v):
        common &= S
    return common


def normalize(v: Game) -> Game:
    """
    Scales a nonnegative game with v(N) > 0 so that v(N) = 1.
    """
    if any(value < 0 for value in v.values):
        raise InvalidInputError("normalize expects a nonnegative game")
    if v.grand_value <= 0:
        raise InvalidInputError("normalize expects v(N) > 0")
    return v / v.grand_value


class GamesClient:
    """
    Constructors for the canonical games.
    """

    def __init__(
        self,
        settings: Optional[BalancedGamesSettings] = None,
    ):
        self.settings = settings if settings is not None else bg_settings

    def dirac(self, n: int, S: CoalitionLike) -> Game:
        return dirac(n, S, settings = self.settings)

    def unanimity(self, n: int, S: CoalitionLike) -> Game:
        return unanimity(n, S, settings = self.settings)

    def from_collection(self, n: int, D: Iterable[CoalitionLike]) -> Game:
        return from_collection(n, D, settings = self.settings)

    def is_simple_proper(self, v: Game) -> Tuple[bool, bool]:
        return is_simple_proper(v)

    def veto_players(self, v: Game) -> Coalition:
        return veto_players(v)

    def load(self, text: str) -> Game:
        """
        Parses a game from its JSON form.
        """
        return Game.from_json(text, max_players = self.settings.max_players)
