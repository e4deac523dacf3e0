"""
Coalitions, games and allocations.

A coalition is an `int` bitmask: player i is bit i-1. Coalitions are ordered
by ascending bitmask everywhere, which is also the storage order of game
values (mask 1 first, the grand coalition last).
"""

import json
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from balancedgames.types.errors import InvalidInputError

Coalition = int
RationalLike = Union[Fraction, int, str]


"""
Coalition helpers
"""

def grand(n: int) -> Coalition:
    return (1 << n) - 1


def coalition(players: Iterable[int], n: Optional[int] = None) -> Coalition:
    """
    Builds a bitmask from 1-based player labels.

    :param players: the players, e.g. (1, 2)
    :param n: when given, labels must lie in 1..n
    """
    mask = 0
    for p in players:
        if not isinstance(p, int) or p < 1 or (n is not None and p > n):
            raise InvalidInputError(f"Invalid player {p!r}" + (f" for n={n}" if n is not None else ""))
        mask |= 1 << (p - 1)
    return mask


def members(mask: Coalition) -> List[int]:
    out, i = [], 1
    while mask:
        if mask & 1: out.append(i)
        mask >>= 1
        i += 1
    return out


def size(mask: Coalition) -> int:
    return bin(mask).count('1')


def coalitions(n: int, proper: bool = False) -> range:
    """
    All nonempty coalitions in canonical order; `proper` drops the grand coalition.
    """
    return range(1, grand(n) if proper else grand(n) + 1)


def contains(mask: Coalition, player: int) -> bool:
    return bool(mask >> (player - 1) & 1)


def check_coalition(mask: Coalition, n: int, allow_grand: bool = True) -> Coalition:
    if not isinstance(mask, int) or isinstance(mask, bool):
        raise InvalidInputError(f"Coalition must be a bitmask, got {mask!r}")
    if mask <= 0:
        raise InvalidInputError("The empty coalition is not allowed here")
    if mask > grand(n):
        raise InvalidInputError(f"Coalition {members(mask)} is not a subset of 1..{n}")
    if not allow_grand and mask == grand(n):
        raise InvalidInputError("The grand coalition is not allowed here")
    return mask


def as_coalition(value: Union[Coalition, Iterable[int], str], n: int) -> Coalition:
    """
    Accepts a bitmask, an iterable of players or a label such as "1,2" or "12".
    """
    if isinstance(value, int) and not isinstance(value, bool):
        return check_coalition(value, n)
    if isinstance(value, str):
        return check_coalition(parse_coalition(value, n), n)
    return check_coalition(coalition(value, n), n)


def label(mask: Coalition, sep: str = ',') -> str:
    """
    "1,2,3" by default; compact "123" with `sep=''` (only unambiguous for n <= 9).
    """
    return sep.join(str(p) for p in members(mask))


def compact_label(mask: Coalition, n: int) -> str:
    return label(mask, '') if n <= 9 else '{' + label(mask) + '}'


def parse_coalition(text: str, n: int) -> Coalition:
    text = text.strip().strip('{}')
    if not text:
        raise InvalidInputError("Empty coalition label")
    try:
        if ',' in text or n > 9:
            players = [int(p) for p in text.split(',')]
        else:
            players = [int(p) for p in text]
    except ValueError as e:
        raise InvalidInputError(f"Invalid coalition label {text!r}") from e
    if len(set(players)) != len(players):
        raise InvalidInputError(f"Repeated player in coalition label {text!r}")
    return coalition(players, n)


def parse_rational(value: Any) -> Fraction:
    """
    Parses "p/q" or integer strings (ints are accepted too); decimals are rejected.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInputError(f"Value {value!r} must be a rational string")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str) or any(c in value for c in '.eE'):
        raise InvalidInputError(f"Value {value!r} must be a decimal-free rational string")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"Invalid rational {value!r}") from e


class Game:
    """
    A TU-game on players 1..n with exact rational values on every nonempty
    coalition. v(empty) = 0 is implicit. Instances are immutable.
    """

    __slots__ = ('n', 'values')

    def __init__(self, n: int, values: Sequence[RationalLike]):
        if len(values) != grand(n):
            raise InvalidInputError(f"A game on {n} players needs {grand(n)} values, got {len(values)}")
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'values', tuple(Fraction(x) for x in values))

    def __setattr__(self, key, value):
        raise AttributeError("Game is immutable")

    @classmethod
    def from_mapping(cls, n: int, mapping: Dict[Coalition, RationalLike], default: Optional[RationalLike] = None) -> 'Game':
        """
        Builds a game from {bitmask: value}; missing coalitions take `default`
        or raise when no default is given.
        """
        values = []
        for mask in coalitions(n):
            if mask in mapping:
                values.append(mapping[mask])
            elif default is not None:
                values.append(default)
            else:
                raise InvalidInputError(f"Missing value for coalition {label(mask)}")
        extra = [m for m in mapping if not isinstance(m, int) or m <= 0 or m > grand(n)]
        if extra:
            raise InvalidInputError(f"Invalid coalitions for n={n}: {extra}")
        return cls(n, values)

    @classmethod
    def zero(cls, n: int) -> 'Game':
        return cls(n, [0] * grand(n))

    def __getitem__(self, mask: Coalition) -> Fraction:
        if mask == 0: return Fraction(0)
        return self.values[mask - 1]

    def __call__(self, mask: Coalition) -> Fraction:
        return self[mask]

    @property
    def grand_value(self) -> Fraction:
        return self.values[-1]

    def items(self) -> Iterator[Tuple[Coalition, Fraction]]:
        return zip(coalitions(self.n), self.values)

    def vector(self, include_grand: bool = True) -> List[Fraction]:
        return list(self.values if include_grand else self.values[:-1])

    def with_value(self, mask: Coalition, value: RationalLike) -> 'Game':
        values = list(self.values)
        values[mask - 1] = Fraction(value)
        return Game(self.n, values)

    def _check(self, other: 'Game') -> None:
        if not isinstance(other, Game) or other.n != self.n:
            raise InvalidInputError("Games must share the same player count")

    def __add__(self, other: 'Game') -> 'Game':
        self._check(other)
        return Game(self.n, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: 'Game') -> 'Game':
        self._check(other)
        return Game(self.n, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, scalar: RationalLike) -> 'Game':
        scalar = Fraction(scalar)
        return Game(self.n, [scalar * a for a in self.values])

    __rmul__ = __mul__

    def __truediv__(self, scalar: RationalLike) -> 'Game':
        return self * (1 / Fraction(scalar))

    def __neg__(self) -> 'Game':
        return self * -1

    def __eq__(self, other) -> bool:
        return isinstance(other, Game) and other.n == self.n and other.values == self.values

    def __hash__(self) -> int:
        return hash((self.n, self.values))

    def __repr__(self) -> str:
        body = ', '.join(f"{compact_label(m, self.n)}: {v}" for m, v in self.items() if v != 0)
        return f"Game(n={self.n}, {{{body}}})"

    def support(self) -> List[Coalition]:
        return [m for m, v in self.items() if v != 0]

    """
    JSON codec
    """

    def to_dict(self) -> Dict[str, Any]:
        return {'n': self.n, 'v': {label(m): str(v) for m, v in self.items()}}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], max_players: int = 16) -> 'Game':
        if not isinstance(data, dict) or 'n' not in data or 'v' not in data:
            raise InvalidInputError("A game needs the keys 'n' and 'v'")
        n = data['n']
        if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= max_players:
            raise InvalidInputError(f"Invalid player count: {n!r}")
        if not isinstance(data['v'], dict):
            raise InvalidInputError("'v' must map coalition labels to values")
        mapping: Dict[Coalition, Fraction] = {}
        for key, value in data['v'].items():
            players = [p.strip() for p in str(key).split(',')]
            try:
                mask = coalition([int(p) for p in players], n)
            except ValueError as e:
                raise InvalidInputError(f"Invalid coalition key {key!r}") from e
            if mask == 0 or len(set(players)) != len(players):
                raise InvalidInputError(f"Invalid coalition key {key!r}")
            if mask in mapping:
                raise InvalidInputError(f"Duplicate coalition key {key!r}")
            mapping[mask] = parse_rational(value)
        return cls.from_mapping(n, mapping)

    @classmethod
    def from_json(cls, text: str, max_players: int = 16) -> 'Game':
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidInputError(f"Malformed game JSON: {e}") from e
        return cls.from_dict(data, max_players = max_players)


class Allocation:
    """
    A payoff vector x = (x_1, ..., x_n); x(S) is the sum over S.
    """

    __slots__ = ('x',)

    def __init__(self, x: Sequence[RationalLike]):
        object.__setattr__(self, 'x', tuple(Fraction(v) for v in x))

    def __setattr__(self, key, value):
        raise AttributeError("Allocation is immutable")

    @classmethod
    def unit(cls, n: int, player: int) -> 'Allocation':
        return cls([1 if i == player else 0 for i in range(1, n + 1)])

    @property
    def n(self) -> int:
        return len(self.x)

    def __call__(self, mask: Coalition) -> Fraction:
        return sum((self.x[p - 1] for p in members(mask)), Fraction(0))

    def __getitem__(self, player: int) -> Fraction:
        return self.x[player - 1]

    def __iter__(self):
        return iter(self.x)

    def __len__(self) -> int:
        return len(self.x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Allocation) and other.x == self.x

    def __lt__(self, other: 'Allocation') -> bool:
        return self.x < other.x

    def __hash__(self) -> int:
        return hash(self.x)

    def __repr__(self) -> str:
        return f"Allocation({', '.join(str(v) for v in self.x)})"

    def to_list(self) -> List[str]:
        return [str(v) for v in self.x]

    def in_core(self, v: Game) -> bool:
        """
        x(S) >= v(S) for every coalition and x(N) = v(N).
        """
        if self.n != v.n: return False
        if self(grand(v.n)) != v.grand_value: return False
        return all(self(m) >= value for m, value in v.items())
