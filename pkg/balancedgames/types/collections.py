from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

from balancedgames.types.errors import InvalidInputError
from balancedgames.types.games import (
    Coalition,
    Game,
    RationalLike,
    as_coalition,
    check_coalition,
    compact_label,
    grand,
    label,
    members,
)


def intersection(sets: Iterable[Coalition], n: int) -> Coalition:
    """
    The common players of `sets`; the grand coalition for an empty family.
    """
    common = grand(n)
    for s in sets:
        common &= s
    return common


def canonical_key(sets: Iterable[Coalition]) -> Tuple[int, Tuple[int, ...]]:
    """
    Sort key for families: cardinality first, then the sorted bitmasks.
    """
    ordered = tuple(sorted(sets))
    return (len(ordered), ordered)


class BalancedCollection:
    """
    Coalitions with positive weights such that every player's weights sum to 1.
    """

    __slots__ = ('n', 'sets', 'weights')

    def __init__(self, n: int, sets: Sequence[Coalition], weights: Sequence[RationalLike], verify: bool = True):
        sets = tuple(sets)
        weights = tuple(Fraction(w) for w in weights)
        if len(sets) != len(weights):
            raise InvalidInputError("sets and weights must have the same length")
        if verify:
            for s in sets:
                check_coalition(s, n, allow_grand = False)
            if len(set(sets)) != len(sets):
                raise InvalidInputError("Duplicate coalitions in collection")
            if any(w <= 0 for w in weights):
                raise InvalidInputError("Balancing weights must be positive")
            for i in range(n):
                total = sum((w for s, w in zip(sets, weights) if s >> i & 1), Fraction(0))
                if total != 1:
                    raise InvalidInputError(f"Weights of player {i + 1} sum to {total}, not 1")
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'sets', sets)
        object.__setattr__(self, 'weights', weights)

    def __setattr__(self, key, value):
        raise AttributeError("BalancedCollection is immutable")

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(zip(self.sets, self.weights))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BalancedCollection) and other.n == self.n
            and dict(zip(other.sets, other.weights)) == dict(zip(self.sets, self.weights))
        )

    def __hash__(self) -> int:
        return hash((self.n, frozenset(zip(self.sets, self.weights))))

    def __repr__(self) -> str:
        body = ', '.join(f"{compact_label(s, self.n)}:{w}" for s, w in self)
        return f"BalancedCollection({{{body}}})"

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return canonical_key(self.sets)

    @property
    def weight_sum(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def weight(self, mask: Coalition) -> Fraction:
        for s, w in self:
            if s == mask: return w
        return Fraction(0)

    def canonical(self) -> 'BalancedCollection':
        pairs = sorted(zip(self.sets, self.weights))
        return BalancedCollection(self.n, [s for s, _ in pairs], [w for _, w in pairs], verify = False)

    def evaluate(self, v: Game) -> Fraction:
        """
        Sum of weight times worth over the collection.
        """
        return sum((w * v[s] for s, w in self), Fraction(0))

    def slack(self, v: Game) -> Fraction:
        """
        Balancedness slack sum(lambda_S v(S)) - v(N); positive means violated.
        """
        return self.evaluate(v) - v.grand_value

    def is_tight(self, v: Game) -> bool:
        return self.slack(v) == 0

    @property
    def labels(self) -> List[str]:
        return [compact_label(s, self.n) for s in self.sets]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'sets': [label(s) for s in self.sets],
            'weights': [str(w) for w in self.weights],
        }


class VertexCollection:
    """
    A family of proper coalitions identifying the 0-1 vertex d_D of BG_+(n).

    The grand coalition is implicit and never stored. With `strict` the
    vertex condition (empty family or nonempty common intersection) is enforced.
    """

    __slots__ = ('n', 'sets')

    def __init__(self, n: int, sets: Iterable[Coalition], strict: bool = True):
        family = frozenset(sets)
        for s in family:
            check_coalition(s, n, allow_grand = False)
        if strict and family and intersection(family, n) == 0:
            raise InvalidInputError(f"Not a vertex: the members of {sorted(members(s) for s in family)} share no player")
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'sets', family)

    def __setattr__(self, key, value):
        raise AttributeError("VertexCollection is immutable")

    @classmethod
    def parse(
        cls,
        n: int,
        items: Iterable[Union[Coalition, str, Iterable[int]]],
        drop_grand: bool = False,
        strict: bool = True,
    ) -> 'VertexCollection':
        """
        Accepts bitmasks, labels ("1,2" or "12") or player lists.

        :param drop_grand: silently drop the grand coalition instead of rejecting it
        """
        sets = []
        for item in items:
            mask = as_coalition(item, n)
            if mask == grand(n) and drop_grand: continue
            sets.append(mask)
        if len(set(sets)) != len(sets):
            raise InvalidInputError("Duplicate coalitions in collection")
        return cls(n, sets, strict = strict)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, mask: Coalition) -> bool:
        return mask in self.sets

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexCollection) and other.n == self.n and other.sets == self.sets

    def __lt__(self, other: 'VertexCollection') -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return hash((self.n, self.sets))

    def __repr__(self) -> str:
        return f"VertexCollection(n={self.n}, {{{', '.join(compact_label(s, self.n) for s in self.sorted())}}})"

    def sorted(self) -> List[Coalition]:
        return sorted(self.sets)

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return canonical_key(self.sets)

    @property
    def intersection(self) -> Coalition:
        return intersection(self.sets, self.n)

    @property
    def is_vertex(self) -> bool:
        return not self.sets or self.intersection != 0

    def game(self) -> Game:
        """
        The 0-1 game with value 1 exactly on the family and the grand coalition.
        """
        values = [0] * grand(self.n)
        for s in self.sets:
            values[s - 1] = 1
        values[-1] = 1
        return Game(self.n, values)

    def to_lists(self) -> List[List[int]]:
        return [members(s) for s in self.sorted()]

    @property
    def frozen(self) -> FrozenSet[Coalition]:
        return self.sets
