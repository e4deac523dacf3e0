from fractions import Fraction

import pytest

from client import BalancedGames
from balancedgames import Allocation, Game, InvalidInputError, VertexCollection, coalition
from balancedgames.types.games import grand, label, members, parse_coalition, parse_rational
from balancedgames.schemas.games import (
    additive_game,
    dirac,
    from_collection,
    is_simple_proper,
    normalize,
    unanimity,
    veto_players,
)


def test_coalition_bitmasks():
    assert coalition([1, 2]) == 3
    assert coalition([3], 3) == 4
    assert members(5) == [1, 3]
    assert grand(4) == 15
    assert label(7) == '1,2,3'
    assert parse_coalition('23', 3) == 6
    assert parse_coalition('{1,3}', 3) == 5
    with pytest.raises(InvalidInputError):
        coalition([4], 3)
    with pytest.raises(InvalidInputError):
        parse_coalition('11', 3)


def test_canonical_games():
    assert dirac(3, '12').support() == [3]
    assert unanimity(3, [1]).support() == [1, 3, 5, 7]
    assert unanimity(3, '123').support() == [7]
    d = from_collection(3, ['12', '13'])
    assert d.support() == [3, 5, 7]
    assert d == VertexCollection(3, [3, 5]).game()
    with pytest.raises(InvalidInputError):
        from_collection(3, ['123'])


def test_game_arithmetic():
    u = unanimity(3, '1')
    w = u + u - dirac(3, '1')
    assert w[1] == 1 and w[3] == 2 and w[7] == 2
    assert (u / 2)[7] == Fraction(1, 2)
    assert -u == u * -1
    assert normalize(3 * u) == u
    with pytest.raises(InvalidInputError):
        normalize(Game.zero(3))
    with pytest.raises(AttributeError):
        u.n = 4


def test_simple_games():
    assert is_simple_proper(from_collection(3, ['1'])) == (False, True)
    assert is_simple_proper(unanimity(3, '12')) == (True, True)
    assert is_simple_proper(from_collection(3, ['1', '23'])) == (False, False)
    assert veto_players(from_collection(3, ['12', '13'])) == 1
    assert veto_players(unanimity(4, '23')) == 6
    with pytest.raises(InvalidInputError):
        veto_players(Game.zero(3).with_value(1, Fraction(1, 2)))


def test_allocation_core_membership():
    v = additive_game(3, [1, 2, 3])
    assert Allocation([1, 2, 3]).in_core(v)
    assert not Allocation([0, 3, 3]).in_core(v)
    assert Allocation.unit(3, 2) == Allocation([0, 1, 0])
    assert Allocation([1, 2, 3])(6) == 5


def test_json_codec():
    text = '{"n": 3, "v": {"1": "0", "2": "0", "3": "0", "1,2": "1", "1,3": "0", "2,3": "0", "1,2,3": "1/3"}}'
    v = Game.from_json(text)
    assert v[3] == 1
    assert v.grand_value == Fraction(1, 3)
    assert Game.from_dict(v.to_dict()) == v
    assert BalancedGames.games.load(text) == v


@pytest.mark.parametrize('text', [
    '{"n": 3}',
    '{"n": 2, "v": {"1": "0", "2": "0"}}',
    '{"n": 2, "v": {"1": "0", "2": "0", "1,2": 0.5}}',
    '{"n": 2, "v": {"1": "0", "2": "0", "1,2": "1", "2,1": "1"}}',
    '{"n": 2, "v": {"1": "0", "2": "0", "1,2": "1", "3": "1"}}',
    '{"n": 17, "v": {}}',
    '{"n": 2, "v": {"1": "0", "2": "0", "1,2": "1"',
])
def test_json_rejects_malformed(text):
    with pytest.raises(InvalidInputError):
        Game.from_json(text)


def test_parse_rational():
    assert parse_rational('1/3') == Fraction(1, 3)
    assert parse_rational(' -2 ') == -2
    for bad in ('0.5', '1e3', 0.5, True, 'x'):
        with pytest.raises(InvalidInputError):
            parse_rational(bad)
