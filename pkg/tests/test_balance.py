import random
from fractions import Fraction

import pytest

from client import BalancedGames
from balancedgames import Allocation, ConsistencyError, Game
from balancedgames.schemas import balance
from balancedgames.types.models import BalancednessVerdict
from balancedgames.types.games import grand
from balancedgames.schemas.balance import is_balanced, is_balanced_lp, is_balanced_mbc, subset_sums
from balancedgames.schemas.games import dirac, normalize, unanimity
from balancedgames.schemas.mbc import enumerate_mbc
from balancedgames.schemas.polytope import enumerate_vertices


def _random_game(rng: random.Random, n: int) -> Game:
    return Game(n, [Fraction(rng.randint(-2, 6), rng.randint(1, 3)) for _ in range(grand(n))])


def _unit_value(rng: random.Random) -> Fraction:
    k = rng.randint(1, 4)
    return Fraction(rng.randint(-k, k), k)


def test_subset_sums():
    sums = subset_sums([Fraction(1), Fraction(2), Fraction(4)])
    assert sums == list(range(8))


def test_first_violation_in_canonical_order():
    v = Game.from_mapping(3, {3: 1, 5: 1, 6: 1, 7: 1}, default = 0)
    verdict = is_balanced_mbc(v)
    assert not verdict.balanced
    assert set(verdict.violation.sets) == {3, 5, 6}
    assert verdict.slack == Fraction(1, 2)


def test_unanimity_witness():
    verdict = is_balanced(unanimity(3, '1'))
    assert verdict.balanced
    assert verdict.witness == Allocation([1, 0, 0])

    verdict = is_balanced_lp(Game.zero(3))
    assert verdict.balanced
    assert verdict.witness == Allocation([0, 0, 0])


def test_dirac_is_not_balanced():
    v = dirac(3, '12')
    assert not is_balanced_mbc(v).balanced
    verdict = is_balanced_lp(v)
    assert not verdict.balanced
    assert verdict.slack > 0
    assert verdict.violation in set(enumerate_mbc(3))
    assert verdict.violation.slack(v) == verdict.slack


def test_lp_route_beyond_the_enumeration_cap():
    assert is_balanced(unanimity(6, '12')).balanced
    verdict = is_balanced(dirac(6, '123'))
    assert not verdict.balanced
    assert verdict.slack == verdict.violation.slack(dirac(6, '123'))


def test_routes_agree_on_vertices():
    for D in enumerate_vertices(4):
        v = D.game()
        assert is_balanced_mbc(v).balanced
        verdict = is_balanced_lp(v)
        assert verdict.balanced
        assert verdict.witness.in_core(v)


def test_routes_agree_on_random_games():
    rng = random.Random(2024)
    for n in (3, 4):
        for _ in range(150):
            v = _random_game(rng, n)
            by_mbc = is_balanced_mbc(v)
            by_lp = is_balanced_lp(v)
            assert by_mbc.balanced == by_lp.balanced
            if by_lp.balanced:
                assert by_lp.witness.in_core(v)
                assert by_mbc.witness.in_core(v)
            else:
                assert by_mbc.slack > 0 and by_lp.slack > 0


def test_routes_agree_on_unit_range_games():
    rng = random.Random(11)
    for _ in range(1000):
        v = Game(4, [_unit_value(rng) for _ in range(15)])
        by_mbc = is_balanced_mbc(v)
        by_lp = is_balanced_lp(v)
        assert by_mbc.balanced == by_lp.balanced
        if by_lp.balanced:
            assert by_lp.witness.in_core(v)
        else:
            assert by_lp.violation.slack(v) == by_lp.slack > 0


def test_disagreeing_routes_raise(monkeypatch):
    monkeypatch.setattr(balance, 'is_balanced_lp', lambda v: BalancednessVerdict(balanced = False))
    with pytest.raises(ConsistencyError):
        balance.is_balanced_mbc(unanimity(3, '1'))


def test_scale_covariance():
    rng = random.Random(3)
    for _ in range(30):
        v = Game(3, [Fraction(rng.randint(0, 4), 3) for _ in range(7)]).with_value(7, rng.randint(1, 3))
        balanced = is_balanced(v).balanced
        assert is_balanced(v * 5).balanced == balanced
        assert is_balanced(normalize(v)).balanced == balanced


def test_client_routes():
    v = dirac(3, '12')
    assert not BalancedGames.is_balanced(v).balanced
    assert BalancedGames.balance.slack(v, BalancedGames.mbc.special_partitions(3)[1]) >= 0
    assert BalancedGames.balance.is_balanced_lp(v).to_dict()['balanced'] is False
