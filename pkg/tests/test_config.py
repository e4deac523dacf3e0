import pytest

from balancedgames import BudgetExceededError, InvalidInputError
from balancedgames.utils.config import BalancedGamesSettings


def test_defaults():
    settings = BalancedGamesSettings()
    assert settings.mbc_max_n == 5
    assert settings.vertex_max_n == 4
    assert settings.counts_max_n == 20


def test_environment(monkeypatch):
    monkeypatch.setenv('BG_MBC_MAX_N', '4')
    monkeypatch.setenv('BG_THREADS', '2')
    settings = BalancedGamesSettings()
    assert settings.mbc_max_n == 4
    assert settings.workers == 2


def test_budgets():
    settings = BalancedGamesSettings()
    assert settings.check_budget('vertices', 4) == 4
    with pytest.raises(BudgetExceededError):
        settings.check_budget('vertices', 5)
    assert settings.check_budget('vertices', 5, allow_large = True) == 5
    settings.configure(allow_large = True)
    assert settings.budget('mbc') == 6
    with pytest.raises(InvalidInputError):
        settings.check_players(17)
    with pytest.raises(InvalidInputError):
        settings.check_players(0)


def test_configure():
    settings = BalancedGamesSettings()
    settings.configure(debug_enabled = True, hamilton_max_n = 4, unknown = 1)
    assert settings.debug_enabled
    assert settings.hamilton_max_n == 4
    assert not hasattr(settings, 'unknown')
    with pytest.raises(InvalidInputError):
        settings.configure(threads = 0)
    with pytest.raises(InvalidInputError):
        settings.configure(max_players = 20)
