from balancedgames import BalancedGames

BalancedGames.configure(
    debug_enabled = False,
    threads = 1,
)
