
class BalancedGamesException(Exception):
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class InvalidInputError(BalancedGamesException, ValueError):
    """
    Malformed coalitions, games, collections or JSON payloads.
    """
    pass


class BudgetExceededError(BalancedGamesException):
    """
    An enumeration was requested beyond its configured cap.
    """
    pass


class NotBalancedError(BalancedGamesException):
    pass


class NotAdjacentError(BalancedGamesException):
    pass


class InfeasibleError(BalancedGamesException):
    """
    A ray or game lies outside the ambient cone, or a chain is not monotone.
    """
    pass


class ConsistencyError(BalancedGamesException):
    """
    Two independent routes to the same answer disagree.
    """
    pass
