"""Exception types raised across the library."""


class AdjmechError(Exception):
    """Base class for all adjmech errors."""


class InvalidCost(AdjmechError):
    """Adjustment cost is negative."""


class WrongProfileKind(AdjmechError):
    """Operation expected an initial (not yet adjusted) valuation profile."""


class EmptyProfile(AdjmechError):
    """Valuation profile holds no agents."""


class BadIndex(AdjmechError):
    """Agent index outside the profile."""


class UnsupportedDistribution(AdjmechError):
    """Distribution family (or support) outside what the closed forms cover."""


class DegenerateOpponent(AdjmechError):
    """Opponent bids zero for every type; win probability is undefined."""


class InvalidStrategy(AdjmechError):
    """Piecewise bid strategy violates monotonicity or support requirements."""


class InsufficientSamples(AdjmechError):
    """Monte Carlo sample count below the operation's minimum."""


class SingularDerivative(AdjmechError):
    """Marginal utility diverges at zero cost for sub-linear adjustment."""


class UnboundedProfit(AdjmechError):
    """Linear adjustment with marginal utility above one: no finite optimum."""


class NoConvergence(AdjmechError):
    """Numerical search exhausted its iteration budget."""


class InvalidReserve(AdjmechError):
    """Reserve price outside the valuation support."""


class UnsupportedCase(AdjmechError):
    """Requested parameters outside the case this closed form covers."""


class BadSupport(AdjmechError):
    """Interval endpoints do not describe a valid support."""
