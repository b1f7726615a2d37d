"""Domain model: valuation profiles, the signal-driven adjustment map, the
allocation-and-transfer rule, and uniform order-statistic closed forms.

The setting is a one-shot sealed-bid sale.  Before bidding, the seller spends
an observable amount ``c`` (a costly signal such as venue rent); every
bidder's private valuation scales up by the same factor ``1 + beta * c**gamma``
in response.  All quantities are money-valued doubles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    BadIndex,
    BadSupport,
    EmptyProfile,
    InvalidCost,
    UnsupportedDistribution,
    WrongProfileKind,
)

KIND_INITIAL = "initial"
KIND_ADJUSTED = "adjusted"


@dataclass(frozen=True)
class AdjustmentRule:
    """Power-family valuation response to the seller's observable spend.

    A spend of ``c`` multiplies every valuation by ``1 + beta * c**gamma``.
    ``gamma = 1/2`` is the square-root baseline used throughout the tests;
    ``gamma = 1`` is the linear edge case where signalling may be worthless
    (or, for large ``beta``, unbounded).
    """

    beta: float
    gamma: float = 0.5

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")
        if not 0 < self.gamma <= 1:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma}")

    def scale(self, cost: float) -> float:
        """Valuation multiplier ``1 + beta * cost**gamma``."""
        if cost < 0:
            raise InvalidCost(f"adjustment cost must be non-negative, got {cost}")
        return 1.0 + self.beta * cost**self.gamma


@dataclass(frozen=True)
class InitialDistribution:
    """Distribution each initial valuation is drawn from, i.i.d. per agent."""

    family: str = "uniform"
    low: float = 0.0
    high: float = 1.0

    def __post_init__(self):
        if self.low >= self.high:
            raise BadSupport(f"need low < high, got [{self.low}, {self.high}]")


@dataclass(frozen=True)
class TypeProfile:
    """One valuation per agent, tagged as initial or adjusted at some cost."""

    values: tuple[float, ...]
    kind: str = KIND_INITIAL
    cost: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        for v in self.values:
            if v < 0:
                raise ValueError(f"valuations must be non-negative, got {v}")
        if self.kind == KIND_INITIAL:
            if self.cost is not None:
                raise ValueError("initial profiles carry no adjustment cost")
        elif self.kind == KIND_ADJUSTED:
            if self.cost is None or self.cost < 0:
                raise InvalidCost(f"adjusted profiles need a cost >= 0, got {self.cost}")
        else:
            raise ValueError(f"kind must be 'initial' or 'adjusted', got {self.kind!r}")

    @classmethod
    def initial(cls, values) -> "TypeProfile":
        return cls(tuple(values), KIND_INITIAL)

    @classmethod
    def adjusted(cls, values, cost: float) -> "TypeProfile":
        return cls(tuple(values), KIND_ADJUSTED, float(cost))

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Outcome:
    """Allocation flags and transfers for one profile.

    ``y[i] = 1`` marks the winner; ``y_d`` is the seller-keeps flag (always 0
    here: the good is always sold).  ``t[i] <= 0`` is agent ``i``'s payment,
    and ``t_d = -sum(t)`` is the seller's receipt (budget balance).
    """

    y: tuple[int, ...]
    y_d: int
    t: tuple[float, ...]
    t_d: float


@dataclass(frozen=True)
class ModelConfig:
    """Bundle of model parameters used by the CLI and sweep drivers."""

    agents: int = 2
    adjustment: AdjustmentRule = AdjustmentRule(2.0, 0.5)
    distribution: InitialDistribution = InitialDistribution()
    seed: int = 0

    def __post_init__(self):
        if self.agents < 2:
            raise ValueError(f"need at least 2 agents, got {self.agents}")


def adjust_types(profile: TypeProfile, rule: AdjustmentRule, cost: float) -> TypeProfile:
    """Apply the signal response: every valuation scales by ``rule.scale(cost)``.

    Zero spend is the identity.  The input must still be an initial profile;
    adjusting twice would compound the signal.
    """
    if profile.kind != KIND_INITIAL:
        raise WrongProfileKind("profile was already adjusted; start from an initial profile")
    s = rule.scale(cost)
    return TypeProfile.adjusted(tuple(s * v for v in profile.values), cost)


def scf_outcome(profile: TypeProfile) -> Outcome:
    """Allocation-and-transfer rule: highest valuation wins, pays half of it.

    Ties go to the lowest agent index.  The winner's transfer is half their
    own valuation (the symmetric two-bidder equilibrium payment), losers pay
    nothing, and the seller receives the winner's payment.
    """
    if len(profile) == 0:
        raise EmptyProfile("profile holds no agents")
    values = profile.values
    winner = values.index(max(values))
    pay = values[winner] / 2.0
    y = tuple(1 if i == winner else 0 for i in range(len(values)))
    t = tuple(-pay if i == winner else 0.0 for i in range(len(values)))
    return Outcome(y=y, y_d=0, t=t, t_d=pay)


def agent_utility(outcome: Outcome, agent: int, theta: float) -> float:
    """Quasi-linear payoff: valuation if allocated, plus the (negative) transfer."""
    if not 0 <= agent < len(outcome.y):
        raise BadIndex(f"agent {agent} outside profile of size {len(outcome.y)}")
    return theta * outcome.y[agent] + outcome.t[agent]


def max_order_statistic_mean(agents: int, distribution: InitialDistribution) -> float:
    """Expected maximum of ``agents`` i.i.d. draws.

    For uniform[low, high] this is ``low + (high - low) * agents / (agents + 1)``;
    two standard uniforms give 2/3.
    """
    if distribution.family != "uniform":
        raise UnsupportedDistribution(f"no closed form for family {distribution.family!r}")
    if agents < 1:
        raise ValueError(f"need at least one draw, got {agents}")
    return distribution.low + (distribution.high - distribution.low) * agents / (agents + 1.0)


def adjusted_density(rule: AdjustmentRule, cost: float, x: float) -> float:
    """Density of one adjusted valuation when the initial draw is uniform[0, 1].

    Linear scaling pushes uniform[0, 1] forward to uniform[0, s] with
    ``s = rule.scale(cost)``, so the density is ``1/s`` on [0, s] and 0 outside.
    """
    s = rule.scale(cost)
    return 1.0 / s if 0.0 <= x <= s else 0.0
