"""Classical optimal-auction benchmark: reserve-price second-price sale.

For i.i.d. uniform bidders the revenue-maximizing mechanism is a second-price
auction with reserve ``high / 2`` (the solution of ``r = (1 - F(r)) / f(r)``).
Closed forms below follow the standard ex-ante payment integral
``r (1 - F(r)) G(r) + integral_r^1 y (1 - F(y)) g(y) dy``; for two uniform[0, 1]
bidders the reserve is 1/2, the per-bidder payment 5/24, and revenue 5/12.

Two agent-profit figures are reported side by side on purpose.  The
``reference`` figure treats each valuation as uniform on [reserve, high]
(expected valuation 3/4 minus the 5/24 payment, i.e. 13/24); the Monte Carlo
oracle keeps valuations uniform on the full support and lands near 1/12
(closed form 7/24 - 5/24).  The premises differ, so the two numbers do not —
and should not — agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend as backend
from . import mc
from .errors import InsufficientSamples, InvalidReserve, UnsupportedCase, UnsupportedDistribution
from .model import AdjustmentRule, InitialDistribution
from .profit import optimize_cost


@dataclass(frozen=True)
class BaselineReport:
    reserve: float
    payment_per_bidder: float
    seller_revenue: float
    reference_agent_profit: float
    oracle_agent_profit: mc.EstimateWithCI


def optimal_reserve(distribution: InitialDistribution) -> float:
    """Revenue-maximizing reserve for uniform[0, high]: half the top valuation."""
    if distribution.family != "uniform":
        raise UnsupportedDistribution(f"no closed form for family {distribution.family!r}")
    if distribution.low != 0.0:
        raise UnsupportedDistribution("reserve closed form assumes support starting at 0")
    return (distribution.low + distribution.high) / 2.0


def expected_payment_per_bidder(reserve: float, agents: int = 2) -> float:
    """Ex-ante expected payment of one bidder, uniform[0, 1] valuations.

    Closed-form evaluation of the payment integral with ``F(y) = y`` and
    ``G(y) = y**(agents-1)``:

        r**I (1 - r) + (I - 1) [ (1 - r**I)/I - (1 - r**(I+1))/(I + 1) ]
    """
    if not 0.0 <= reserve <= 1.0:
        raise InvalidReserve(f"reserve must lie in [0, 1], got {reserve}")
    if agents < 2:
        raise ValueError(f"need at least 2 agents, got {agents}")
    r, n = reserve, agents
    return r**n * (1.0 - r) + (n - 1) * ((1.0 - r**n) / n - (1.0 - r ** (n + 1)) / (n + 1))


def seller_revenue(reserve: float, agents: int = 2) -> float:
    """Total expected revenue: symmetric bidders each pay the same ex ante."""
    return agents * expected_payment_per_bidder(reserve, agents)


def reference_agent_profit(reserve: float, agents: int = 2) -> float:
    """Agent profit under the conditional-valuation convention.

    Treats each valuation as uniform on [reserve, 1] — expected valuation at
    the interval midpoint — and subtracts the ex-ante expected payment.  At
    the optimal reserve this gives 3/4 - 5/24 = 13/24.  Compare with
    :func:`agent_profit_oracle_montecarlo`, which keeps valuations uniform on
    [0, 1] and therefore reports a much smaller surplus.
    """
    if agents != 2:
        raise UnsupportedCase(f"reference figure is derived for 2 agents, got {agents}")
    if not 0.0 <= reserve <= 1.0:
        raise InvalidReserve(f"reserve must lie in [0, 1], got {reserve}")
    return (reserve + 1.0) / 2.0 - expected_payment_per_bidder(reserve, agents)


def agent_profit_oracle_montecarlo(
    reserve: float,
    agents: int = 2,
    samples: int = 1_000_000,
    seed: int = 0,
    threads: int = 1,
) -> mc.EstimateWithCI:
    """Simulated ex-ante surplus of one fixed bidder in the reserve auction.

    Valuations uniform on [0, 1]; the highest bidder above the reserve wins
    and pays the larger of the reserve and the second-highest valuation.
    """
    if samples < 100_000:
        raise InsufficientSamples(f"need at least 100000 samples, got {samples}")
    if not 0.0 <= reserve <= 1.0:
        raise InvalidReserve(f"reserve must lie in [0, 1], got {reserve}")

    def chunk_values(rng, size):
        draws = np.ascontiguousarray(rng.uniform(size=(size, agents)))
        surplus, _ = backend.reserve_auction(draws, reserve)
        return surplus

    return mc.chunked_estimate(samples, seed, chunk_values, threads)


def seller_revenue_montecarlo(
    reserve: float,
    agents: int = 2,
    samples: int = 1_000_000,
    seed: int = 0,
    threads: int = 1,
) -> mc.EstimateWithCI:
    """Simulated expected revenue of the reserve auction (independent of the
    closed-form payment integral)."""
    if samples < 100_000:
        raise InsufficientSamples(f"need at least 100000 samples, got {samples}")
    if not 0.0 <= reserve <= 1.0:
        raise InvalidReserve(f"reserve must lie in [0, 1], got {reserve}")

    def chunk_values(rng, size):
        draws = np.ascontiguousarray(rng.uniform(size=(size, agents)))
        _, revenue = backend.reserve_auction(draws, reserve)
        return revenue

    return mc.chunked_estimate(samples, seed, chunk_values, threads)


def agent_profit_at_optimum(rule: AdjustmentRule, agents: int = 2) -> float:
    """Each bidder's ex-ante profit at the seller's optimal spend.

    The winner keeps half their adjusted valuation, so the winner's expected
    profit is ``scale(c*) * E[max] / 2 = scale(c*) / 3`` for two bidders, and
    the symmetric 1/2 win probability halves it again.
    """
    if agents != 2:
        raise UnsupportedCase(f"agent profit closed form covers 2 agents, got {agents}")
    result = optimize_cost(rule, agents, "closed_form")
    return rule.scale(result.c_star) / 6.0


def adjusted_agent_profit(rule: AdjustmentRule, agents: int = 2) -> float:
    """Square-root-family agent profit at the optimal spend: 1/6 + beta**2/36."""
    if rule.gamma != 0.5:
        raise UnsupportedCase(f"closed form pinned at gamma = 1/2, got {rule.gamma}")
    return agent_profit_at_optimum(rule, agents)


def baseline_report(
    reserve: float | None = None,
    agents: int = 2,
    samples: int = 1_000_000,
    seed: int = 0,
    threads: int = 1,
    distribution: InitialDistribution = InitialDistribution(),
) -> BaselineReport:
    """Assemble the benchmark numbers at one reserve (default: the optimum)."""
    r = optimal_reserve(distribution) if reserve is None else reserve
    return BaselineReport(
        reserve=r,
        payment_per_bidder=expected_payment_per_bidder(r, agents),
        seller_revenue=seller_revenue(r, agents),
        reference_agent_profit=reference_agent_profit(r, agents),
        oracle_agent_profit=agent_profit_oracle_montecarlo(r, agents, samples, seed, threads),
    )
