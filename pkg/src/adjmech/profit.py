"""Seller-side economics of the adjustable-valuation sale.

With ``agents`` symmetric bidders on uniform[0, 1] and equilibrium bidding,
the seller's expected receipt at spend ``c`` is ``scale(c) * R0`` where
``R0 = (agents - 1) / (agents + 1)`` (shading factor times the expected
maximum valuation); two bidders give the familiar 1/3.  Expected profit is
the receipt minus the spend, a strictly concave function for ``gamma < 1``
whose interior optimum ``c* = (R0 * beta * gamma) ** (1 / (1 - gamma))``
solves the first-order condition.  Three optimizers (closed form, golden
section, derivative root) cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import _backend as backend
from . import mc
from .equilibrium import verify_linear_fixed_point
from .errors import (
    InsufficientSamples,
    InvalidCost,
    NoConvergence,
    SingularDerivative,
    UnboundedProfit,
)
from .model import AdjustmentRule

_GOLDEN_TOL = 1e-9
_MAX_ITER = 10_000
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

DEFAULT_PROBE_TYPES = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class ProfitCurvePoint:
    """Expected utility, profit, and marginal profit at one spend level."""

    c: float
    expected_utility: float
    expected_profit: float
    derivative: float


@dataclass(frozen=True)
class OptimizationResult:
    c_star: float
    profit_at_star: float
    method: str
    profitable: bool
    iterations: int


@dataclass(frozen=True)
class ImplementabilityWitness:
    """Verdict plus the numbers backing it."""

    implementable: bool
    c_star: float
    profit_at_star: float
    profit_at_zero: float
    equilibrium_verified: bool


def revenue_coefficient(agents: int) -> float:
    """Expected seller receipt per unit of valuation scale.

    Product of the symmetric first-price shading ``(agents - 1) / agents``
    and the expected maximum ``agents / (agents + 1)`` of uniform draws.
    """
    if agents < 2:
        raise ValueError(f"need at least 2 agents, got {agents}")
    return (agents - 1) / (agents + 1)


def expected_utility_closed_form(rule: AdjustmentRule, cost: float, agents: int = 2) -> float:
    """Seller's expected receipt at the given spend: ``scale(cost) * R0``."""
    return rule.scale(cost) * revenue_coefficient(agents)


def expected_utility_montecarlo(
    rule: AdjustmentRule,
    cost: float,
    agents: int = 2,
    samples: int = 1_000_000,
    seed: int = 0,
    threads: int = 1,
) -> mc.EstimateWithCI:
    """Monte Carlo twin of :func:`expected_utility_closed_form`.

    Draws initial profiles, scales them, and averages the winner's
    equilibrium payment ``(agents - 1) / agents`` of the top adjusted
    valuation (half of it for two bidders, matching the transfer rule).
    """
    if samples < 10_000:
        raise InsufficientSamples(f"need at least 10000 samples, got {samples}")
    pay_share = (agents - 1) / agents * rule.scale(cost)

    def chunk_values(rng, size):
        draws = np.ascontiguousarray(rng.uniform(size=(size, agents)))
        return pay_share * backend.row_max(draws)

    return mc.chunked_estimate(samples, seed, chunk_values, threads)


def expected_profit(rule: AdjustmentRule, cost: float, agents: int = 2) -> float:
    """Expected receipt minus the spend."""
    return expected_utility_closed_form(rule, cost, agents) - cost


def profit_derivative(rule: AdjustmentRule, cost: float, agents: int = 2) -> float:
    """Marginal expected profit ``R0 * beta * gamma * cost**(gamma-1) - 1``.

    Diverges at zero spend for ``gamma < 1`` (the square-root family climbs
    with infinite slope), hence the explicit error there.
    """
    if cost < 0:
        raise InvalidCost(f"adjustment cost must be non-negative, got {cost}")
    if cost == 0 and rule.gamma < 1:
        raise SingularDerivative("marginal profit diverges at zero spend for gamma < 1")
    r0 = revenue_coefficient(agents)
    return r0 * rule.beta * rule.gamma * cost ** (rule.gamma - 1.0) - 1.0


def profit_curve_point(rule: AdjustmentRule, cost: float, agents: int = 2) -> ProfitCurvePoint:
    """Evaluate utility, profit, and marginal profit at one spend level."""
    utility = expected_utility_closed_form(rule, cost, agents)
    try:
        derivative = profit_derivative(rule, cost, agents)
    except SingularDerivative:
        derivative = math.inf
    return ProfitCurvePoint(cost, utility, utility - cost, derivative)


def _golden_max(fn, lo: float, hi: float, tol: float = _GOLDEN_TOL) -> tuple[float, int]:
    """Golden-section maximizer of a unimodal function on [lo, hi]."""
    c = hi - (hi - lo) * _INV_PHI
    d = lo + (hi - lo) * _INV_PHI
    fc, fd = fn(c), fn(d)
    iterations = 0
    while hi - lo > tol:
        iterations += 1
        if iterations > _MAX_ITER:
            raise NoConvergence(f"golden section exceeded {_MAX_ITER} iterations")
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - (hi - lo) * _INV_PHI
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + (hi - lo) * _INV_PHI
            fd = fn(d)
    return (lo + hi) / 2.0, iterations


def optimize_cost(rule: AdjustmentRule, agents: int = 2, method: str = "closed_form") -> OptimizationResult:
    """Maximize expected profit over the spend.

    Methods: ``closed_form`` evaluates the first-order-condition solution;
    ``golden_section`` searches [0, 2 * closed-form optimum]; and
    ``derivative_root`` brackets the root of the marginal profit.  The linear
    family ``gamma = 1`` short-circuits: marginal profit is constant, so the
    optimum is zero spend when it is at most one, and no finite optimum
    exists when it exceeds one.
    """
    method = method.replace("-", "_")
    if method not in ("closed_form", "golden_section", "derivative_root"):
        raise ValueError(f"unknown method {method!r}")
    r0 = revenue_coefficient(agents)
    beta, gamma = rule.beta, rule.gamma

    if gamma == 1.0:
        if r0 * beta > 1.0:
            raise UnboundedProfit(
                f"linear adjustment with R0*beta = {r0 * beta:.6g} > 1 has no finite optimum"
            )
        c_star, iterations = 0.0, 0
    else:
        c_closed = (r0 * beta * gamma) ** (1.0 / (1.0 - gamma))
        if method == "closed_form" or c_closed == 0.0:
            c_star, iterations = c_closed, 0
        elif method == "golden_section":
            c_star, iterations = _golden_max(
                lambda c: expected_profit(rule, c, agents), 0.0, 2.0 * c_closed
            )
        else:
            c_star, results = brentq(
                lambda c: profit_derivative(rule, c, agents),
                min(1e-12, c_closed / 2.0),
                2.0 * c_closed,
                xtol=1e-9,
                maxiter=_MAX_ITER,
                full_output=True,
            )
            if not results.converged:
                raise NoConvergence("derivative root bracketing failed to converge")
            iterations = results.iterations

    profit_star = expected_profit(rule, c_star, agents)
    profitable = c_star > 0 and profit_star > expected_profit(rule, 0.0, agents)
    return OptimizationResult(float(c_star), profit_star, method, profitable, iterations)


def is_profitable_bayesian_implementable(
    rule: AdjustmentRule, agents: int = 2, probe_types=DEFAULT_PROBE_TYPES
) -> ImplementabilityWitness:
    """Positive optimal spend plus a verified bidding fixed point at it.

    The witness carries the optimal spend and the profits with and without
    it, so a positive verdict always exhibits the strict improvement.
    """
    result = optimize_cost(rule, agents, "closed_form")
    equilibrium_ok = verify_linear_fixed_point(rule, result.c_star, probe_types)
    return ImplementabilityWitness(
        implementable=result.c_star > 0 and equilibrium_ok,
        c_star=result.c_star,
        profit_at_star=result.profit_at_star,
        profit_at_zero=expected_profit(rule, 0.0, agents),
        equilibrium_verified=equilibrium_ok,
    )


def concavity_check(rule: AdjustmentRule, agents: int = 2, c_grid=None, tol: float = 1e-12) -> bool:
    """True iff expected utility has non-increasing slopes over the grid.

    Consecutive secant slopes must not increase by more than ``tol``; this is
    the discrete concavity test and also accepts affine utility exactly.
    """
    grid = np.asarray(c_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise ValueError("need an ascending grid of at least 3 positive spends")
    if grid[0] <= 0 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly ascending and positive")
    utilities = np.array([expected_utility_closed_form(rule, c, agents) for c in grid])
    slopes = np.diff(utilities) / np.diff(grid)
    return bool(np.all(np.diff(slopes) <= tol))


def revelation_divergence(rule: AdjustmentRule, cost: float) -> float:
    """Total-variation distance between initial and adjusted valuation laws.

    Uniform[0, 1] versus uniform[0, s] differ by ``1 - 1/s`` in total
    variation; positive exactly when the spend actually moves valuations, so
    truthful play under the initial law and equilibrium play under the
    adjusted law are checked against different distributions.
    """
    return 1.0 - 1.0 / rule.scale(cost)
