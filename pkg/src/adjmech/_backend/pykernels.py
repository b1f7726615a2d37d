"""Pure-numpy kernels; fallback when the compiled extension is unavailable.

Each function is bit-for-bit equivalent to its compiled twin: win counts are
exact integers, per-row reductions share the same arithmetic, and argmax ties
resolve to the first maximum in both implementations.
"""

from __future__ import annotations

import numpy as np


def deviation_partials(theta_c: float, dev_bids: np.ndarray, opp_bids: np.ndarray):
    """Per-bid (sum, sum of squares) of the win gain over opponent samples.

    A bid ``b`` earns ``theta_c - b`` against every opponent bid at or below
    it and zero otherwise, so the moments only need exact win counts.
    """
    counts = np.searchsorted(np.sort(opp_bids), dev_bids, side="right")
    sums = np.empty(dev_bids.shape[0])
    sumsqs = np.empty(dev_bids.shape[0])
    for i in range(dev_bids.shape[0]):
        gain = theta_c - dev_bids[i]
        sums[i] = gain * int(counts[i])
        sumsqs[i] = gain * gain * int(counts[i])
    return sums, sumsqs


def row_max(values: np.ndarray) -> np.ndarray:
    """Largest entry of each row."""
    return values.max(axis=1)


def reserve_auction(values: np.ndarray, reserve: float):
    """Second-price auction with a reserve, one row per valuation profile.

    Returns (bidder-0 surplus, seller revenue) per row.  The highest bidder
    wins when at or above the reserve (first index on exact ties) and pays
    the larger of the reserve and the second-highest valuation.
    """
    n, agents = values.shape
    winner = values.argmax(axis=1)
    top = values[np.arange(n), winner]
    second = np.partition(values, agents - 2, axis=1)[:, agents - 2]
    sold = top >= reserve
    price = np.maximum(reserve, second)
    revenue = np.where(sold, price, 0.0)
    surplus0 = np.where(sold & (winner == 0), values[:, 0] - price, 0.0)
    return surplus0, revenue


def best_response_bids(theta_c: np.ndarray, cand_bids: np.ndarray, win_prob: np.ndarray) -> np.ndarray:
    """Gain-maximizing bid per valuation over a shared candidate grid.

    Maximizes ``(theta_c - b) * win_prob(b)``; ties resolve to the lowest bid.
    """
    gains = (theta_c[:, None] - cand_bids[None, :]) * win_prob[None, :]
    return cand_bids[np.argmax(gains, axis=1)]
