# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the Monte Carlo and grid-search inner loops.

Mirrors ``pykernels`` exactly: same arithmetic per element, integer win
counts, first-maximum tie handling.  Outputs are bitwise identical to the
numpy fallback.
"""

import numpy as np


def deviation_partials(double theta_c, double[::1] dev_bids, double[::1] opp_bids):
    cdef Py_ssize_t m = dev_bids.shape[0]
    cdef Py_ssize_t n = opp_bids.shape[0]
    sums_arr = np.empty(m)
    sumsqs_arr = np.empty(m)
    cdef double[::1] sums = sums_arr
    cdef double[::1] sumsqs = sumsqs_arr
    cdef Py_ssize_t i, j
    cdef long count
    cdef double b, gain
    for i in range(m):
        b = dev_bids[i]
        gain = theta_c - b
        count = 0
        for j in range(n):
            if opp_bids[j] <= b:
                count += 1
        sums[i] = gain * count
        sumsqs[i] = gain * gain * count
    return sums_arr, sumsqs_arr


def row_max(double[:, ::1] values):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t agents = values.shape[1]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double best
    for i in range(n):
        best = values[i, 0]
        for j in range(1, agents):
            if values[i, j] > best:
                best = values[i, j]
        out[i] = best
    return out_arr


def reserve_auction(double[:, ::1] values, double reserve):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t agents = values.shape[1]
    surplus_arr = np.zeros(n)
    revenue_arr = np.zeros(n)
    cdef double[::1] surplus = surplus_arr
    cdef double[::1] revenue = revenue_arr
    cdef Py_ssize_t i, j, winner
    cdef double top, second, v, price
    for i in range(n):
        winner = 0
        top = values[i, 0]
        second = -1.0
        for j in range(1, agents):
            v = values[i, j]
            if v > top:
                second = top
                top = v
                winner = j
            elif v > second:
                second = v
        if top >= reserve:
            price = second if second > reserve else reserve
            revenue[i] = price
            if winner == 0:
                surplus[i] = values[i, 0] - price
    return surplus_arr, revenue_arr


def best_response_bids(double[::1] theta_c, double[::1] cand_bids, double[::1] win_prob):
    cdef Py_ssize_t g = theta_c.shape[0]
    cdef Py_ssize_t m = cand_bids.shape[0]
    out_arr = np.empty(g)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j, best_j
    cdef double t, gain, best
    for i in range(g):
        t = theta_c[i]
        best_j = 0
        best = (t - cand_bids[0]) * win_prob[0]
        for j in range(1, m):
            gain = (t - cand_bids[j]) * win_prob[j]
            if gain > best:
                best = gain
                best_j = j
        out[i] = cand_bids[best_j]
    return out_arr
