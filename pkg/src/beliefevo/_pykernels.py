"""Numpy implementation of the power-set kernels.

Every function works on a C-contiguous float64 array of shape (batch, 2**n)
and modifies it in place, mirroring the compiled module one to one.
"""
import numpy as np

NAME = "numpy"

_POPCOUNT_CACHE = {}


def popcounts(n):
    table = _POPCOUNT_CACHE.get(n)
    if table is None:
        table = np.zeros(1 << n, dtype=np.int64)
        for i in range(n):
            table[1 << i:2 << i] = table[:1 << i] + 1
        _POPCOUNT_CACHE[n] = table
    return table


def _bit_view(a, n, i):
    # axes: batch, high bits, bit i, low bits
    return a.reshape(a.shape[0], (1 << n) >> (i + 1), 2, 1 << i)


def subset_sum(a, n):
    for i in range(n):
        v = _bit_view(a, n, i)
        v[:, :, 1, :] += v[:, :, 0, :]


def superset_sum(a, n):
    for i in range(n):
        v = _bit_view(a, n, i)
        v[:, :, 0, :] += v[:, :, 1, :]


def subset_diff(a, n):
    for i in range(n):
        v = _bit_view(a, n, i)
        v[:, :, 1, :] -= v[:, :, 0, :]


def superset_diff(a, n):
    for i in range(n):
        v = _bit_view(a, n, i)
        v[:, :, 0, :] -= v[:, :, 1, :]


def full_causality(a, n, out):
    b = a.copy()
    subset_sum(b, n)
    out[...] = a
    superset_sum(out, n)
    out += b
    out -= a


def fcpt_step(a, n, k):
    """Split the mass of every cardinality-``k`` node among its children."""
    pc = popcounts(n)
    parents = np.flatnonzero(pc == k)
    held = a[:, parents]
    if not held.any():
        return
    fc = np.empty_like(a)
    full_causality(a, n, fc)
    den = np.zeros_like(held)
    links = []
    for i in range(n):
        has = ((parents >> i) & 1).astype(bool)
        child = parents[has] ^ (1 << i)
        links.append((has, child))
        den[:, has] += fc[:, child]
    positive = den > 0
    scale = np.divide(held, den, out=np.zeros_like(held), where=positive)
    even = np.where(positive, 0.0, held / k)
    for has, child in links:
        a[:, child] += scale[:, has] * fc[:, child] + even[:, has]
    a[:, parents] = 0.0


def fcpt_run(a, n):
    for k in range(n, 1, -1):
        fcpt_step(a, n, k)


def dcr_bayes(p1, p2):
    """Disjunctive combination of two batches of bayesian masses."""
    batch, n = p1.shape
    out = np.zeros((batch, 1 << n))
    for i in range(n):
        for j in range(n):
            out[:, (1 << i) | (1 << j)] += p1[:, i] * p2[:, j]
    return out


def pcr_batch(p1, p2):
    n = p1.shape[1]
    m = dcr_bayes(p1, p2)
    fcpt_run(m, n)
    return np.ascontiguousarray(m[:, [1 << i for i in range(n)]])
