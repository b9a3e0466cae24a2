"""Dense power-set kernels with backend selection.

The compiled module ``_ckernels`` is used when it was built; otherwise the
numpy version in ``_pykernels`` is used.  Set ``BELIEFEVO_BACKEND=numpy`` to
force the fallback.  All public helpers accept a single vector of length
``2**n`` or a batch of shape ``(batch, 2**n)`` and never mutate their input.
"""
import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"numpy": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels


def _select():
    wanted = os.environ.get("BELIEFEVO_BACKEND", "").strip().lower()
    if wanted:
        if wanted not in BACKENDS:
            raise ImportError(f"kernel backend {wanted!r} is not available; have {sorted(BACKENDS)}")
        return BACKENDS[wanted]
    return BACKENDS.get("cython", _pykernels)


_backend = _select()
BACKEND = _backend.NAME


def use_backend(name):
    """Switch the active backend, returning the previous backend name."""
    global _backend, BACKEND
    previous = BACKEND
    if name not in BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; have {sorted(BACKENDS)}")
    _backend = BACKENDS[name]
    BACKEND = name
    return previous


def _batch(v, n):
    arr = np.array(v, dtype=np.float64, order="C", copy=True)
    single = arr.ndim == 1
    if single:
        arr = arr.reshape(1, -1)
    if arr.shape[1] != 1 << n:
        raise ValueError(f"expected vectors of length {1 << n}, got {arr.shape[1]}")
    return arr, single


def _unbatch(arr, single):
    return arr[0] if single else arr


def subset_sum(v, n):
    """``out[F] = sum(v[G] for G subset of F)``."""
    arr, single = _batch(v, n)
    _backend.subset_sum(arr, n)
    return _unbatch(arr, single)


def superset_sum(v, n):
    """``out[F] = sum(v[G] for G superset of F)``."""
    arr, single = _batch(v, n)
    _backend.superset_sum(arr, n)
    return _unbatch(arr, single)


def subset_diff(v, n):
    """Inverse of :func:`subset_sum`."""
    arr, single = _batch(v, n)
    _backend.subset_diff(arr, n)
    return _unbatch(arr, single)


def superset_diff(v, n):
    """Inverse of :func:`superset_sum`."""
    arr, single = _batch(v, n)
    _backend.superset_diff(arr, n)
    return _unbatch(arr, single)


def full_causality(v, n):
    arr, single = _batch(v, n)
    out = np.empty_like(arr)
    _backend.full_causality(arr, n, out)
    return _unbatch(out, single)


def fcpt_step(v, n, k):
    arr, single = _batch(v, n)
    _backend.fcpt_step(arr, n, k)
    return _unbatch(arr, single)


def fcpt_run(v, n):
    arr, single = _batch(v, n)
    _backend.fcpt_run(arr, n)
    return _unbatch(arr, single)


def pcr_batch(p1, p2):
    """FCPT of the disjunctive combination of two batches of PMFs."""
    a = np.array(np.atleast_2d(p1), dtype=np.float64, order="C", copy=True)
    b = np.array(np.atleast_2d(p2), dtype=np.float64, order="C", copy=True)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return _backend.pcr_batch(a, b)
