import numpy as np
import pytest

from beliefevo import kernels


needs_both = pytest.mark.skipif(len(kernels.BACKENDS) < 2, reason="compiled extension not built")


def _all(func, *args):
    out = []
    for name in kernels.BACKENDS:
        with_backend = kernels.use_backend(name)
        try:
            out.append(func(*args))
        finally:
            kernels.use_backend(with_backend)
    return out


@needs_both
@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_backends_agree(rng, n):
    v = rng.random(1 << n)
    v /= v.sum()
    for func in (kernels.subset_sum, kernels.superset_sum, kernels.subset_diff, kernels.superset_diff,
                 kernels.full_causality):
        a, b = _all(func, v, n)
        assert np.allclose(a, b, atol=1e-12)
    v[0] = 0.0
    v /= v.sum()
    a, b = _all(kernels.fcpt_run, v, n)
    assert np.allclose(a, b, atol=1e-12)


@needs_both
def test_pcr_batch_agrees(rng):
    p1 = rng.dirichlet(np.ones(4), size=50)
    p2 = rng.dirichlet(np.ones(4), size=50)
    a, b = _all(kernels.pcr_batch, p1, p2)
    assert np.allclose(a, b, atol=1e-12)
    assert np.allclose(a.sum(axis=1), 1.0)


def test_zeta_mobius_round_trip(backend, rng):
    v = rng.random(32)
    assert np.allclose(kernels.subset_diff(kernels.subset_sum(v, 5), 5), v)
    assert np.allclose(kernels.superset_diff(kernels.superset_sum(v, 5), 5), v)


def test_batched_input(backend, rng):
    v = rng.random((3, 8))
    out = kernels.subset_sum(v, 3)
    assert out.shape == (3, 8)
    assert np.allclose(out[1], kernels.subset_sum(v[1], 3))


def test_pcr_batch_accepts_read_only(backend):
    p = np.array([[0.5, 0.25, 0.25]])
    p.setflags(write=False)
    out = kernels.pcr_batch(p, p)
    assert out[0] == pytest.approx([0.5658, 0.2171, 0.2171], abs=5e-5)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")
