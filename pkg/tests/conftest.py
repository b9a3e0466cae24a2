import numpy as np
import pytest

from beliefevo import kernels


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    previous = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(20241018)
