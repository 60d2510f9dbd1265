import numpy as np
import pytest

from dephlab._core import available_backends


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(params=sorted(available_backends()))
def kern(request):
    """Each importable kernel backend in turn."""
    return available_backends()[request.param]


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2.0


def random_density(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real
