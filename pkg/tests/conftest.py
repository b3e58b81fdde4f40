import numpy as np
import pytest

from specmm import InstanceSet, SymMatrix


def random_symmetric(rng, n, scale=1.0):
    """Symmetric matrix with entries drawn uniform on [-scale, scale]."""
    return SymMatrix(rng.uniform(-scale, scale, (n, n)))


def random_instance(rng, n, m, scale=1.0):
    return InstanceSet(tuple(random_symmetric(rng, n, scale) for _ in range(m)))


def random_orthogonal(rng, n):
    """Haar-ish orthogonal matrix, independent of the package eigensolver."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)
