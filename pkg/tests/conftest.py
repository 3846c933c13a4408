import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)


@pytest.fixture
def make_density(rng):
    """Factory for random full-rank density matrices of a given dimension."""
    def _make(dim: int) -> np.ndarray:
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        rho = g @ g.conj().T
        return rho / np.trace(rho).real
    return _make


@pytest.fixture
def make_hermitian(rng):
    def _make(dim: int) -> np.ndarray:
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        return g + g.conj().T
    return _make


@pytest.fixture
def make_pure(rng):
    """Factory for random normalised state vectors."""
    def _make(dim: int) -> np.ndarray:
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        return v / np.linalg.norm(v)
    return _make
