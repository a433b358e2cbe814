import numpy as np
import pytest

from qmkit import QuantumObject


def random_complex_matrix(rng, d: int) -> np.ndarray:
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def random_hermitian(rng, d: int) -> np.ndarray:
    m = random_complex_matrix(rng, d)
    return (m + m.conj().T) / 2


def random_psd(rng, d: int) -> np.ndarray:
    m = random_complex_matrix(rng, d)
    return m @ m.conj().T


def random_density(rng, d: int, rank: int | None = None) -> QuantumObject:
    """Random mixed state: normalized Wishart of the given rank."""
    r = rank or d
    g = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    rho = g @ g.conj().T
    return QuantumObject(rho / np.trace(rho))


def random_ket(rng, d: int) -> QuantumObject:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return QuantumObject((v / np.linalg.norm(v)).reshape(-1, 1))


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
