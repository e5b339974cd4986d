import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_density(rng, rank: int = 4) -> np.ndarray:
    """Haar-ish random 4x4 density matrix of the given rank."""
    x = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    m = x @ x.conj().T
    return m / np.trace(m).real


def random_qubit_density(rng) -> np.ndarray:
    x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = x @ x.conj().T
    return m / np.trace(m).real


def qubit_fidelity(rho, sigma) -> float:
    """Closed-form single-qubit fidelity Tr(rho sigma) + 2 sqrt(det rho det sigma)."""
    tr = np.trace(rho @ sigma).real
    det = np.linalg.det(rho).real * np.linalg.det(sigma).real
    return tr + 2.0 * np.sqrt(max(det, 0.0))


def partial_trace_a(m: np.ndarray) -> np.ndarray:
    """Trace out qubit A of a 4x4 matrix in the |00>,|01>,|10>,|11> basis."""
    t = m.reshape(2, 2, 2, 2)
    return t[0, :, 0, :] + t[1, :, 1, :]


def partial_trace_b(m: np.ndarray) -> np.ndarray:
    """Trace out qubit B."""
    t = m.reshape(2, 2, 2, 2)
    return t[:, 0, :, 0] + t[:, 1, :, 1]


PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def bloch_of(qubit_rho: np.ndarray) -> np.ndarray:
    return np.array([np.trace(qubit_rho @ p).real for p in PAULI])
