"""Uhlmann fidelity, Bures distance, and the 4x4 Hermitian algebra behind them.

The Bures distance between density matrices is

    D(rho, sigma) = sqrt(2 (1 - sqrt(F(rho, sigma))))

with F the Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. The
eigenproblems are solved by a cyclic Jacobi sweep specialized to the 4x4
complex Hermitian case (see the backend kernels); fidelity is evaluated
through the Hermitian product sqrt(rho) sigma sqrt(rho), never through the
non-Hermitian product rho sigma.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from ._backend import kernels
from .errors import NonHermitian, NotPSD
from .states import DensityMatrix

_HERM_TOL = 1e-8
_PSD_TOL = -1e-8


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, DensityMatrix):
        return m.matrix
    return np.asarray(m, dtype=np.complex128)


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(m) -> EigenSystem:
    """Eigendecomposition of a 4x4 Hermitian matrix.

    The input is symmetrized as (M + M^dagger)/2 first; asymmetry beyond
    1e-8 raises NonHermitian.
    """
    a = _as_matrix(m)
    if np.max(np.abs(a - a.conj().T)) > _HERM_TOL:
        raise NonHermitian("matrix asymmetry exceeds 1e-8")
    w, v = kernels.jacobi_eigh(a, vectors=True)
    return EigenSystem(w, v)


def matrix_sqrt_psd(m) -> np.ndarray:
    """Principal square root of a PSD Hermitian matrix.

    Eigenvalues in [-1e-8, 0) are treated as round-off and clamped to zero;
    anything below -1e-8 raises NotPSD.
    """
    a = _as_matrix(m)
    if np.max(np.abs(a - a.conj().T)) > _HERM_TOL:
        raise NonHermitian("matrix asymmetry exceeds 1e-8")
    w, _ = kernels.jacobi_eigh(a, vectors=False)
    if w[0] < _PSD_TOL:
        raise NotPSD(f"eigenvalue {w[0]} below -1e-8")
    return kernels.sqrt_psd(a)


def uhlmann_fidelity(rho, sigma) -> float:
    """Uhlmann fidelity of two density matrices, clamped to [0, 1]."""
    s = matrix_sqrt_psd(rho)
    b = _as_matrix(sigma)
    w, _ = kernels.jacobi_eigh(b, vectors=False)
    if w[0] < _PSD_TOL:
        raise NotPSD(f"second argument has eigenvalue {w[0]} below -1e-8")
    f = kernels.fidelity_from_sqrt(s, b)
    return min(max(f, 0.0), 1.0)


def bures_distance(rho, sigma) -> float:
    """Bures distance sqrt(2 (1 - sqrt(F)))."""
    return sqrt(2.0 * max(1.0 - sqrt(uhlmann_fidelity(rho, sigma)), 0.0))


def classical_fidelity(p, q) -> float:
    """Bhattacharyya fidelity (sum_i sqrt(p_i q_i))^2 of probability vectors."""
    pa = np.asarray(p, dtype=float)
    qa = np.asarray(q, dtype=float)
    for name, vec in (("p", pa), ("q", qa)):
        if vec.min() < 0.0:
            raise NotPSD(f"{name} has a negative entry {vec.min()}")
        if abs(vec.sum() - 1.0) > 1e-10:
            raise NotPSD(f"{name} sums to {vec.sum()}, not 1 within 1e-10")
    return float(np.sum(np.sqrt(pa * qa)) ** 2)
