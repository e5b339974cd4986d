"""Bell-diagonal two-qubit states and the uncorrelated reference families.

A Bell-diagonal (BD) state is fixed by three correlation coefficients
(c1, c2, c3); it is a valid state exactly when the four eigenvalues

    alpha = (1 + c1 - c2 + c3) / 4
    beta  = (1 - c1 + c2 + c3) / 4
    gamma = (1 + c1 + c2 - c3) / 4
    delta = (1 - c1 - c2 - c3) / 4

are nonnegative, i.e. when (c1, c2, c3) lies in the tetrahedron with
vertices (1,-1,1), (-1,1,1), (1,1,-1), (-1,-1,-1). All matrices use the
computational basis ordered |00>, |01>, |10>, |11>.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from ._rng import stream
from .errors import InvalidState

VALID_EPS = 1e-12

Vec3 = tuple[float, float, float]


def _eigenvalues_of(c1: float, c2: float, c3: float) -> tuple[float, float, float, float]:
    return (
        0.25 * (1.0 + c1 - c2 + c3),
        0.25 * (1.0 - c1 + c2 + c3),
        0.25 * (1.0 + c1 + c2 - c3),
        0.25 * (1.0 - c1 - c2 - c3),
    )


@dataclass(frozen=True)
class BellDiagonalState:
    """Correlation coefficients (c1, c2, c3) of a Bell-diagonal state."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for v in _eigenvalues_of(self.c1, self.c2, self.c3):
            if v < -VALID_EPS:
                raise InvalidState(
                    f"({self.c1}, {self.c2}, {self.c3}) lies outside the Bell "
                    f"tetrahedron: eigenvalue {v} < -{VALID_EPS}"
                )

    @property
    def c(self) -> Vec3:
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class BdEigenvalues:
    """Spectrum (alpha, beta, gamma, delta) of a Bell-diagonal state."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        vals = (self.alpha, self.beta, self.gamma, self.delta)
        for v in vals:
            if v < 0.0 or v > 1.0:
                raise InvalidState(f"eigenvalue {v} outside [0, 1]")
        if abs(sum(vals) - 1.0) > VALID_EPS:
            raise InvalidState(f"eigenvalues sum to {sum(vals)}, not 1")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated 4x4 density matrix (Hermitian, unit trace, PSD)."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.shape != (4, 4):
            raise InvalidState(f"expected a 4x4 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > VALID_EPS:
            raise InvalidState("matrix is not Hermitian to 1e-12")
        if abs(np.trace(m).real - 1.0) > VALID_EPS:
            raise InvalidState(f"trace is {np.trace(m).real}, not 1")
        w, _ = kernels.jacobi_eigh(m, vectors=False)
        if w[0] < -1e-10:
            raise InvalidState(f"matrix has eigenvalue {w[0]} < -1e-10")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class ProductState:
    """Bloch vectors (a, b) of an uncorrelated two-qubit state."""

    a: Vec3
    b: Vec3

    def __post_init__(self):
        for name, vec in (("a", self.a), ("b", self.b)):
            if np.linalg.norm(vec) > 1.0 + VALID_EPS:
                raise InvalidState(f"Bloch vector {name}={vec} has norm > 1")


@dataclass(frozen=True)
class CqReference:
    """One-parameter family of classical-quantum states diagonal in the
    computational basis: entries (1+s)/4, (1-s)(1+r)/4, (1-s)(1-r)/4, (1+s)/4."""

    s: float
    r: float

    def __post_init__(self):
        if abs(self.s) > 1.0 + VALID_EPS or abs(self.r) > 1.0 + VALID_EPS:
            raise InvalidState(f"(s={self.s}, r={self.r}) outside [-1, 1]^2")


def bd_from_c(c1: float, c2: float, c3: float) -> BellDiagonalState:
    """Validated Bell-diagonal state from correlation coefficients.

    Raises InvalidState when any eigenvalue drops below -1e-12; violations
    smaller than that are clamped to the tetrahedron boundary.
    """
    ev = _eigenvalues_of(c1, c2, c3)
    if min(ev) < -VALID_EPS:
        raise InvalidState(
            f"({c1}, {c2}, {c3}) is not a Bell-diagonal state: "
            f"min eigenvalue {min(ev)} < -{VALID_EPS}"
        )
    if min(ev) < 0.0:
        clamped = [max(v, 0.0) for v in ev]
        total = sum(clamped)
        return bd_from_eigenvalues(
            BdEigenvalues(*(v / total for v in clamped))
        )
    return BellDiagonalState(c1, c2, c3)


def bd_eigenvalues(state: BellDiagonalState) -> BdEigenvalues:
    """Spectrum (alpha, beta, gamma, delta); round-off negatives clamp to 0."""
    ev = [max(v, 0.0) for v in _eigenvalues_of(state.c1, state.c2, state.c3)]
    return BdEigenvalues(*ev)


def bd_from_eigenvalues(ev: BdEigenvalues | tuple[float, float, float, float]) -> BellDiagonalState:
    """Inverse of bd_eigenvalues (renormalizes sums within 1e-10 of 1)."""
    if not isinstance(ev, BdEigenvalues):
        vals = tuple(float(v) for v in ev)
        if min(vals) < -1e-10:
            raise InvalidState(f"negative eigenvalue {min(vals)}")
        vals = tuple(max(v, 0.0) for v in vals)
        total = sum(vals)
        if abs(total - 1.0) > 1e-10:
            raise InvalidState(f"eigenvalues sum to {total}, not 1 within 1e-10")
        ev = BdEigenvalues(*(v / total for v in vals))
    a, b, g, d = ev.as_tuple()
    return BellDiagonalState(a - b + g - d, -a + b + g - d, a + b - g - d)


def bd_to_density(state: BellDiagonalState) -> DensityMatrix:
    """4x4 density matrix of a Bell-diagonal state in the computational basis."""
    c1, c2, c3 = state.c
    m = 0.25 * np.array(
        [
            [1 + c3, 0, 0, c1 - c2],
            [0, 1 - c3, c1 + c2, 0],
            [0, c1 + c2, 1 - c3, 0],
            [c1 - c2, 0, 0, 1 + c3],
        ],
        dtype=np.complex128,
    )
    return DensityMatrix(m)


def product_to_density(p: ProductState) -> DensityMatrix:
    """Tensor product of the two single-qubit Bloch matrices."""
    return DensityMatrix(kernels.product_density(*p.a, *p.b))


def cq_reference_density(q: CqReference) -> DensityMatrix:
    """Diagonal matrix of the reference classical-quantum family."""
    s, r = q.s, q.r
    diag = np.array(
        [(1 + s) / 4, (1 - s) * (1 + r) / 4, (1 - s) * (1 - r) / 4, (1 + s) / 4]
    )
    return DensityMatrix(np.diag(diag).astype(np.complex128))


def random_bd(rng_seed: int, index: int = 0) -> BellDiagonalState:
    """Random Bell-diagonal state, uniform over the eigenvalue simplex.

    Four i.i.d. exponentials normalized to sum 1 (flat Dirichlet) become the
    eigenvalues. Deterministic in (rng_seed, index); distinct indices give
    independent streams for batch work.
    """
    gen = stream(rng_seed, index)
    draws = [gen.exponential() for _ in range(4)]
    total = sum(draws)
    return bd_from_eigenvalues(BdEigenvalues(*(d / total for d in draws)))
