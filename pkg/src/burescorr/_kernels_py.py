"""Pure-Python fallback for the 4x4 Hermitian hot kernels.

Same algorithms as the compiled extension (``_kernels.pyx``): a cyclic
Jacobi eigensolver for 4x4 complex Hermitian matrices (off-diagonal
threshold 1e-14, at most 100 sweeps), the PSD matrix square root built on
it, and the Uhlmann-fidelity evaluations used inside the optimization
oracles. Kept in lock-step with the extension so either backend can serve
the whole package; see ``benchmarks/bench_backends.py`` for the speed gap.
"""

from __future__ import annotations

from math import sqrt

import numpy as np

BACKEND = "python"

_OFFDIAG_TOL = 1e-14
_MAX_SWEEPS = 100
_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def jacobi_eigh(m, vectors: bool = True):
    """Eigenvalues (ascending) and eigenvectors of a 4x4 complex Hermitian matrix.

    Rotations use the exact Hermitian input symmetrized once up front;
    convergence is declared when every off-diagonal modulus is below 1e-14.
    """
    a = np.asarray(m, dtype=np.complex128)
    a = 0.5 * (a + a.conj().T)
    v = np.eye(4, dtype=np.complex128) if vectors else None

    for _ in range(_MAX_SWEEPS):
        off = 0.0
        for p, q in _PAIRS:
            off = max(off, abs(a[p, q]))
        if off < _OFFDIAG_TOL:
            break
        for p, q in _PAIRS:
            apq = a[p, q]
            r = abs(apq)
            if r < _OFFDIAG_TOL:
                a[p, q] = 0.0
                a[q, p] = 0.0
                continue
            phase = apq / r
            app = a[p, p].real
            aqq = a[q, q].real
            tau = (aqq - app) / (2.0 * r)
            if tau >= 0.0:
                t = 1.0 / (tau + sqrt(1.0 + tau * tau))
            else:
                t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
            c = 1.0 / sqrt(1.0 + t * t)
            s = t * c
            sp = s * phase
            spc = s * phase.conjugate()

            for k in range(4):
                if k == p or k == q:
                    continue
                akp = a[k, p]
                akq = a[k, q]
                a[k, p] = c * akp - spc * akq
                a[k, q] = sp * akp + c * akq
                a[p, k] = a[k, p].conjugate()
                a[q, k] = a[k, q].conjugate()

            a[p, p] = app * c * c - 2.0 * c * s * r + aqq * s * s
            a[q, q] = app * s * s + 2.0 * c * s * r + aqq * c * c
            a[p, q] = 0.0
            a[q, p] = 0.0

            if vectors:
                for k in range(4):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - spc * vkq
                    v[k, q] = sp * vkp + c * vkq

    w = np.array([a[i, i].real for i in range(4)])
    order = np.argsort(w, kind="stable")
    w = w[order]
    if vectors:
        v = v[:, order]
    return w, v


def jacobi_eigvals(m):
    """Ascending eigenvalues of a 4x4 complex Hermitian matrix."""
    w, _ = jacobi_eigh(m, vectors=False)
    return w


def sqrt_psd(m):
    """Principal square root of a PSD 4x4 Hermitian matrix.

    Eigenvalues that round off slightly negative are clamped at zero;
    validation against genuinely indefinite input lives in the callers.
    """
    w, v = jacobi_eigh(m, vectors=True)
    w = np.sqrt(np.maximum(w, 0.0))
    return (v * w) @ v.conj().T


_EPS = 2.220446049250313e-16


def fidelity_from_sqrt(sqrt_rho, sigma) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt_rho sigma sqrt_rho))^2 given sqrt_rho.

    Eigenvalues of the inner product below 32*eps times the largest one are
    round-off dust from rank-deficient factors; they are dropped before the
    square root, which would otherwise amplify them from O(eps) to O(1e-8).
    """
    inner = sqrt_rho @ np.asarray(sigma, dtype=np.complex128) @ sqrt_rho
    w = jacobi_eigvals(inner)
    if w[3] <= 0.0:
        return 0.0
    tol = 32.0 * _EPS * w[3]
    t = 0.0
    for i in range(4):
        if w[i] > tol:
            t += sqrt(w[i])
    f = t * t
    if f > 1.0:
        f = 1.0
    return f


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity of two 4x4 density matrices."""
    return fidelity_from_sqrt(sqrt_psd(rho), sigma)


def product_density(a1, a2, a3, b1, b2, b3):
    """Density matrix of the two-qubit product state with the given Bloch vectors."""
    ra = 0.5 * np.array([[1.0 + a3, a1 - 1j * a2], [a1 + 1j * a2, 1.0 - a3]])
    rb = 0.5 * np.array([[1.0 + b3, b1 - 1j * b2], [b1 + 1j * b2, 1.0 - b3]])
    return np.kron(ra, rb)


def product_fidelity_from_sqrt(sqrt_rho, a1, a2, a3, b1, b2, b3) -> float:
    """Fidelity between rho (via sqrt_rho) and the product state of two Bloch vectors."""
    return fidelity_from_sqrt(sqrt_rho, product_density(a1, a2, a3, b1, b2, b3))
