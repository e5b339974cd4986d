# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: 4x4 complex Hermitian Jacobi eigensolver, PSD
square root, and the Uhlmann-fidelity evaluations driven millions of times
by the optimization oracles.

Mirror of ``_kernels_py``; both backends must produce matching numbers
(same rotation order, same thresholds, no fast-math)."""

from libc.math cimport sqrt, fabs

import numpy as np

BACKEND = "compiled"

cdef double OFFDIAG_TOL = 1e-14
cdef int MAX_SWEEPS = 100
cdef double EPS = 2.220446049250313e-16

cdef int PAIR_P[6]
cdef int PAIR_Q[6]
PAIR_P[0] = 0; PAIR_Q[0] = 1
PAIR_P[1] = 0; PAIR_Q[1] = 2
PAIR_P[2] = 0; PAIR_Q[2] = 3
PAIR_P[3] = 1; PAIR_Q[3] = 2
PAIR_P[4] = 1; PAIR_Q[4] = 3
PAIR_P[5] = 2; PAIR_Q[5] = 3


cdef void _jacobi(double complex a[4][4], double w[4], double complex v[4][4],
                  bint vectors) noexcept nogil:
    cdef int sweep, idx, p, q, k, i, j
    cdef double off, r, app, aqq, tau, t, c, s, wt
    cdef double complex apq, phase, sp, spc, akp, akq, vkp, vkq
    cdef int order[4]

    if vectors:
        for i in range(4):
            for j in range(4):
                v[i][j] = 1.0 if i == j else 0.0

    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for idx in range(6):
            r = abs(a[PAIR_P[idx]][PAIR_Q[idx]])
            if r > off:
                off = r
        if off < OFFDIAG_TOL:
            break
        for idx in range(6):
            p = PAIR_P[idx]
            q = PAIR_Q[idx]
            apq = a[p][q]
            r = abs(apq)
            if r < OFFDIAG_TOL:
                a[p][q] = 0.0
                a[q][p] = 0.0
                continue
            phase = apq / r
            app = a[p][p].real
            aqq = a[q][q].real
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
                akp = a[k][p]
                akq = a[k][q]
                a[k][p] = c * akp - spc * akq
                a[k][q] = sp * akp + c * akq
                a[p][k] = a[k][p].conjugate()
                a[q][k] = a[k][q].conjugate()

            a[p][p] = app * c * c - 2.0 * c * s * r + aqq * s * s
            a[q][q] = app * s * s + 2.0 * c * s * r + aqq * c * c
            a[p][q] = 0.0
            a[q][p] = 0.0

            if vectors:
                for k in range(4):
                    vkp = v[k][p]
                    vkq = v[k][q]
                    v[k][p] = c * vkp - spc * vkq
                    v[k][q] = sp * vkp + c * vkq

    for i in range(4):
        w[i] = a[i][i].real
        order[i] = i
    # insertion sort, stable on ties
    for i in range(1, 4):
        wt = w[i]
        k = order[i]
        j = i - 1
        while j >= 0 and w[j] > wt:
            w[j + 1] = w[j]
            order[j + 1] = order[j]
            j -= 1
        w[j + 1] = wt
        order[j + 1] = k
    if vectors:
        for i in range(4):
            for j in range(4):
                a[i][j] = v[i][order[j]]
        for i in range(4):
            for j in range(4):
                v[i][j] = a[i][j]


cdef void _load(object m, double complex a[4][4]):
    cdef const double complex[:, :] mv = np.ascontiguousarray(m, dtype=np.complex128)
    cdef int i, j
    for i in range(4):
        for j in range(4):
            a[i][j] = 0.5 * (mv[i, j] + mv[j, i].conjugate())


def jacobi_eigh(m, bint vectors=True):
    """Eigenvalues (ascending) and eigenvectors of a 4x4 complex Hermitian matrix."""
    cdef double complex a[4][4]
    cdef double complex v[4][4]
    cdef double w[4]
    cdef int i, j
    _load(m, a)
    _jacobi(a, w, v, vectors)
    w_out = np.empty(4)
    for i in range(4):
        w_out[i] = w[i]
    if not vectors:
        return w_out, None
    v_out = np.empty((4, 4), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            v_out[i, j] = v[i][j]
    return w_out, v_out


def jacobi_eigvals(m):
    """Ascending eigenvalues of a 4x4 complex Hermitian matrix."""
    w, _ = jacobi_eigh(m, vectors=False)
    return w


cdef void _sqrt_psd(double complex a[4][4], double complex out[4][4]) noexcept nogil:
    cdef double complex v[4][4]
    cdef double w[4]
    cdef int i, j, k
    cdef double complex acc
    _jacobi(a, w, v, True)
    for i in range(4):
        w[i] = sqrt(w[i]) if w[i] > 0.0 else 0.0
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc = acc + v[i][k] * w[k] * v[j][k].conjugate()
            out[i][j] = acc


def sqrt_psd(m):
    """Principal square root of a PSD 4x4 Hermitian matrix (negatives clamped)."""
    cdef double complex a[4][4]
    cdef double complex s[4][4]
    cdef int i, j
    _load(m, a)
    _sqrt_psd(a, s)
    out = np.empty((4, 4), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            out[i, j] = s[i][j]
    return out


cdef double _fidelity_inner(double complex s[4][4], double complex sig[4][4]) noexcept nogil:
    cdef double complex tmp[4][4]
    cdef double complex inner[4][4]
    cdef double complex v[4][4]
    cdef double w[4]
    cdef double complex acc
    cdef int i, j, k
    cdef double t, f, tol
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc = acc + s[i][k] * sig[k][j]
            tmp[i][j] = acc
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc = acc + tmp[i][k] * s[k][j]
            inner[i][j] = acc
    # hermitize before the eigensolve, as the python backend does implicitly
    for i in range(4):
        for j in range(i + 1, 4):
            acc = 0.5 * (inner[i][j] + inner[j][i].conjugate())
            inner[i][j] = acc
            inner[j][i] = acc.conjugate()
    _jacobi(inner, w, v, False)
    if w[3] <= 0.0:
        return 0.0
    tol = 32.0 * EPS * w[3]
    t = 0.0
    for i in range(4):
        if w[i] > tol:
            t += sqrt(w[i])
    f = t * t
    if f > 1.0:
        f = 1.0
    return f


def fidelity_from_sqrt(sqrt_rho, sigma):
    """Uhlmann fidelity (Tr sqrt(sqrt_rho sigma sqrt_rho))^2 given sqrt_rho."""
    cdef double complex s[4][4]
    cdef double complex sig[4][4]
    cdef const double complex[:, :] sv = np.ascontiguousarray(sqrt_rho, dtype=np.complex128)
    cdef int i, j
    for i in range(4):
        for j in range(4):
            s[i][j] = sv[i, j]
    _load(sigma, sig)
    return _fidelity_inner(s, sig)


def fidelity(rho, sigma):
    """Uhlmann fidelity of two 4x4 density matrices."""
    cdef double complex a[4][4]
    cdef double complex s[4][4]
    cdef double complex sig[4][4]
    _load(rho, a)
    _sqrt_psd(a, s)
    _load(sigma, sig)
    return _fidelity_inner(s, sig)


cdef void _product(double a1, double a2, double a3, double b1, double b2, double b3,
                   double complex pi[4][4]) noexcept nogil:
    cdef double complex ra[2][2]
    cdef double complex rb[2][2]
    cdef int i, j, k, l
    ra[0][0] = 0.5 * (1.0 + a3)
    ra[0][1] = 0.5 * (a1 - 1j * a2)
    ra[1][0] = 0.5 * (a1 + 1j * a2)
    ra[1][1] = 0.5 * (1.0 - a3)
    rb[0][0] = 0.5 * (1.0 + b3)
    rb[0][1] = 0.5 * (b1 - 1j * b2)
    rb[1][0] = 0.5 * (b1 + 1j * b2)
    rb[1][1] = 0.5 * (1.0 - b3)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    pi[2 * i + k][2 * j + l] = ra[i][j] * rb[k][l]


def product_density(double a1, double a2, double a3, double b1, double b2, double b3):
    """Density matrix of the two-qubit product state with the given Bloch vectors."""
    cdef double complex pi[4][4]
    cdef int i, j
    _product(a1, a2, a3, b1, b2, b3, pi)
    out = np.empty((4, 4), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            out[i, j] = pi[i][j]
    return out


def product_fidelity_from_sqrt(sqrt_rho, double a1, double a2, double a3,
                               double b1, double b2, double b3):
    """Fidelity between rho (via sqrt_rho) and the product state of two Bloch vectors."""
    cdef double complex s[4][4]
    cdef double complex pi[4][4]
    cdef const double complex[:, :] sv = np.ascontiguousarray(sqrt_rho, dtype=np.complex128)
    cdef int i, j
    for i in range(4):
        for j in range(4):
            s[i][j] = sv[i, j]
    _product(a1, a2, a3, b1, b2, b3, pi)
    return _fidelity_inner(s, pi)
