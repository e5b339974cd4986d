"""Pure-dephasing dynamics of Bell-diagonal states and correlation freezing.

Two noninteracting qubits couple to identical zero-temperature bosonic baths
with spectral density J(w) = w^s / w_c^(s-1) * exp(-w/w_c). In dimensionless
time nu = w_c t the induced map keeps the state Bell-diagonal and rescales

    c1(nu) = q^2(nu) c1(0),  c2(nu) = q^2(nu) c2(0),  c3(nu) = c3(0)

with q = exp(-Upsilon), Upsilon(nu) = 2 * integral of the dephasing rate

    gamma(nu)/w_c = (1 + nu^2)^(-s/2) Gamma(s) sin(s arctan nu).

For s > 2 the rate changes sign (non-Markovian regime) and q^2 saturates at
a positive plateau, which is what makes indefinite freezing of quantum
correlations possible while entanglement still dies at finite time.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan, exp, gamma as gamma_fn, log, sin

import numpy as np

from . import _quadrature
from .closed_form import CorrelationReport, full_report
from .errors import DomainError
from .states import BellDiagonalState, bd_from_c

_QUAD_REL_TOL = 1e-10
_QUAD_ABS_TOL = 1e-14
ESD_SEARCH_NU_MAX = 200.0
_EVENT_BISECT_TOL = 1e-10


@dataclass(frozen=True)
class BathSpec:
    """Super-Ohmic bath: Ohmicity exponent s and cutoff frequency omega_c.

    All dynamics run in the dimensionless time nu = omega_c * t, so omega_c
    only fixes the physical time scale of a reported nu.
    """

    s: float
    omega_c: float = 1.0

    def __post_init__(self):
        if self.s <= 0.0:
            raise DomainError(f"Ohmicity parameter s={self.s} must be > 0")
        if self.omega_c <= 0.0:
            raise DomainError(f"cutoff omega_c={self.omega_c} must be > 0")


@dataclass(frozen=True)
class DynamicsTrace:
    """Correlation time series on a uniform nu grid plus detected events."""

    nu_grid: np.ndarray
    states: tuple[BellDiagonalState, ...]
    reports: tuple[CorrelationReport, ...]
    t_star: float | None
    esd_time: float | None


def dephasing_rate(nu: float, s: float) -> float:
    """Dephasing rate in units of omega_c at dimensionless time nu."""
    if s <= 0.0:
        raise DomainError(f"Ohmicity parameter s={s} must be > 0")
    if nu < 0.0:
        raise DomainError(f"dimensionless time nu={nu} must be >= 0")
    return (1.0 + nu * nu) ** (-0.5 * s) * gamma_fn(s) * sin(s * atan(nu))


def dephasing_factor(nu: float, s: float) -> float:
    """Dephasing factor Upsilon(nu) = 2 * integral_0^nu of the rate."""
    if s <= 0.0:
        raise DomainError(f"Ohmicity parameter s={s} must be > 0")
    if nu < 0.0:
        raise DomainError(f"dimensionless time nu={nu} must be >= 0")
    if nu == 0.0:
        return 0.0
    return 2.0 * _quadrature.integrate(
        lambda x: dephasing_rate(x, s), 0.0, nu,
        rel_tol=_QUAD_REL_TOL, abs_tol=_QUAD_ABS_TOL,
    )


def q_squared(nu: float, s: float) -> float:
    """Coherence scaling q^2(nu) = exp(-2 Upsilon(nu)) of the c1, c2 coefficients."""
    return exp(-2.0 * dephasing_factor(nu, s))


def dephasing_factor_limit(s: float, tail_tol: float = 1e-6) -> float:
    """Plateau value of Upsilon as nu -> infinity (requires s > 1).

    Integrates out to a horizon where the analytic tail bound
    2 Gamma(s) nu^(1-s) / (s-1) drops below ``tail_tol``.
    """
    if s <= 1.0:
        raise DomainError(f"the dephasing factor diverges for s={s} <= 1")
    horizon = (2.0 * gamma_fn(s) / ((s - 1.0) * tail_tol)) ** (1.0 / (s - 1.0))
    horizon = min(max(horizon, 100.0), 1e6)
    return dephasing_factor(horizon, s)


def evolve(state0: BellDiagonalState, nu: float, s: float) -> BellDiagonalState:
    """State after dephasing for dimensionless time nu."""
    return _evolve_q2(state0, q_squared(nu, s))


def _evolve_q2(state0: BellDiagonalState, q2: float) -> BellDiagonalState:
    return bd_from_c(q2 * state0.c1, q2 * state0.c2, state0.c3)


def dephasing_channel(rho, q: float):
    """Induced two-qubit dephasing channel on an arbitrary density matrix.

    Each local channel multiplies single-qubit coherences by q, so the
    entry (i, j) picks up one q factor per qubit whose bit differs between
    i and j. CPTP for q in [0, 1]; used by the contractivity checks.
    """
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"coherence factor q={q} outside [0, 1]")
    m = np.array(getattr(rho, "matrix", rho), dtype=np.complex128, copy=True)
    factors = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            d = ((i ^ j) >> 1 & 1) + ((i ^ j) & 1)
            factors[i, j] = q**d
    return m * factors


def _upsilon_grid(nu_grid, s: float) -> np.ndarray:
    """Cumulative Upsilon over an ascending grid, one adaptive panel per segment."""
    ups = np.empty(len(nu_grid))
    rate = lambda x: dephasing_rate(x, s)
    prev = nu_grid[0]
    ups[0] = 2.0 * _quadrature.integrate(
        rate, 0.0, prev, rel_tol=_QUAD_REL_TOL, abs_tol=_QUAD_ABS_TOL
    ) if prev > 0.0 else 0.0
    acc = ups[0]
    for i in range(1, len(nu_grid)):
        acc += 2.0 * _quadrature.integrate(
            rate, prev, nu_grid[i], rel_tol=_QUAD_REL_TOL, abs_tol=_QUAD_ABS_TOL
        )
        ups[i] = acc
        prev = nu_grid[i]
    return ups


def trace_correlations(state0: BellDiagonalState, bath: BathSpec,
                       nu_max: float, n_points: int) -> DynamicsTrace:
    """Correlations on a uniform grid over [0, nu_max], with event detection."""
    if n_points < 2:
        raise DomainError(f"n_points={n_points} must be >= 2")
    if nu_max <= 0.0:
        raise DomainError(f"nu_max={nu_max} must be > 0")
    nu_grid = np.linspace(0.0, nu_max, n_points)
    ups = _upsilon_grid(nu_grid, bath.s)
    states = tuple(_evolve_q2(state0, exp(-2.0 * u)) for u in ups)
    reports = tuple(full_report(st) for st in states)
    return DynamicsTrace(
        nu_grid=nu_grid,
        states=states,
        reports=reports,
        t_star=find_transition_time(state0, bath),
        esd_time=find_esd_time(state0, bath),
    )


def _bisect_upsilon(target: float, s: float, lo: float, hi: float) -> float:
    """First nu with Upsilon(nu) = target, assuming Upsilon(lo) < target <= Upsilon(hi)."""
    while hi - lo > _EVENT_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if dephasing_factor(mid, s) >= target:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def find_transition_time(state0: BellDiagonalState, bath: BathSpec) -> float | None:
    """Sudden-transition time nu*: the root of q^2(nu) |c_max(0)| = |c3(0)|.

    c_max is the larger of |c1(0)|, |c2(0)|. At that instant the largest
    coefficient magnitude switches from the decaying transverse pair to the
    frozen c3, which swaps the closest-classical-quantum axis. Returns None
    when |c3(0)| >= c_max (the axis is 3 from the start) and when the q^2
    plateau never reaches |c3|/c_max (indefinite freezing, only possible for
    s > 1 where the dephasing factor saturates).
    """
    c_max = max(abs(state0.c1), abs(state0.c2))
    c3 = abs(state0.c3)
    if c3 >= c_max or c3 == 0.0:
        return None
    target = -0.5 * log(c3 / c_max)
    if bath.s > 1.0 and dephasing_factor_limit(bath.s) < target:
        return None
    hi = 1.0
    while dephasing_factor(hi, bath.s) < target:
        hi *= 2.0
        if hi > 1e9:
            return None
    return _bisect_upsilon(target, bath.s, 0.0, hi)


def _concurrence_gap(state0: BellDiagonalState, q2: float) -> float:
    """lambda_max - (other three) = 2 lambda_max - 1 of the evolved spectrum."""
    d12 = 0.25 * (state0.c1 - state0.c2)
    s12 = 0.25 * (state0.c1 + state0.c2)
    base_a = 0.25 * (1.0 + state0.c3)
    base_g = 0.25 * (1.0 - state0.c3)
    lam = max(base_a + d12 * q2, base_a - d12 * q2,
              base_g + s12 * q2, base_g - s12 * q2)
    return 2.0 * lam - 1.0


def find_esd_time(state0: BellDiagonalState, bath: BathSpec,
                  nu_max_search: float = ESD_SEARCH_NU_MAX) -> float | None:
    """Entanglement sudden-death time: first zero of the concurrence.

    Returns 0.0 for initially separable states, None if the concurrence
    stays positive up to ``nu_max_search`` (the scan stops early once q^2
    has reached its plateau, after which nothing changes).
    """
    if _concurrence_gap(state0, 1.0) <= 0.0:
        return 0.0
    s = bath.s
    plateau = dephasing_factor_limit(s) if s > 1.0 else None

    step = 0.05
    n_steps = int(nu_max_search / step) + 1
    grid = np.linspace(0.0, step * n_steps, n_steps + 1)
    ups = _upsilon_grid(grid, s)
    prev_nu = 0.0
    for i in range(1, len(grid)):
        gap = _concurrence_gap(state0, exp(-2.0 * ups[i]))
        if gap <= 0.0:
            lo, hi = prev_nu, grid[i]
            while hi - lo > _EVENT_BISECT_TOL:
                mid = 0.5 * (lo + hi)
                if _concurrence_gap(state0, q_squared(mid, s)) <= 0.0:
                    hi = mid
                else:
                    lo = mid
            return 0.5 * (lo + hi)
        if plateau is not None and abs(ups[i] - plateau) < 1e-12:
            return None
        prev_nu = grid[i]
    return None
