"""Closed-form Bures correlation quantifiers for Bell-diagonal states.

Four quantities, all of the form sqrt(2 (1 - sqrt(F))) for a branch-specific
fidelity F:

* entanglement E       - distance to the separable set, via the concurrence;
* quantum Q            - distance to the classical-quantum set, via the
                         pairwise square-root eigenvalue sums Lambda_i;
* classical C          - distance from the closest classical-quantum state
                         to its nearest product state;
* total T              - distance to the product-state set, via a
                         three-branch closest-product ansatz.

Each quantifier also exposes its minimizer witness, so the optimization
oracles can start from (and independently confirm) the analytic optimum.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import sqrt

from .errors import BranchInconsistency, DomainError
from .states import BdEigenvalues, BellDiagonalState, bd_eigenvalues, bd_from_c, bd_from_eigenvalues

SQRT2 = sqrt(2.0)
WERNER_T_BRANCH_R = (1.0 + sqrt(5.0)) / 4.0


class Branch(enum.Enum):
    """Which closest-product branch applies: aligned Bloch vectors (PLUS),
    anti-aligned (MINUS), or the product of the marginals (ZERO)."""

    PLUS = "PLUS"
    MINUS = "MINUS"
    ZERO = "ZERO"


@dataclass(frozen=True)
class ClosestCqWitness:
    """Closest classical-quantum state: index k of the surviving coefficient,
    its value s_k, and the state itself."""

    k: int
    s_k: float
    chi: BellDiagonalState


@dataclass(frozen=True)
class ClosestProductWitness:
    """Closest product state: axis l, Bloch components (a, b) along it,
    selected branch, and the reordered eigenvalues mu backing the formulas."""

    l: int
    a: float
    b: float
    branch: Branch
    mu: tuple[float, float, float, float]


@dataclass(frozen=True)
class CorrelationReport:
    """All four quantifiers of one state plus both minimizer witnesses."""

    E: float
    Q: float
    C: float
    T: float
    cq_witness: ClosestCqWitness
    product_witness: ClosestProductWitness

    def __post_init__(self):
        for name, v in (("E", self.E), ("Q", self.Q), ("C", self.C), ("T", self.T)):
            if not -1e-12 <= v <= SQRT2 + 1e-12:
                raise BranchInconsistency(f"{name}={v} outside [0, sqrt(2)]")
        if self.E > self.Q + 1e-10:
            raise BranchInconsistency(f"E={self.E} exceeds Q={self.Q}")
        if self.T > self.Q + self.C + 1e-10:
            raise BranchInconsistency(f"T={self.T} exceeds Q+C={self.Q + self.C}")


def _distance_from_fidelity(f: float) -> float:
    return sqrt(2.0 * max(1.0 - sqrt(min(max(f, 0.0), 1.0)), 0.0))


def lambdas(ev: BdEigenvalues) -> tuple[float, float, float]:
    """Pairwise square-root eigenvalue sums (Lambda_1, Lambda_2, Lambda_3)."""
    a, b, g, d = ev.as_tuple()
    return (
        sqrt(a * g) + sqrt(b * d),
        sqrt(a * d) + sqrt(b * g),
        sqrt(a * b) + sqrt(g * d),
    )


def s_params(ev: BdEigenvalues) -> tuple[float, float, float]:
    """Surviving-coefficient values (s_1, s_2, s_3) of the closest
    classical-quantum state for each candidate axis."""
    a, b, g, d = ev.as_tuple()
    l1, l2, l3 = lambdas(ev)
    s1 = (a + g - b - d + 2.0 * (sqrt(a * g) - sqrt(b * d))) / (1.0 + 2.0 * l1)
    s2 = (b + g - a - d + 2.0 * (sqrt(b * g) - sqrt(a * d))) / (1.0 + 2.0 * l2)
    s3 = (a + b - g - d + 2.0 * (sqrt(a * b) - sqrt(g * d))) / (1.0 + 2.0 * l3)
    return (s1, s2, s3)


def _argmax_abs(c: tuple[float, float, float]) -> int:
    """Index (1-based) of the largest |c_i|; ties take the smallest index."""
    best = 0
    for i in (1, 2):
        if abs(c[i]) > abs(c[best]):
            best = i
    return best + 1


def _argmin_abs(c: tuple[float, float, float]) -> int:
    """Index (1-based) of the smallest |c_i|; ties take the smallest index."""
    best = 0
    for i in (1, 2):
        if abs(c[i]) < abs(c[best]):
            best = i
    return best + 1


def closest_cq(state: BellDiagonalState) -> ClosestCqWitness:
    """Closest classical-quantum state: keeps only the coefficient of
    largest magnitude, shrunk to s_k."""
    k = _argmax_abs(state.c)
    s = s_params(bd_eigenvalues(state))[k - 1]
    coeffs = [0.0, 0.0, 0.0]
    coeffs[k - 1] = s
    return ClosestCqWitness(k, s, bd_from_c(*coeffs))


def cq_fidelity(state: BellDiagonalState) -> float:
    """Fidelity (1 + 2 Lambda_max) / 2 between a state and its closest
    classical-quantum state."""
    return 0.5 * (1.0 + 2.0 * max(lambdas(bd_eigenvalues(state))))


def quantum_correlations(state: BellDiagonalState) -> float:
    """Bures distance to the classical-quantum set."""
    return _distance_from_fidelity(cq_fidelity(state))


def concurrence(state: BellDiagonalState) -> float:
    """Two-qubit concurrence max{0, l1 - l2 - l3 - l4} over the sorted spectrum."""
    ev = sorted(bd_eigenvalues(state).as_tuple(), reverse=True)
    return max(0.0, ev[0] - ev[1] - ev[2] - ev[3])


def entanglement(state: BellDiagonalState) -> float:
    """Bures distance to the separable set, through the concurrence."""
    con = concurrence(state)
    return _distance_from_fidelity(0.5 * (1.0 + sqrt(max(1.0 - con * con, 0.0))))


def classical_fidelity_value(state: BellDiagonalState) -> float:
    """Fidelity between the closest classical-quantum state and its nearest
    product state (the product of the marginals)."""
    ls = lambdas(bd_eigenvalues(state))
    return (1.0 + 2.0 * sum(ls)) / (2.0 * (1.0 + 2.0 * max(ls)))


def classical_correlations(state: BellDiagonalState) -> float:
    """Bures classical correlations."""
    return _distance_from_fidelity(classical_fidelity_value(state))


_MU_ORDER = {1: (0, 2, 1, 3), 2: (1, 2, 0, 3), 3: (0, 1, 2, 3)}


def closest_product(state: BellDiagonalState) -> ClosestProductWitness:
    """Closest product state to a Bell-diagonal state.

    The minimizer has Bloch vectors along the axis l of the smallest |c_l|,
    with magnitudes a and b = sign(c_l) a. The PLUS/MINUS branches hold when
    the corresponding strict separation condition on the reordered
    eigenvalues mu is met; otherwise the product of the marginals wins
    (ZERO, a = b = 0). Of the two symmetric maximizers +-a only the
    nonnegative representative is reported.
    """
    c = state.c
    l = _argmin_abs(c)
    ev = bd_eigenvalues(state).as_tuple()
    mu = tuple(ev[i] for i in _MU_ORDER[l])
    cl = c[l - 1]

    r1, r2, r3, r4 = (sqrt(m) for m in mu)
    plus_ok = (r1 - r2) ** 2 > (r3 + r4) * (r1 + r2)
    minus_ok = (r3 - r4) ** 2 > (r1 + r2) * (r3 + r4)

    if cl > 0.0 and plus_ok:
        branch = Branch.PLUS
    elif cl < 0.0 and minus_ok:
        branch = Branch.MINUS
    elif cl == 0.0 and plus_ok:
        branch = Branch.PLUS
    elif cl == 0.0 and minus_ok:
        branch = Branch.MINUS
    else:
        branch = Branch.ZERO

    if branch is Branch.PLUS:
        d4 = (r1 - r2) ** 4
        cross = ((r3 + r4) * (r1 + r2)) ** 2
        a = sqrt((d4 - cross) / (d4 + (r3 + r4) ** 2 * (r1 - r2) ** 2))
        return ClosestProductWitness(l, a, a, branch, mu)
    if branch is Branch.MINUS:
        d4 = (r3 - r4) ** 4
        cross = ((r1 + r2) * (r3 + r4)) ** 2
        a = sqrt((d4 - cross) / (d4 + (r1 + r2) ** 2 * (r3 - r4) ** 2))
        return ClosestProductWitness(l, a, -a, branch, mu)
    return ClosestProductWitness(l, 0.0, 0.0, branch, mu)


def product_fidelity_value(state: BellDiagonalState) -> tuple[float, ClosestProductWitness]:
    """Maximal fidelity between a state and the product-state set, with its
    witness. Raises BranchInconsistency if the selected branch is beaten by
    another candidate (a numerics guard; it cannot happen analytically)."""
    w = closest_product(state)
    m1, m2, m3, m4 = w.mu
    r1, r2, r3, r4 = sqrt(m1), sqrt(m2), sqrt(m3), sqrt(m4)
    a, b, g, d = bd_eigenvalues(state).as_tuple()
    f0 = 0.25 * (sqrt(a) + sqrt(b) + sqrt(g) + sqrt(d)) ** 2

    candidates = {Branch.ZERO: f0}
    if (r1 - r2) ** 2 > (r3 + r4) * (r1 + r2):
        den = 2.0 * (r1 - r2) ** 2
        if den < 1e-300:
            raise BranchInconsistency("degenerate PLUS denominator")
        candidates[Branch.PLUS] = (m1 + m2) * (1.0 - 2.0 * r1 * r2 + 2.0 * r3 * r4) / den
    if (r3 - r4) ** 2 > (r1 + r2) * (r3 + r4):
        den = 2.0 * (r3 - r4) ** 2
        if den < 1e-300:
            raise BranchInconsistency("degenerate MINUS denominator")
        candidates[Branch.MINUS] = (m3 + m4) * (1.0 - 2.0 * r3 * r4 + 2.0 * r1 * r2) / den

    if w.branch not in candidates:
        raise BranchInconsistency(f"selected branch {w.branch} has no valid fidelity")
    f = candidates[w.branch]
    if f < max(candidates.values()) - 1e-12:
        raise BranchInconsistency(
            f"branch {w.branch} fidelity {f} beaten by {max(candidates.values())}"
        )
    return min(f, 1.0), w


def total_correlations(state: BellDiagonalState) -> float:
    """Bures distance to the product-state set."""
    f, _ = product_fidelity_value(state)
    return _distance_from_fidelity(f)


def full_report(state: BellDiagonalState) -> CorrelationReport:
    """All four quantifiers plus both witnesses."""
    f_total, product_witness = product_fidelity_value(state)
    return CorrelationReport(
        E=entanglement(state),
        Q=quantum_correlations(state),
        C=classical_correlations(state),
        T=_distance_from_fidelity(f_total),
        cq_witness=closest_cq(state),
        product_witness=product_witness,
    )


def werner_report(r: float) -> CorrelationReport:
    """Correlations of the Werner state r|Phi><Phi| + (1-r) I/4.

    The E, Q, C, T values come from the dedicated one-parameter formulas
    (with branch switches at r = 1/3 and r = (1+sqrt(5))/4), not from the
    generic pipeline, so the two routes can cross-validate each other;
    witnesses come from the generic minimizers of the state (r, -r, r).
    """
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"Werner parameter r={r} outside [0, 1]")
    disc = sqrt(max(1.0 + 2.0 * r - 3.0 * r * r, 0.0))
    e2 = 0.0 if r <= 1.0 / 3.0 else 2.0 - sqrt(2.0 + sqrt(3.0 * (1.0 + 2.0 * r - 3.0 * r * r)))
    q2 = 2.0 - sqrt(3.0 - r + disc)
    c2 = 2.0 - (3.0 * sqrt(1.0 - r) + sqrt(1.0 + 3.0 * r)) / sqrt(3.0 - r + disc)
    if r < WERNER_T_BRANCH_R:
        t2 = 0.5 * (4.0 - 3.0 * sqrt(1.0 - r) - sqrt(3.0 * r + 1.0))
    else:
        t2 = 2.0 - sqrt((r + 1.0) * (3.0 - r - disc) / (1.0 + r - disc))
    state = bd_from_c(r, -r, r)
    return CorrelationReport(
        E=sqrt(max(e2, 0.0)),
        Q=sqrt(max(q2, 0.0)),
        C=sqrt(max(c2, 0.0)),
        T=sqrt(max(t2, 0.0)),
        cq_witness=closest_cq(state),
        product_witness=closest_product(state),
    )


def rank2_report(c: float) -> CorrelationReport:
    """Correlations of the rank-2 state with spectrum ((1-c)/2, (1+c)/2, 0, 0).

    Closed one-parameter forms: E = Q and C = T = sqrt(2 - sqrt(2)) for the
    whole family; cross-validates the generic pipeline like werner_report.
    """
    if not 0.0 <= c < 1.0:
        raise DomainError(f"rank-2 parameter c={c} outside [0, 1)")
    eq2 = 2.0 - SQRT2 * sqrt(1.0 + sqrt(max(1.0 - c * c, 0.0)))
    ct = sqrt(2.0 - SQRT2)
    state = bd_from_eigenvalues((0.5 * (1.0 - c), 0.5 * (1.0 + c), 0.0, 0.0))
    return CorrelationReport(
        E=sqrt(max(eq2, 0.0)),
        Q=sqrt(max(eq2, 0.0)),
        C=ct,
        T=ct,
        cq_witness=closest_cq(state),
        product_witness=closest_product(state),
    )
