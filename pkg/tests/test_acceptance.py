"""Acceptance suite: every release criterion at its stated tolerance.

Each test prints one PASS/FAIL line (visible with ``pytest -s`` or in the
captured output of a failure). The batch criteria use the same seeds every
run; nothing here is statistical beyond the documented sample counts.
"""

import os
import time
from contextlib import contextmanager
from math import log, sqrt

import numpy as np
import pytest
from click.testing import CliRunner

from burescorr import (
    BathSpec,
    SearchConfig,
    bd_from_c,
    bd_from_eigenvalues,
    bd_to_density,
    bures_distance,
    classical_correlations,
    classical_oracle,
    closest_product,
    dephasing_factor,
    evolve,
    find_esd_time,
    find_transition_time,
    full_report,
    max_fidelity_over_products,
    quantum_correlations,
    random_bd,
    rank2_report,
    trace_correlations,
    uhlmann_fidelity,
    verify_cq_batch,
    werner_report,
)
from burescorr.closed_form import Branch, WERNER_T_BRANCH_R, classical_fidelity_value
from burescorr.cli import main as cli_main
from burescorr.dynamics import dephasing_channel
from burescorr.fidelity import hermitian_eig
from burescorr.oracle import product_witness_params

from conftest import qubit_fidelity, random_density, random_qubit_density

WORKERS = min(4, os.cpu_count() or 1)
BELL_VALUE = sqrt(2 - sqrt(2))


@contextmanager
def criterion(number: int, label: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number:02d} FAIL  {label}")
        raise
    print(f"ACCEPTANCE {number:02d} PASS  {label} ({time.perf_counter() - start:.1f}s)")


def test_criterion_01_cq_oracle_agreement():
    with criterion(1, "CQ oracle matches (1 + 2 Lambda_max)/2 on 200 states at 1e-6"):
        summary = verify_cq_batch(
            200, SearchConfig(restarts=8, max_iters=250, xtol=1e-5, rng_seed=101),
            workers=WORKERS,
        )
        assert summary.violations == 0
        assert abs(summary.max_gap) < 1e-6


def test_criterion_02_product_ansatz_replication():
    with criterion(2, "cmd_verify --samples 10000 --mode product has 0 violations"):
        result = CliRunner().invoke(
            cli_main,
            ["verify", "--samples", "10000", "--seed", "7", "--mode", "product"],
            catch_exceptions=False,
        )
        assert result.exit_code == 0
        row = result.output.strip().split("\n")[1].split(",")
        assert row[0] == "product" and row[1] == "10000"
        assert int(row[2]) == 0
        assert float(row[3]) < 1e-6


def test_criterion_03_classical_optimum_grid():
    with criterion(3, "reference-family maximum at the origin over s3 in [3/5, 1]"):
        for s3 in np.linspace(0.6, 1.0, 50):
            state = bd_from_c(0.0, 0.0, s3)
            res = classical_oracle(state)
            assert np.max(np.abs(res.argmax)) < 1e-6
            assert abs(res.best_value - classical_fidelity_value(state)) < 1e-9


def test_criterion_04_perturbation_figure_reproduction():
    with criterion(4, "closest product of the perturbation-check state: l=3, PLUS, |a|=0.725398"):
        state = bd_from_eigenvalues((0.874168, 0.001239, 0.026908, 0.097685))
        w = closest_product(state)
        assert w.l == 3
        assert w.branch is Branch.PLUS
        assert abs(abs(w.a) - 0.725398) < 1e-5

        res = max_fidelity_over_products(
            bd_to_density(state), SearchConfig(restarts=8, rng_seed=104),
            seeds=[product_witness_params(state)],
        )
        a3, b3 = res.argmax[2], res.argmax[5]
        assert abs(abs(a3) - 0.725398) < 1e-3
        assert abs(a3 - b3) < 1e-3
        # the mirrored point is the second maximum
        from burescorr._backend import kernels

        s = kernels.sqrt_psd(bd_to_density(state).matrix)
        mirrored = kernels.product_fidelity_from_sqrt(s, 0.0, 0.0, -a3, 0.0, 0.0, -b3)
        assert abs(mirrored - res.best_value) < 1e-9


def test_criterion_05_werner_sweep():
    with criterion(5, "Werner family: E threshold at r=1/3, T branch switch at (1+sqrt(5))/4"):
        for r in np.linspace(0.0, 1 / 3, 200):
            assert werner_report(r).E <= 1e-9
        assert werner_report(1 / 3 + 1e-3).E > 0.0

        # branch switch located by the label change at step 1e-4
        rc = WERNER_T_BRANCH_R
        rs = np.arange(rc - 0.002, rc + 0.002, 1e-4)
        labels = [closest_product(bd_from_c(r, -r, r)).branch for r in rs]
        switches = [
            0.5 * (rs[i] + rs[i + 1])
            for i in range(len(rs) - 1)
            if labels[i] is not labels[i + 1]
        ]
        assert len(switches) == 1
        assert abs(switches[0] - rc) < 1e-4

        ts = [werner_report(r).T for r in rs]
        assert np.max(np.abs(np.diff(ts))) < 1e-3

        end = werner_report(1.0)
        for v in (end.E, end.Q, end.C, end.T):
            assert abs(v - BELL_VALUE) < 1e-10


def test_criterion_06_rank2_sweep():
    with criterion(6, "rank-2 family: C=T=sqrt(2-sqrt(2)) and E=Q at 1e-10 for 100 points"):
        for c in np.linspace(0.0, 0.99, 100):
            rep = full_report(bd_from_eigenvalues(((1 - c) / 2, (1 + c) / 2, 0.0, 0.0)))
            assert abs(rep.C - BELL_VALUE) < 1e-10
            assert abs(rep.T - BELL_VALUE) < 1e-10
            assert abs(rep.E - rep.Q) < 1e-10
            closed = rank2_report(c)
            assert abs(closed.E - rep.E) < 1e-10


def test_criterion_07_global_inequalities():
    with criterion(7, "Q >= E and T <= Q + C over 1e5 seeded random states"):
        violations = 0
        for i in range(100_000):
            rep = full_report(random_bd(107, i))
            if rep.Q < rep.E - 1e-10 or rep.T > rep.Q + rep.C + 1e-10:
                violations += 1
        assert violations == 0


def test_criterion_08_freezing_dynamics():
    with criterion(8, "sudden transition and freezing plateaus for (1,-0.6,0.6), s=2.5"):
        state0 = bd_from_c(1.0, -0.6, 0.6)
        bath = BathSpec(2.5)
        trace = trace_correlations(state0, bath, 30.0, 2000)

        assert trace.t_star is not None
        assert abs(dephasing_factor(trace.t_star, 2.5) - (-log(0.6) / 2)) < 1e-8

        q = np.array([r.Q for r in trace.reports])
        c = np.array([r.C for r in trace.reports])
        e = np.array([r.E for r in trace.reports])
        pre = trace.nu_grid <= trace.t_star
        post = trace.nu_grid >= trace.t_star

        star_state = evolve(state0, trace.t_star, 2.5)
        q_star = quantum_correlations(star_state)
        c_star = classical_correlations(star_state)
        assert np.max(np.abs(q[pre] - q[0])) < 1e-8
        assert np.max(np.abs(c[post] - c_star)) < 1e-8
        assert abs(q_star - c_star) < 1e-7

        assert trace.esd_time is not None and trace.esd_time > 0
        assert np.all(e[trace.nu_grid >= trace.esd_time] == 0.0)


def test_criterion_09_indefinite_freezing():
    with criterion(9, "indefinite freezing for (1,-0.02,0.02), s=2.5, with finite ESD"):
        state0 = bd_from_c(1.0, -0.02, 0.02)
        bath = BathSpec(2.5)
        assert find_transition_time(state0, bath) is None
        trace = trace_correlations(state0, bath, 200.0, 2000)
        assert trace.t_star is None
        q = np.array([r.Q for r in trace.reports])
        assert np.max(np.abs(q - q[0])) < 1e-8
        esd = find_esd_time(state0, bath)
        assert esd is not None and 0 < esd < 200.0


def test_criterion_10_fidelity_engine_properties(rng):
    with criterion(10, "fidelity symmetry/invariance/multiplicativity/concavity/contractivity on 1e3 pairs"):
        for _ in range(1000):
            r1, r2 = random_density(rng), random_density(rng)

            assert abs(uhlmann_fidelity(r1, r2) - uhlmann_fidelity(r2, r1)) < 1e-10

            u = hermitian_eig(random_density(rng)).eigenvectors
            assert abs(
                uhlmann_fidelity(u @ r1 @ u.conj().T, u @ r2 @ u.conj().T)
                - uhlmann_fidelity(r1, r2)
            ) < 1e-10

            a1, b1 = random_qubit_density(rng), random_qubit_density(rng)
            a2, b2 = random_qubit_density(rng), random_qubit_density(rng)
            assert abs(
                uhlmann_fidelity(np.kron(a1, a2), np.kron(b1, b2))
                - qubit_fidelity(a1, b1) * qubit_fidelity(a2, b2)
            ) < 1e-10

            p = rng.uniform(0.1, 0.9)
            s1, s2 = random_density(rng), random_density(rng)
            assert (
                uhlmann_fidelity(r1, p * s1 + (1 - p) * s2)
                >= p * uhlmann_fidelity(r1, s1) + (1 - p) * uhlmann_fidelity(r1, s2) - 1e-10
            )

            qf = rng.uniform(0.0, 1.0)
            assert (
                bures_distance(dephasing_channel(r1, qf), dephasing_channel(r2, qf))
                <= bures_distance(r1, r2) + 1e-9
            )
