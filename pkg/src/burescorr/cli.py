"""Command-line interface: correlation reports, family sweeps, dynamics
traces, and oracle verification batches, all as CSV on standard output.

Exit codes: 0 success, 1 verification found violations, 2 usage or input
error. Numbers are printed with 9 significant digits; scalar results of a
dynamics trace ride in ``#``-prefixed footer comments so the column block
stays machine-readable.
"""

from __future__ import annotations

import os
import sys
import time

import click

from . import dynamics as dyn
from . import oracle
from .closed_form import full_report, rank2_report, werner_report
from .errors import BuresCorrError
from .states import bd_eigenvalues, bd_from_c


def _fmt(x) -> str:
    return f"{x:.9g}"


def _row(values) -> str:
    return ",".join(v if isinstance(v, str) else _fmt(v) for v in values)


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


@click.group()
@click.option("--parallel", type=int, default=None, metavar="N",
              help="Worker processes for batch commands (default: all cores).")
@click.pass_context
def main(ctx, parallel):
    """Bures-distance correlations of Bell-diagonal two-qubit states."""
    ctx.ensure_object(dict)
    ctx.obj["parallel"] = parallel if parallel and parallel > 0 else (os.cpu_count() or 1)


@main.command()
@click.option("--c1", type=float, required=True)
@click.option("--c2", type=float, required=True)
@click.option("--c3", type=float, required=True)
def report(c1, c2, c3):
    """Correlations and minimizer witnesses of one state."""
    try:
        state = bd_from_c(c1, c2, c3)
    except BuresCorrError:
        _fail("invalid Bell-diagonal state")
    rep = full_report(state)
    ev = bd_eigenvalues(state)
    click.echo("c1,c2,c3,alpha,beta,gamma,delta,E,Q,C,T,k,s_k,l,a,b,branch")
    click.echo(_row([
        state.c1, state.c2, state.c3,
        ev.alpha, ev.beta, ev.gamma, ev.delta,
        rep.E, rep.Q, rep.C, rep.T,
        str(rep.cq_witness.k), rep.cq_witness.s_k,
        str(rep.product_witness.l), rep.product_witness.a, rep.product_witness.b,
        rep.product_witness.branch.value,
    ]))


def _sweep(reports, params):
    click.echo("parameter,E,Q,C,T,QplusC")
    for p, rep in zip(params, reports):
        click.echo(_row([p, rep.E, rep.Q, rep.C, rep.T, rep.Q + rep.C]))


@main.command("sweep-werner")
@click.option("--steps", type=int, default=201, show_default=True)
def sweep_werner(steps):
    """Correlations of Werner states over r in [0, 1]."""
    if steps < 2:
        _fail("--steps must be >= 2")
    params = [i / (steps - 1) for i in range(steps)]
    _sweep([werner_report(r) for r in params], params)


@main.command("sweep-rank2")
@click.option("--steps", type=int, default=201, show_default=True)
def sweep_rank2(steps):
    """Correlations of rank-2 states over c in [0, 1)."""
    if steps < 2:
        _fail("--steps must be >= 2")
    top = 1.0 - 1e-9
    params = [top * i / (steps - 1) for i in range(steps)]
    _sweep([rank2_report(c) for c in params], params)


@main.command("dynamics")
@click.option("--c1", type=float, required=True)
@click.option("--c2", type=float, required=True)
@click.option("--c3", type=float, required=True)
@click.option("--s", type=float, required=True, help="Bath Ohmicity exponent.")
@click.option("--nu-max", type=float, default=30.0, show_default=True,
              help="End of the dimensionless time grid nu = omega_c t.")
@click.option("--steps", type=int, default=600, show_default=True)
def dynamics_cmd(c1, c2, c3, s, nu_max, steps):
    """Correlation dynamics under local pure dephasing."""
    try:
        state = bd_from_c(c1, c2, c3)
        bath = dyn.BathSpec(s)
        trace = dyn.trace_correlations(state, bath, nu_max, steps)
    except BuresCorrError as exc:
        _fail(str(exc))
    click.echo("nu,c1,c2,c3,E,Q,C,T")
    for nu, st, rep in zip(trace.nu_grid, trace.states, trace.reports):
        click.echo(_row([nu, st.c1, st.c2, st.c3, rep.E, rep.Q, rep.C, rep.T]))
    t_star = "none" if trace.t_star is None else _fmt(trace.t_star)
    esd = "none" if trace.esd_time is None else _fmt(trace.esd_time)
    click.echo(f"# t_star={t_star}")
    click.echo(f"# esd={esd}")


_VERIFY_RUNNERS = {
    "product": oracle.verify_product_ansatz,
    "cq": oracle.verify_cq_batch,
    "classical": oracle.verify_classical_batch,
}


@main.command()
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mode", type=click.Choice(["product", "cq", "classical", "all"]),
              default="all", show_default=True)
@click.pass_context
def verify(ctx, samples, seed, mode):
    """Closed-form vs numerical-oracle verification batches."""
    if samples < 1:
        _fail("--samples must be >= 1")
    modes = ["product", "cq", "classical"] if mode == "all" else [mode]
    workers = ctx.obj["parallel"]
    click.echo("mode,samples,violations,max_gap,seconds")
    failed = False
    for m in modes:
        cfg = oracle.SearchConfig(
            restarts=oracle.BATCH_CONFIG.restarts,
            max_iters=oracle.BATCH_CONFIG.max_iters,
            xtol=oracle.BATCH_CONFIG.xtol,
            ftol=oracle.BATCH_CONFIG.ftol,
            rng_seed=seed,
        )
        start = time.perf_counter()
        summary = _VERIFY_RUNNERS[m](samples, cfg, workers=workers)
        elapsed = time.perf_counter() - start
        click.echo(_row([m, str(summary.samples), str(summary.violations),
                         summary.max_gap, elapsed]))
        failed = failed or summary.violations > 0
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
