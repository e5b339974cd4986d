#!/usr/bin/env python3
"""Benchmark the compiled extension against the pure-Python fallback.

Micro-benchmarks call both kernel modules directly; the end-to-end row runs
a small product-ansatz verification batch in a subprocess per backend (the
backend is fixed at import time via BURESCORR_BACKEND).

Usage: python benchmarks/bench_backends.py [--samples N]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from burescorr import _kernels_py

try:
    from burescorr import _kernels
except ImportError:
    _kernels = None


def _time(fn, n):
    start = time.perf_counter()
    for _ in range(n):
        fn()
    return (time.perf_counter() - start) / n


def _random_density(rng):
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = x @ x.conj().T
    return m / np.trace(m).real


def micro(kernels, label, rng):
    m = _random_density(rng)
    s = kernels.sqrt_psd(_random_density(rng))
    sigma = _random_density(rng)
    reps = 200 if label == "python" else 20000
    rows = [
        ("jacobi_eigh", _time(lambda: kernels.jacobi_eigh(m), reps)),
        ("sqrt_psd", _time(lambda: kernels.sqrt_psd(m), reps)),
        ("fidelity_from_sqrt", _time(lambda: kernels.fidelity_from_sqrt(s, sigma), reps)),
        ("product_fidelity", _time(
            lambda: kernels.product_fidelity_from_sqrt(s, 0.1, -0.2, 0.3, 0.4, 0.0, -0.5),
            reps,
        )),
    ]
    return rows


def end_to_end(backend: str, samples: int) -> float:
    code = (
        "import time, burescorr.oracle as o\n"
        f"t0 = time.perf_counter(); o.verify_product_ansatz({samples})\n"
        "print(time.perf_counter() - t0)\n"
    )
    env = dict(os.environ, BURESCORR_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env, check=True)
    return float(out.stdout.strip())


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=100,
                        help="verification batch size for the end-to-end row")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("compiled", _kernels))
    else:
        print("note: compiled extension not built; showing python only\n")

    results = {label: dict(micro(mod, label, rng)) for label, mod in backends}
    names = ["jacobi_eigh", "sqrt_psd", "fidelity_from_sqrt", "product_fidelity"]

    print(f"{'kernel':<22}" + "".join(f"{label:>14}" for label, _ in backends)
          + ("      speedup" if len(backends) == 2 else ""))
    for name in names:
        row = f"{name:<22}"
        for label, _ in backends:
            row += f"{results[label][name] * 1e6:>12.2f}us"
        if len(backends) == 2:
            row += f"{results['python'][name] / results['compiled'][name]:>11.1f}x"
        print(row)

    print(f"\nverify_product_ansatz({args.samples}):")
    times = {}
    for label, _ in backends:
        times[label] = end_to_end(label, args.samples)
        print(f"  {label:<10} {times[label]:8.2f}s"
              f"  ({times[label] / args.samples * 1e3:.1f} ms/sample)")
    if len(times) == 2:
        print(f"  speedup    {times['python'] / times['compiled']:8.1f}x")


if __name__ == "__main__":
    main()
