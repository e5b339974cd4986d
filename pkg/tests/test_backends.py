import os
import subprocess
import sys

import numpy as np
import pytest

import burescorr
from burescorr import _kernels_py as kpy

from conftest import random_density

try:
    from burescorr import _kernels as kc
except ImportError:
    kc = None

needs_compiled = pytest.mark.skipif(kc is None, reason="compiled extension not built")


class TestPythonBackend:
    def test_eigh_against_lapack(self, rng):
        for _ in range(40):
            m = random_density(rng)
            w, v = kpy.jacobi_eigh(m)
            np.testing.assert_allclose(w, np.linalg.eigvalsh(m), atol=1e-12)
            assert np.linalg.norm(m - (v * w) @ v.conj().T) < 1e-12

    def test_sqrt_squares_back(self, rng):
        for _ in range(20):
            m = random_density(rng)
            s = kpy.sqrt_psd(m)
            assert np.linalg.norm(s @ s - m) < 1e-11


@needs_compiled
class TestBackendParity:
    def test_eigenvalues_match(self, rng):
        for _ in range(60):
            m = random_density(rng)
            wp, _ = kpy.jacobi_eigh(m, vectors=False)
            wc, _ = kc.jacobi_eigh(m, vectors=False)
            np.testing.assert_allclose(wp, wc, atol=1e-13)

    def test_fidelity_matches(self, rng):
        for _ in range(60):
            r1, r2 = random_density(rng), random_density(rng)
            assert kpy.fidelity(r1, r2) == pytest.approx(kc.fidelity(r1, r2), abs=1e-13)

    def test_product_fidelity_matches(self, rng):
        s = kc.sqrt_psd(random_density(rng))
        for _ in range(60):
            args = rng.uniform(-0.6, 0.6, 6)
            assert kpy.product_fidelity_from_sqrt(s, *args) == pytest.approx(
                kc.product_fidelity_from_sqrt(s, *args), abs=1e-13
            )

    def test_product_density_matches(self, rng):
        args = rng.uniform(-0.5, 0.5, 6)
        np.testing.assert_allclose(
            kpy.product_density(*args), kc.product_density(*args), atol=1e-15
        )

    def test_default_backend_is_compiled(self):
        assert burescorr.BACKEND == "compiled"


class TestBackendSelection:
    @pytest.mark.parametrize("forced,expected", [("python", "python"), ("", None)])
    def test_env_override(self, forced, expected):
        env = dict(os.environ)
        if forced:
            env["BURESCORR_BACKEND"] = forced
        else:
            env.pop("BURESCORR_BACKEND", None)
        out = subprocess.run(
            [sys.executable, "-c", "import burescorr; print(burescorr.BACKEND)"],
            capture_output=True, text=True, env=env, check=True,
        )
        got = out.stdout.strip()
        if expected is None:
            assert got in ("compiled", "python")
        else:
            assert got == expected

    def test_bogus_value_rejected(self):
        env = dict(os.environ, BURESCORR_BACKEND="sparkly")
        out = subprocess.run(
            [sys.executable, "-c", "import burescorr"],
            capture_output=True, text=True, env=env,
        )
        assert out.returncode != 0
        assert "BURESCORR_BACKEND" in out.stderr
