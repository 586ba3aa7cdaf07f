"""Residual/Jacobian kernels and the pure-numpy fallback path."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from bethe_rc import kernels


def exact_one_magnon(N: int, m: int) -> complex:
    # closed form for a single root: lam = (1/2) cot(pi m / N)
    import math
    return complex(0.5 / math.tan(math.pi * m / N), 0.0)


def test_residual_zero_at_exact_solution():
    lam = np.array([exact_one_magnon(12, 5)], np.complex128)
    assert kernels.residual_norm(lam, 12) < 1e-12


def test_residual_positive_off_solution():
    lam = np.array([0.3 + 0.1j], np.complex128)
    assert kernels.residual_norm(lam, 12) > 1e-3


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(7)
    lam = rng.normal(size=3) + 1j * rng.normal(size=3)
    F0, J, scale = kernels.residual_jacobian(lam, 8)
    eps = 1e-7
    for k in range(3):
        d = np.zeros(3, np.complex128)
        d[k] = eps
        F1, _, _ = kernels.residual_jacobian(lam + d, 8)
        approx = (F1 - F0) / eps
        assert np.allclose(approx, J[:, k], rtol=5e-5, atol=5e-5)


def test_newton_converges_from_nearby():
    target = np.array([exact_one_magnon(10, 3)], np.complex128)
    start = target + 0.05
    refined, res, ok = kernels.newton_refine(start, 10, 1e-12, 60)
    assert ok and res < 1e-12
    assert abs(refined[0] - target[0]) < 1e-10


def test_reduced_residual_zero_for_singular_rest():
    # the exact pair {i/2,-i/2} plus rest mu=0 solves the reduced system at N=6
    mu = np.array([0.0 + 0.0j], np.complex128)
    assert kernels.residual_norm_reduced(mu, 6) < 1e-12


def test_numba_enabled_by_default():
    if os.environ.get("BETHE_RC_DISABLE_NUMBA", "") not in ("", "0"):
        pytest.skip("fallback explicitly requested in this environment")
    assert kernels.USING_NUMBA


def test_fallback_path_matches_numba():
    """Same sector solved with and without numba gives identical root sets."""
    code = (
        "import json\n"
        "from bethe_rc import solve_sector\n"
        "sec = solve_sector(6, 2)\n"
        "roots = sorted([sorted((round(z.real, 9), round(z.imag, 9))"
        " for z in s.roots) for s in sec.solutions])\n"
        "print(json.dumps(roots))\n"
    )

    def run(disable: bool) -> list:
        env = dict(os.environ)
        env["BETHE_RC_DISABLE_NUMBA"] = "1" if disable else "0"
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True, check=True)
        return json.loads(out.stdout)

    assert run(False) == run(True)
