"""Hot numerical kernels: cleared-form residuals, Jacobians, damped Newton.

The same source compiles two ways: with numba @njit (default) or as plain
Python over numpy scalars.  Set BETHE_RC_DISABLE_NUMBA=1 before import to
select the fallback path; `USING_NUMBA` records which one is active.

The residual is the polynomial (cleared-denominator) form of the Bethe
equations,

    F_k = (lam_k + i/2)^N prod_{j != k} (lam_k - lam_j - i)
        - (lam_k - i/2)^N prod_{j != k} (lam_k - lam_j + i),

normalized per row by scale_k = max(|term1|, |term2|, 1) so that the merit
function is meaningful even when one row dwarfs the others.  The reduced
system removes the exact +-i/2 pair from a singular solution and solves

    G_k = (mu_k + i/2)^(N-1) (mu_k - 3i/2) prod_{j != k} (mu_k - mu_j - i)
        - (mu_k - i/2)^(N-1) (mu_k + 3i/2) prod_{j != k} (mu_k - mu_j + i).
"""
from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("BETHE_RC_DISABLE_NUMBA", "") not in ("", "0")

if not _DISABLE:
    try:
        from numba import njit as _njit

        def _jit(f):
            return _njit(cache=True)(f)

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a hard dependency
        def _jit(f):
            return f

        USING_NUMBA = False
else:
    def _jit(f):
        return f

    USING_NUMBA = False


@_jit
def residual_jacobian(lam, N):
    """Cleared residual F, Jacobian dF/dlam, and per-row scales."""
    ell = lam.size
    F = np.zeros(ell, np.complex128)
    J = np.zeros((ell, ell), np.complex128)
    scale = np.zeros(ell, np.float64)
    for k in range(ell):
        zp = lam[k] + 0.5j
        zm = lam[k] - 0.5j
        ap = zp ** (N - 1)
        am = zm ** (N - 1)
        apN = ap * zp
        amN = am * zm
        Pm = 1.0 + 0j
        Pp = 1.0 + 0j
        for j in range(ell):
            if j != k:
                Pm *= lam[k] - lam[j] - 1j
                Pp *= lam[k] - lam[j] + 1j
        F[k] = apN * Pm - amN * Pp
        scale[k] = max(abs(apN * Pm), abs(amN * Pp), 1.0)
        Sm = 0.0 + 0j
        Sp = 0.0 + 0j
        for m in range(ell):
            if m != k:
                pm = 1.0 + 0j
                pp = 1.0 + 0j
                for j in range(ell):
                    if j != k and j != m:
                        pm *= lam[k] - lam[j] - 1j
                        pp *= lam[k] - lam[j] + 1j
                Sm += pm
                Sp += pp
                J[k, m] = -apN * pm + amN * pp
        J[k, k] = N * ap * Pm + apN * Sm - N * am * Pp - amN * Sp
    return F, J, scale


@_jit
def residual_jacobian_reduced(mu, N):
    """Residual and Jacobian of the pair-removed (singular) system."""
    n = mu.size
    F = np.zeros(n, np.complex128)
    J = np.zeros((n, n), np.complex128)
    scale = np.zeros(n, np.float64)
    for k in range(n):
        zp = mu[k] + 0.5j
        zm = mu[k] - 0.5j
        ap = zp ** (N - 2)
        am = zm ** (N - 2)
        apN = ap * zp  # zp^(N-1)
        amN = am * zm
        gp = mu[k] - 1.5j
        gm = mu[k] + 1.5j
        Pm = 1.0 + 0j
        Pp = 1.0 + 0j
        for j in range(n):
            if j != k:
                Pm *= mu[k] - mu[j] - 1j
                Pp *= mu[k] - mu[j] + 1j
        F[k] = apN * gp * Pm - amN * gm * Pp
        scale[k] = max(abs(apN * gp * Pm), abs(amN * gm * Pp), 1.0)
        Sm = 0.0 + 0j
        Sp = 0.0 + 0j
        for m in range(n):
            if m != k:
                pm = 1.0 + 0j
                pp = 1.0 + 0j
                for j in range(n):
                    if j != k and j != m:
                        pm *= mu[k] - mu[j] - 1j
                        pp *= mu[k] - mu[j] + 1j
                Sm += pm
                Sp += pp
                J[k, m] = -apN * gp * pm + amN * gm * pp
        J[k, k] = ((N - 1) * ap * gp + apN) * Pm + apN * gp * Sm \
                  - ((N - 1) * am * gm + amN) * Pp - amN * gm * Sp
    return F, J, scale


@_jit
def _merit(F, scale):
    f = 0.0
    for k in range(F.size):
        f += (abs(F[k]) / scale[k]) ** 2
    return f


@_jit
def newton_refine(lam0, N, tol, max_iter, step_max=0.5):
    """Damped Newton on the normalized merit.

    The step cap and the scale-normalized line search keep iterates from
    sliding into the degenerate troughs near coincident roots or the
    +-i/2 manifold, where the raw residual is deceptively flat.
    """
    lam = lam0.copy()
    for _ in range(max_iter):
        F, J, scale = residual_jacobian(lam, N)
        r = 0.0
        for k in range(lam.size):
            rk = abs(F[k]) / scale[k]
            if rk > r:
                r = rk
        if r < tol:
            return lam, r, True
        delta = np.linalg.solve(J, -F)
        dmax = 0.0
        for k in range(lam.size):
            if abs(delta[k]) > dmax:
                dmax = abs(delta[k])
        if dmax > step_max:
            delta = delta * (step_max / dmax)
        f0 = _merit(F, scale)
        alpha = 1.0
        ok = False
        for _ in range(40):
            trial = lam + alpha * delta
            Ft, Jt, st = residual_jacobian(trial, N)
            f1 = _merit(Ft, st)
            if f1 < f0 * (1.0 - 1e-4 * alpha) or f1 < 1e-60:
                lam = trial
                ok = True
                break
            alpha *= 0.5
        if not ok:
            break
    F, J, scale = residual_jacobian(lam, N)
    r = 0.0
    for k in range(lam.size):
        rk = abs(F[k]) / scale[k]
        if rk > r:
            r = rk
    return lam, r, r < tol


@_jit
def newton_refine_reduced(mu0, N, tol, max_iter, step_max=0.5):
    """Damped Newton on the reduced system; same strategy as newton_refine."""
    mu = mu0.copy()
    for _ in range(max_iter):
        F, J, scale = residual_jacobian_reduced(mu, N)
        r = 0.0
        for k in range(mu.size):
            rk = abs(F[k]) / scale[k]
            if rk > r:
                r = rk
        if r < tol:
            return mu, r, True
        delta = np.linalg.solve(J, -F)
        dmax = 0.0
        for k in range(mu.size):
            if abs(delta[k]) > dmax:
                dmax = abs(delta[k])
        if dmax > step_max:
            delta = delta * (step_max / dmax)
        f0 = _merit(F, scale)
        alpha = 1.0
        ok = False
        for _ in range(40):
            trial = mu + alpha * delta
            Ft, Jt, st = residual_jacobian_reduced(trial, N)
            f1 = _merit(Ft, st)
            if f1 < f0 * (1.0 - 1e-4 * alpha) or f1 < 1e-60:
                mu = trial
                ok = True
                break
            alpha *= 0.5
        if not ok:
            break
    F, J, scale = residual_jacobian_reduced(mu, N)
    r = 0.0
    for k in range(mu.size):
        rk = abs(F[k]) / scale[k]
        if rk > r:
            r = rk
    return mu, r, r < tol


def residual_norm(lam: np.ndarray, N: int) -> float:
    """Max per-row normalized residual of the cleared Bethe system."""
    F, _, scale = residual_jacobian(np.asarray(lam, np.complex128), N)
    return float(np.max(np.abs(F) / scale))


def residual_norm_reduced(mu: np.ndarray, N: int) -> float:
    """Same, for the reduced system of a singular solution's free roots."""
    mu = np.asarray(mu, np.complex128)
    if mu.size == 0:
        return 0.0
    F, _, scale = residual_jacobian_reduced(mu, N)
    return float(np.max(np.abs(F) / scale))
