"""High-precision certification of candidate root sets.

Double-precision Newton cannot distinguish genuine solutions from "ghost"
pseudo-minima near the +-i/2 degenerate manifold: a ghost's normalized
residual has a precision-independent floor of order |lam - i/2|^N (which
can be 1e-39 and below at N = 12), while a true root keeps contracting as
working precision grows.  Certification therefore refines in two mpmath
stages and accepts only residuals far below the floor attainable by any
ghost at the refined point's distance from the manifold.
"""
from __future__ import annotations

import mpmath as mp

_IH = "0.5"


def residual_jacobian_mp(lam, N):
    """Cleared residual and Jacobian in mpmath arithmetic."""
    ell = len(lam)
    F = mp.matrix(ell, 1)
    J = mp.matrix(ell, ell)
    for k in range(ell):
        zp = lam[k] + mp.mpc(0, _IH)
        zm = lam[k] - mp.mpc(0, _IH)
        ap = zp ** (N - 1)
        am = zm ** (N - 1)
        apN = ap * zp
        amN = am * zm
        Pm = mp.mpc(1)
        Pp = mp.mpc(1)
        for j in range(ell):
            if j != k:
                Pm *= lam[k] - lam[j] - mp.mpc(0, 1)
                Pp *= lam[k] - lam[j] + mp.mpc(0, 1)
        F[k] = apN * Pm - amN * Pp
        Sm = mp.mpc(0)
        Sp = mp.mpc(0)
        for m in range(ell):
            if m != k:
                pm = mp.mpc(1)
                pp = mp.mpc(1)
                for j in range(ell):
                    if j != k and j != m:
                        pm *= lam[k] - lam[j] - mp.mpc(0, 1)
                        pp *= lam[k] - lam[j] + mp.mpc(0, 1)
                Sm += pm
                Sp += pp
                J[k, m] = -apN * pm + amN * pp
        J[k, k] = N * ap * Pm + apN * Sm - N * am * Pp - amN * Sp
    return F, J


def residual_jacobian_reduced_mp(mu, N):
    """Reduced (pair-removed) residual and Jacobian in mpmath arithmetic."""
    n = len(mu)
    F = mp.matrix(n, 1)
    J = mp.matrix(n, n)
    ihalf = mp.mpc(0, _IH)
    i32 = mp.mpc(0, "1.5")
    for k in range(n):
        zp = mu[k] + ihalf
        zm = mu[k] - ihalf
        ap = zp ** (N - 2)
        am = zm ** (N - 2)
        apN = ap * zp
        amN = am * zm
        gp = mu[k] - i32
        gm = mu[k] + i32
        Pm = mp.mpc(1)
        Pp = mp.mpc(1)
        for j in range(n):
            if j != k:
                Pm *= mu[k] - mu[j] - mp.mpc(0, 1)
                Pp *= mu[k] - mu[j] + mp.mpc(0, 1)
        F[k] = apN * gp * Pm - amN * gm * Pp
        Sm = mp.mpc(0)
        Sp = mp.mpc(0)
        for m in range(n):
            if m != k:
                pm = mp.mpc(1)
                pp = mp.mpc(1)
                for j in range(n):
                    if j != k and j != m:
                        pm *= mu[k] - mu[j] - mp.mpc(0, 1)
                        pp *= mu[k] - mu[j] + mp.mpc(0, 1)
                Sm += pm
                Sp += pp
                J[k, m] = -apN * gp * pm + amN * gm * pp
        J[k, k] = ((N - 1) * ap * gp + apN) * Pm + apN * gp * Sm \
                  - ((N - 1) * am * gm + amN) * Pp - amN * gm * Sp
    return F, J


def normalized_residual_mp(lam, N):
    F, _ = residual_jacobian_mp(lam, N)
    worst = mp.mpf(0)
    for k in range(len(lam)):
        t1 = abs(lam[k] + mp.mpc(0, _IH)) ** N
        t2 = abs(lam[k] - mp.mpc(0, _IH)) ** N
        for j in range(len(lam)):
            if j != k:
                t1 *= abs(lam[k] - lam[j] - mp.mpc(0, 1))
                t2 *= abs(lam[k] - lam[j] + mp.mpc(0, 1))
        s = max(t1, t2, mp.mpf(1))
        worst = max(worst, abs(F[k]) / s)
    return worst


def normalized_residual_reduced_mp(mu, N):
    F, _ = residual_jacobian_reduced_mp(mu, N)
    worst = mp.mpf(0)
    for k in range(len(mu)):
        t1 = abs(mu[k] + mp.mpc(0, _IH)) ** (N - 1) * abs(mu[k] - mp.mpc(0, "1.5"))
        t2 = abs(mu[k] - mp.mpc(0, _IH)) ** (N - 1) * abs(mu[k] + mp.mpc(0, "1.5"))
        for j in range(len(mu)):
            if j != k:
                t1 *= abs(mu[k] - mu[j] - mp.mpc(0, 1))
                t2 *= abs(mu[k] - mu[j] + mp.mpc(0, 1))
        s = max(t1, t2, mp.mpf(1))
        worst = max(worst, abs(F[k]) / s)
    return worst


def _newton_phase(pts, N, fj, iters, stop):
    for _ in range(iters):
        F, J = fj(pts, N)
        try:
            delta = mp.lu_solve(J, -F)
        except Exception:
            return pts, False
        step = max(abs(delta[k]) for k in range(len(pts)))
        pts = [pts[k] + delta[k] for k in range(len(pts))]
        if step < stop:
            return pts, True
    return pts, True


def _floor(pts, N):
    # residual ceiling any ghost could reach at this distance from +-i/2
    D = min(min(abs(z - mp.mpc(0, _IH)), abs(z + mp.mpc(0, _IH))) for z in pts)
    return min(mp.mpf("1e-60"), max(D, mp.mpf("1e-8")) ** N * mp.mpf("1e-20"))


def certify(lam0, N, iters=40):
    """Refine and certify a candidate full-system root set.

    Returns (points, residual, ok).  Points are mpmath complex numbers;
    residual is the max normalized row residual at 130 digits.
    """
    saved = mp.mp.dps
    try:
        mp.mp.dps = 60
        lam = [mp.mpc(z) for z in lam0]
        lam, ok = _newton_phase(lam, N, residual_jacobian_mp, iters, mp.mpf("1e-40"))
        if not ok:
            return lam, mp.inf, False
        mp.mp.dps = 130
        lam, ok = _newton_phase(lam, N, residual_jacobian_mp, 8, mp.mpf("1e-100"))
        if not ok:
            return lam, mp.inf, False
        res = normalized_residual_mp(lam, N)
        return lam, res, res < _floor(lam, N)
    finally:
        mp.mp.dps = saved


def certify_reduced(mu0, N, iters=40):
    """Refine and certify a candidate reduced-system root set."""
    saved = mp.mp.dps
    try:
        mp.mp.dps = 60
        mu = [mp.mpc(z) for z in mu0]
        mu, ok = _newton_phase(mu, N, residual_jacobian_reduced_mp, iters, mp.mpf("1e-40"))
        if not ok:
            return mu, mp.inf, False
        mp.mp.dps = 130
        mu, ok = _newton_phase(mu, N, residual_jacobian_reduced_mp, 8, mp.mpf("1e-100"))
        if not ok:
            return mu, mp.inf, False
        res = normalized_residual_reduced_mp(mu, N)
        return mu, res, res < _floor(mu, N)
    finally:
        mp.mp.dps = saved


def physical_singular(mu, N, tol="1e-25"):
    """Momentum-phase condition selecting physical singular solutions.

    A candidate with the exact +-i/2 pair is a physical state iff
    (-prod_j (mu_j + i/2)/(mu_j - i/2))^N = 1.
    """
    saved = mp.mp.dps
    try:
        mp.mp.dps = max(mp.mp.dps, 60)
        prod = mp.mpc(1)
        for z in mu:
            prod *= (z + mp.mpc(0, _IH)) / (z - mp.mpc(0, _IH))
        return abs((-prod) ** N - 1) < mp.mpf(tol)
    finally:
        mp.mp.dps = saved
