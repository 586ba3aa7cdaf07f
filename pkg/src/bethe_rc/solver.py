"""Sector solver: every physical solution of the Bethe equations at (N, ell).

Regular solutions come from damped Newton runs on the cleared residual
over string-hypothesis seeds, followed by arbitrary-precision
certification and deduplication.  Solutions containing the exact pair
+-i/2 make the cleared residual vanish identically, so they are found
separately through the reduced system for the remaining roots and kept
only when they satisfy the physical-singular condition
(-prod (mu_j + i/2)/(mu_j - i/2))^N = 1.

Completeness is count-driven: the sector must hold exactly
C(N, ell) - C(N, ell-1) solutions, split per configuration by the
rigged-configuration count; any deficit triggers re-seeding rounds and
is reported, never silently accepted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import certify, kernels
from .rigged import partitions, count_rigged, sector_count
from .seeding import jittered_seeds, regular_seeds, singular_seeds

__all__ = [
    "BetheSolution",
    "SolverConfig",
    "SectorSolutions",
    "bae_residual_cleared",
    "canonical_roots",
    "newton_refine_seed",
    "solve_regular_sector",
    "solve_singular_sector",
    "solve_sector",
    "energy",
    "singular_c_constant",
    "string_configuration",
]


def bae_residual_cleared(roots: Sequence[complex], N: int) -> np.ndarray:
    """Cleared-form residual vector, one component per root.

    Component k is (l_k+i/2)^N prod_{j!=k}(l_k-l_j-i)
    minus (l_k-i/2)^N prod_{j!=k}(l_k-l_j+i).
    """
    lam = np.asarray(roots, np.complex128)
    F, _, _ = kernels.residual_jacobian(lam, N)
    return F


def canonical_roots(roots: Iterable[complex]) -> tuple[complex, ...]:
    """Deterministic root order: lexicographic on (Re, Im) rounded to 8
    decimals.  Rounding keeps numerical noise (e.g. 1e-300 real parts on
    axis roots) from scrambling the order."""
    return tuple(sorted(roots, key=lambda z: (round(z.real, 8), round(z.imag, 8))))


def _sorted_arr(lam: Iterable[complex]) -> np.ndarray:
    return np.array(canonical_roots(lam), np.complex128)


def _conj_closed(lam: np.ndarray, tol: float = 1e-9) -> bool:
    a = _sorted_arr(lam)
    b = _sorted_arr(np.conj(lam))
    return float(np.max(np.abs(a - b))) <= tol


def contains_singular_pair(lam: Iterable[complex], tol: float = 1e-7) -> bool:
    hasp = any(abs(z - 0.5j) < tol for z in lam)
    hasm = any(abs(z + 0.5j) < tol for z in lam)
    return hasp and hasm


def _collapsed_pairs(lam: np.ndarray, tol: float = 1e-6) -> list[tuple[int, int]]:
    """Conjugate pairs whose members differ by exactly i at double
    precision.

    Such a pair zeroes one factor of the cleared residual for both of its
    rows, opening a valley of pseudo-solutions with residual floor
    |Re center|^N.  The genuine solution inside the valley carries an
    imaginary deviation of that same (sub-float) scale.  Returns (hi, lo)
    index pairs, hi the upper-half-plane member."""
    out: list[tuple[int, int]] = []
    used: set[int] = set()
    for i in range(lam.size):
        for j in range(i):
            if i in used or j in used:
                continue
            if abs(lam[i] - np.conj(lam[j])) > tol:
                continue
            d = lam[i] - lam[j]
            if min(abs(d - 1j), abs(d + 1j)) < tol:
                hi, lo = (i, j) if lam[i].imag > lam[j].imag else (j, i)
                out.append((hi, lo))
                used.update((i, j))
    return out


def _pair_deviation(x: float, others: np.ndarray, N: int) -> float:
    """First-order imaginary deviation of a collapsed pair at real center x.

    With pair rows x +- i(1/2 + d), balancing the two cleared terms at
    d = 0 gives d = x^N prod(l-z+i) / ((x+i)^N prod(l-z-i)), l = x + i/2,
    the product running over the non-pair roots."""
    l1 = x + 0.5j
    num = complex(x) ** N
    den = complex(x + 1j) ** N
    for z in others:
        num *= l1 - z + 1j
        den *= l1 - z - 1j
    if den == 0:
        return 0.0
    return float((num / den).real)


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and seeding knobs; all tolerances must be positive."""

    newton_tol: float = 1e-11
    max_iter: int = 150
    dedup_tol: float = 1e-7
    random_restarts: int = 40
    max_rounds: int = 8
    seed: int = 0

    def __post_init__(self) -> None:
        if self.newton_tol <= 0 or self.dedup_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter <= 0 or self.max_rounds <= 0:
            raise ValueError("iteration limits must be positive")


@dataclass(frozen=True)
class BetheSolution:
    """A certified solution: ell roots for a chain of length N.

    Singular solutions store the exact pair (i/2, -i/2) as their first
    two roots; ``c_constant`` is the deformation constant attached to
    them.  ``residual`` is the double-precision normalized cleared
    residual (reduced-system residual for singular solutions).
    """

    N: int
    roots: tuple[complex, ...]
    kind: str
    residual: float
    c_constant: complex | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("regular", "singular"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "singular":
            if len(self.roots) < 2 or self.roots[0] != 0.5j or self.roots[1] != -0.5j:
                raise ValueError("singular solution must start with the exact pair +-i/2")

    @property
    def ell(self) -> int:
        return len(self.roots)

    def numeric_roots(self) -> np.ndarray:
        return np.array(self.roots, np.complex128)

    def sort_key(self) -> tuple:
        return tuple((round(z.real, 8), round(z.imag, 8))
                     for z in canonical_roots(self.roots))


def energy(sol: BetheSolution, J: float = 1.0) -> float:
    """Eigenvalue of the chain Hamiltonian for this solution.

    Regular: -(J/2) sum 1/(l_j^2 + 1/4).  Singular: -J - (J/2) times the
    same sum over the roots beyond the exact pair."""
    if sol.kind == "singular":
        rest = sol.roots[2:]
        s = sum(1.0 / (z * z + 0.25) for z in rest)
        val = -J - (J / 2.0) * s
    else:
        s = sum(1.0 / (z * z + 0.25) for z in sol.roots)
        val = -(J / 2.0) * s
    if abs(val.imag) > 1e-10:
        raise ValueError(f"energy has imaginary residue {val.imag:g}")
    return float(val.real)


def singular_c_constant(mu: Sequence[complex], N: int) -> complex:
    """Deformation constant c = 2 i^(N+1) prod (mu_j + 3i/2)/(mu_j - i/2)."""
    c = 2.0 * (1j) ** (N + 1)
    for z in mu:
        c *= (z + 1.5j) / (z - 0.5j)
    return complex(c)


def newton_refine_seed(seed: Sequence[complex], N: int, config: SolverConfig | None = None):
    """Refine one seed; returns (roots, residual, ok).

    ok is False on divergence, root collision, or convergence onto a
    singular pair (those route through the reduced system instead)."""
    cfg = config or SolverConfig()
    lam0 = np.asarray(seed, np.complex128)
    try:
        lam, r, ok = kernels.newton_refine(lam0, N, cfg.newton_tol, cfg.max_iter)
    except np.linalg.LinAlgError:
        return lam0, math.inf, False
    if not ok or not np.all(np.isfinite(lam.view(np.float64))):
        return lam, math.inf, False
    if np.max(np.abs(lam)) > 50.0:
        return lam, math.inf, False
    if contains_singular_pair(lam):
        return lam, r, False
    if lam.size > 1:
        dmin = min(abs(lam[i] - lam[j]) for i in range(lam.size) for j in range(i))
        if dmin < 1e-8:
            return lam, r, False
    return lam, r, True


class _Pool:
    """Certified, deduplicated regular solutions of one sector."""

    def __init__(self, N: int, ell: int, dedup_tol: float):
        self.N = N
        self.ell = ell
        self.dedup_tol = dedup_tol
        self.sols: list[np.ndarray] = []
        self.stalls: list[np.ndarray] = []

    def admit(self, start: np.ndarray) -> bool:
        lam_mp, _, ok = certify.certify(list(start), self.N)
        if not ok:
            arr = np.asarray(start, np.complex128)
            if len(self.stalls) < 200 and _collapsed_pairs(arr):
                self.stalls.append(arr)
            return False
        pts = _sorted_arr(np.array([complex(z) for z in lam_mp]))
        if not np.all(np.isfinite(pts.view(np.float64))):
            return False
        if self.ell > 1:
            dmin = min(abs(pts[i] - pts[j])
                       for i in range(self.ell) for j in range(i))
            if dmin < 1e-8:
                return False
        if contains_singular_pair(pts):
            return False
        if not _conj_closed(pts):
            return False
        if any(np.max(np.abs(pts - u)) < self.dedup_tol for u in self.sols):
            return False
        self.sols.append(pts)
        return True

    def close_under_negation(self) -> None:
        i = 0
        while i < len(self.sols):
            neg = _sorted_arr(-self.sols[i])
            if not any(np.max(np.abs(neg - u)) < self.dedup_tol for u in self.sols):
                self.admit(neg)
            i += 1


def _run_seeds(pool: _Pool, seeds: Iterable[np.ndarray], N: int, cfg: SolverConfig) -> None:
    converged = []
    for s in seeds:
        lam, _, ok = newton_refine_seed(s, N, cfg)
        if ok:
            converged.append(lam)
    coarse: list[np.ndarray] = []
    for lam in converged:
        srt = _sorted_arr(lam)
        if not any(np.max(np.abs(srt - u)) < 3e-5 for u in coarse):
            coarse.append(srt)
    for s in coarse:
        pool.admit(s)


def _rescue_collapsed(pool: _Pool, N: int, deficit_left) -> None:
    """Last-resort scan of collapsed-pair valleys recorded during
    certification failures.

    Double precision cannot resolve the valley (its residual floor sits
    below Newton's tolerance across a wide range of pair centers), and
    high-precision refinement started from an exact-i pair crawls along
    it without reaching the embedded genuine solution.  Restoring the
    first-order deviation at a grid of pair centers puts the starting
    point on the true branch, where refinement is well-posed; every
    certified hit goes through the normal admission path."""
    seen: list[np.ndarray] = []
    for stall in pool.stalls:
        srt = _sorted_arr(stall)
        if not any(np.max(np.abs(srt - u)) < 1e-3 for u in seen):
            seen.append(srt)
    grid = np.arange(0.02, 0.42, 0.04)
    for stall in seen[:12]:
        pairs = _collapsed_pairs(stall)
        if not pairs:
            continue
        neg_sym = float(np.max(np.abs(_sorted_arr(-stall) - stall))) < 1e-5
        if len(pairs) == 2 and neg_sym:
            # two pairs tied to centers +-x by the negation symmetry of
            # the stall; scan them jointly (each pair's valley direction
            # is soft, so neither can drift to its target on its own)
            (i1, j1), (i2, j2) = pairs
            rest = [stall[k] for k in range(stall.size)
                    if k not in (i1, j1, i2, j2)]
            for x in grid:
                others = np.array(rest + [-x + 0.5j, -x - 0.5j], np.complex128)
                d = _pair_deviation(float(x), others, N)
                cand = np.array(
                    rest + [x + 1j * (0.5 + d), x - 1j * (0.5 + d),
                            -x + 1j * (0.5 + d), -x - 1j * (0.5 + d)],
                    np.complex128)
                pool.admit(cand)
                if deficit_left() <= 0:
                    return
        else:
            for (i, j) in pairs:
                x0 = float(stall[i].real)
                rest = [stall[k] for k in range(stall.size) if k not in (i, j)]
                others = np.array(rest, np.complex128)
                for dx in np.arange(-0.2, 0.24, 0.04):
                    x = x0 + dx
                    d = _pair_deviation(x, others, N)
                    cand = np.array(
                        rest + [x + 1j * (0.5 + d), x - 1j * (0.5 + d)],
                        np.complex128)
                    pool.admit(cand)
                    if deficit_left() <= 0:
                        return


def string_configuration(lam: Iterable[complex]) -> tuple[int, ...]:
    """String-length partition of a root set (import cycle guard)."""
    from .strings import configuration_of_roots

    return configuration_of_roots(np.asarray(list(lam), np.complex128))


def _solution_from_regular(lam: np.ndarray, N: int) -> BetheSolution:
    res = kernels.residual_norm(lam, N)
    return BetheSolution(N=N, roots=canonical_roots(lam), kind="regular",
                         residual=float(res))


def _solution_from_singular(mu: np.ndarray, N: int) -> BetheSolution:
    res = kernels.residual_norm_reduced(mu, N) if mu.size else 0.0
    roots = (0.5j, -0.5j) + canonical_roots(mu)
    return BetheSolution(N=N, roots=roots, kind="singular", residual=float(res),
                         c_constant=singular_c_constant(mu, N))


def solve_singular_sector(N: int, ell: int, config: SolverConfig | None = None) -> list[BetheSolution]:
    """Physical singular solutions via the reduced system.

    Requires even N (the zero-center regularization used downstream is
    stated for even chains); returns [] for ell < 2."""
    if N % 2 != 0:
        raise ValueError("singular sector solve requires even N")
    cfg = config or SolverConfig()
    if ell < 2 or ell > N // 2:
        return []
    n = ell - 2
    if n == 0:
        return [_solution_from_singular(np.zeros(0, np.complex128), N)]
    rng = np.random.default_rng(cfg.seed + 1)
    seeds = singular_seeds(N, ell, rng)

    cands = []
    for s in seeds:
        try:
            mu, r, ok = kernels.newton_refine_reduced(
                np.asarray(s, np.complex128), N, cfg.newton_tol, 120)
        except np.linalg.LinAlgError:
            continue
        if ok and np.max(np.abs(mu)) < 50.0:
            cands.append(mu)
    coarse: list[np.ndarray] = []
    for mu in cands:
        srt = _sorted_arr(mu)
        if not any(np.max(np.abs(srt - u)) < 3e-5 for u in coarse):
            coarse.append(srt)

    uniq: list[np.ndarray] = []

    def admit(start: np.ndarray) -> None:
        mu_mp, _, ok = certify.certify_reduced(list(start), N)
        if not ok:
            return
        pts = _sorted_arr(np.array([complex(z) for z in mu_mp]))
        if not np.all(np.isfinite(pts.view(np.float64))):
            return
        if n > 1:
            dmin = min(abs(pts[i] - pts[j]) for i in range(n) for j in range(i))
            if dmin < 1e-8:
                return
        if any(abs(z - 0.5j) < 1e-7 or abs(z + 0.5j) < 1e-7 for z in pts):
            return
        if not _conj_closed(pts):
            return
        if not certify.physical_singular(mu_mp, N):
            return
        if not any(np.max(np.abs(pts - u)) < cfg.dedup_tol for u in uniq):
            uniq.append(pts)

    for s in coarse:
        admit(s)
    i = 0
    while i < len(uniq):
        neg = _sorted_arr(-uniq[i])
        if not any(np.max(np.abs(neg - u)) < cfg.dedup_tol for u in uniq):
            admit(neg)
        i += 1
    sols = [_solution_from_singular(mu, N) for mu in uniq]
    sols.sort(key=BetheSolution.sort_key)
    return sols


def solve_regular_sector(
    N: int,
    ell: int,
    config: SolverConfig | None = None,
    singular_tally: dict[tuple[int, ...], int] | None = None,
) -> list[BetheSolution]:
    """Regular solutions of the sector, complete per configuration.

    ``singular_tally`` holds per-configuration counts already supplied by
    the singular solve; the regular targets are the rigged counts minus
    those.  Rounds of re-seeding run until every configuration deficit
    closes or ``max_rounds`` is exhausted."""
    if not 1 <= ell <= N // 2:
        raise ValueError(f"need 1 <= ell <= N/2, got ell={ell}, N={N}")
    cfg = config or SolverConfig()
    sing = singular_tally or {}
    rng = np.random.default_rng(cfg.seed)
    pool = _Pool(N, ell, cfg.dedup_tol)
    targets = {tuple(nu): count_rigged(tuple(nu), N) - sing.get(tuple(nu), 0)
               for nu in partitions(ell)}

    def tally() -> dict[tuple[int, ...], int]:
        t: dict[tuple[int, ...], int] = {}
        for lam in pool.sols:
            cfg_t = string_configuration(lam)
            t[cfg_t] = t.get(cfg_t, 0) + 1
        return t

    for rnd in range(cfg.max_rounds):
        tal = tally() if rnd else {}
        deficits = {nu: targets[nu] - tal.get(nu, 0) for nu in targets}
        if rnd and all(d <= 0 for d in deficits.values()):
            break
        seeds: list[np.ndarray] = []
        for nu in targets:
            if rnd and deficits.get(nu, 0) <= 0:
                continue
            if rnd == 0:
                seeds.extend(regular_seeds(nu, N, rng,
                                           n_random=cfg.random_restarts))
            else:
                seeds.extend(jittered_seeds(nu, N, rng, per_assignment=2 + rnd))
        _run_seeds(pool, seeds, N, cfg)
        pool.close_under_negation()

    def deficit_total() -> int:
        tal = tally()
        return sum(max(0, targets[nu] - tal.get(nu, 0)) for nu in targets)

    if pool.stalls and deficit_total() > 0:
        _rescue_collapsed(pool, N, deficit_total)
        pool.close_under_negation()

    sols = [_solution_from_regular(lam, N) for lam in pool.sols]
    sols.sort(key=BetheSolution.sort_key)
    return sols


@dataclass(frozen=True)
class SectorSolutions:
    """Solver output for one (N, ell) with its count diagnostic."""

    N: int
    ell: int
    regular: tuple[BetheSolution, ...]
    singular: tuple[BetheSolution, ...]
    expected: int

    @property
    def solutions(self) -> tuple[BetheSolution, ...]:
        return self.regular + self.singular

    @property
    def found(self) -> int:
        return len(self.regular) + len(self.singular)

    @property
    def complete(self) -> bool:
        return self.found == self.expected

    def deficit_report(self) -> str:
        if self.complete:
            return ""
        return (f"sector (N={self.N}, ell={self.ell}): found {self.found} "
                f"of {self.expected} solutions")


def solve_sector(N: int, ell: int, config: SolverConfig | None = None) -> SectorSolutions:
    """Full sector: singular solutions first (they satisfy a cheaper
    reduced system and fix the per-configuration targets), then regular
    rounds until the counts close."""
    cfg = config or SolverConfig()
    singular = solve_singular_sector(N, ell, cfg) if N % 2 == 0 else []
    sing_tally: dict[tuple[int, ...], int] = {}
    for sol in singular:
        c = string_configuration(sol.numeric_roots())
        sing_tally[c] = sing_tally.get(c, 0) + 1
    regular = solve_regular_sector(N, ell, cfg, singular_tally=sing_tally)
    return SectorSolutions(N=N, ell=ell, regular=tuple(regular),
                           singular=tuple(singular),
                           expected=sector_count(N, ell))
