"""Initial guesses for the Bethe root search.

Seeds follow the string hypothesis: a candidate solution is a union of
vertical strings, one per part of a partition ``nu`` of the down-spin
count.  String centers come from the secular (large-N) center equations
solved by damped fixed-point iteration; several imaginary spreads and
random restarts are added because true roots deviate from ideal strings,
strongly so whenever two strings sit close together.
"""
from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from .rigged import partitions, vacancy_number

__all__ = [
    "string_seed_numbers",
    "solve_centers",
    "string_roots",
    "regular_seeds",
    "seed_candidates",
    "singular_seeds",
]


def _theta(n: int, x: float) -> float:
    return 2.0 * math.atan(2.0 * x / n)


def _theta_sum(n: int, m: int, x: float) -> float:
    # scattering kernel between an n-string and an m-string
    lo = abs(n - m)
    hi = n + m
    s = 0.0
    if lo > 0:
        s += _theta(lo, x)
    for k in range(lo + 2, hi, 2):
        s += 2.0 * _theta(k, x)
    s += _theta(hi, x)
    return s


def string_seed_numbers(nu: Sequence[int], N: int) -> Iterator[list[tuple[int, int]]]:
    """Admissible center quantum numbers for each string of ``nu``.

    Yields lists of (length, doubled quantum number).  Per string length n
    with multiplicity M and vacancy P, the doubled numbers run over
    ±(P + M − 1) in steps of 2, all M-subsets.
    """
    counts: dict[int, int] = {}
    for p in nu:
        counts[p] = counts.get(p, 0) + 1
    per_len = []
    for n in sorted(counts, reverse=True):
        M = counts[n]
        P = vacancy_number(tuple(nu), n, N)
        top = P + M - 1
        vals = list(range(-top, top + 1, 2))
        per_len.append((n, [list(c) for c in itertools.combinations(vals, M)]))
    for choice in itertools.product(*(opts for _, opts in per_len)):
        strings: list[tuple[int, int]] = []
        for (n, _), picks in zip(per_len, choice):
            for d in picks:
                strings.append((n, d))
        yield strings


def solve_centers(strings: Sequence[tuple[int, int]], N: int, iters: int = 80) -> np.ndarray:
    """Damped fixed point for the real string centers of one assignment."""
    K = len(strings)
    x = np.zeros(K)
    for a, (n, d) in enumerate(strings):
        x[a] = (n / 2.0) * math.tan(math.pi * d / (2.0 * N))
    lim = math.pi / 2 - 1e-9
    for _ in range(iters):
        xn = np.zeros(K)
        for a, (n, d) in enumerate(strings):
            s = math.pi * d / N
            for b, (m, _) in enumerate(strings):
                if b != a:
                    s += _theta_sum(n, m, x[a] - x[b]) / N
            half = max(-lim, min(lim, s / 2.0))
            xn[a] = (n / 2.0) * math.tan(half)
        x = 0.5 * x + 0.5 * xn
    return x


def string_roots(center: float, length: int, spread: float = 1.0) -> list[complex]:
    """Ideal string of the given length: center + i*spread*(l-1-2a)/2."""
    return [center + 1j * spread * (length - 1 - 2 * a) / 2.0 for a in range(length)]


def _split_pair_variants(seeds: list[np.ndarray]) -> list[np.ndarray]:
    # near-collisions between seed roots usually mark a genuinely close
    # pair in the true solution; branch each such pair symmetrically off
    # its midpoint along both axes instead of only nudging sideways
    extra: list[np.ndarray] = []
    for s in seeds:
        pairs: list[tuple[int, int]] = []
        used: set[int] = set()
        for i in range(len(s)):
            for j in range(i):
                if i in used or j in used:
                    continue
                if abs(s[i] - s[j]) < 0.06:
                    pairs.append((i, j))
                    used.add(i)
                    used.add(j)
        if not pairs:
            continue
        for eps in (0.01, 0.05, 0.12):
            for delta in (1j * eps, eps):
                v = s.copy()
                for i, j in pairs:
                    m = 0.5 * (s[i] + s[j])
                    v[i] = m + delta
                    v[j] = m - delta
                extra.append(v)
    return extra


def _decollide(seeds: Iterable[np.ndarray]) -> list[np.ndarray]:
    fixed = []
    for s in seeds:
        s = np.asarray(s, np.complex128).copy()
        for i in range(len(s)):
            for j in range(i):
                if abs(s[i] - s[j]) < 1e-6:
                    s[i] += 0.003 * (i + 1)
                    s[j] -= 0.003 * (i + 1)
        fixed.append(s)
    return fixed


def regular_seeds(
    nu: Sequence[int],
    N: int,
    rng: np.random.Generator,
    n_random: int = 60,
    spreads: Sequence[float] = (0.95, 1.0, 1.06, 1.18),
) -> list[np.ndarray]:
    """All seeds for one configuration: center solutions x spreads,
    split-pair variants, and random restarts."""
    out: list[np.ndarray] = []
    for strings in string_seed_numbers(nu, N):
        x = solve_centers(strings, N)
        for spread in spreads:
            roots: list[complex] = []
            for (n, _), c in zip(strings, x):
                roots.extend(string_roots(c, n, spread))
            out.append(np.array(roots, np.complex128))
    for _ in range(n_random):
        roots = []
        for n in nu:
            c = rng.normal(0, 1.2)
            s = 1.0 + 0.15 * rng.standard_normal()
            roots.extend(string_roots(c, n, s))
        out.append(np.array(roots, np.complex128))
    out.extend(_split_pair_variants(out))
    return _decollide(out)


def seed_candidates(N: int, ell: int, seed: int = 0, n_random: int = 60) -> list[np.ndarray]:
    """Seeds for every configuration of the (N, ell) sector."""
    if not 1 <= ell <= N // 2:
        raise ValueError(f"need 1 <= ell <= N/2, got ell={ell}, N={N}")
    rng = np.random.default_rng(seed)
    out: list[np.ndarray] = []
    for nu in partitions(ell):
        out.extend(regular_seeds(nu, N, rng, n_random=n_random))
    return out


def jittered_seeds(
    nu: Sequence[int],
    N: int,
    rng: np.random.Generator,
    per_assignment: int,
    n_random: int = 40,
) -> list[np.ndarray]:
    """Retry seeds: center-jittered assignments plus fresh randoms."""
    seeds: list[np.ndarray] = []
    for strings in string_seed_numbers(nu, N):
        x = solve_centers(strings, N)
        for _ in range(per_assignment):
            roots: list[complex] = []
            for (n, _), c in zip(strings, x):
                cj = c + 0.08 * rng.standard_normal() * (1 + abs(c))
                sp = 1.0 + abs(0.18 * rng.standard_normal())
                roots.extend(string_roots(cj, n, sp))
            seeds.append(np.array(roots, np.complex128))
    for _ in range(n_random):
        roots = []
        for n in nu:
            c = rng.normal(0, 1.2)
            sp = 1.0 + abs(0.2 * rng.standard_normal())
            roots.extend(string_roots(c, n, sp))
        seeds.append(np.array(roots, np.complex128))
    seeds.extend(_split_pair_variants(seeds))
    return _decollide(seeds)


def singular_seeds(N: int, ell: int, rng: np.random.Generator, n_random: int = 300) -> list[np.ndarray]:
    """Seeds for the reduced system (the ell-2 roots besides the exact
    +-i/2 pair).

    Structure-aware families: one even-length string is centered at zero
    and donates the exact pair, its remaining rows seeded on the imaginary
    axis with several spreads and outward-growing gap profiles; the other
    strings take center-equation positions.  Axis stacks and random
    restarts cover remainders without string structure.
    """
    n = ell - 2
    if n <= 0:
        return []
    seeds: list[np.ndarray] = []
    for nu in partitions(ell):
        evens = sorted({p for p in nu if p % 2 == 0}, reverse=True)
        for e in evens:
            rest = list(nu)
            rest.remove(e)
            pos = sorted(b for b in ((e - 1 - 2 * a) / 2.0 for a in range(e))
                         if b > 0 and abs(b - 0.5) > 1e-9)
            variants = []
            for sp_ax in (1.02, 1.1, 1.25):
                variants.append([b * sp_ax for b in pos])
            for g in (0.2, 0.4):
                # outward-growing gaps: long strings widen toward the edges
                grown: list[float] = []
                for k, b in enumerate(pos):
                    prev = grown[-1] if grown else 0.0
                    gap = b - (pos[k - 1] if k else 0.0)
                    grown.append(prev + gap + (g * k if k else 0.0))
                variants.append(grown)
            for var in variants:
                base = [1j * b for b in var] + [-1j * b for b in var]
                if not rest:
                    seeds.append(np.array(base, np.complex128))
                    continue
                for strings in string_seed_numbers(tuple(rest), N):
                    x = solve_centers(strings, N)
                    for sp in (0.95, 1.06, 1.18):
                        roots = list(base)
                        for (m, _), c in zip(strings, x):
                            roots.extend(string_roots(c, m, sp))
                        seeds.append(np.array(roots, np.complex128))
    # plain string seeds of the reduced size as a safety net
    for nu in partitions(n):
        seeds.extend(regular_seeds(nu, N, rng, n_random=0))
    # axis stacks: conjugate pairs of pure-imaginary roots (plus a zero
    # for odd counts); covers remainders that sit entirely on the axis
    k, odd = divmod(n, 2)
    if k:
        small = (0.03, 0.1, 0.2, 0.35)
        outer = (0.9, 1.0, 1.1, 1.3, 1.6, 2.0, 2.5, 2.9)
        if k == 1:
            grids = [[b] for b in small + outer]
        else:
            grids = [[b1] + [outer[(i + 2 * j) % len(outer)] + 1.1 * j
                             for j in range(k - 1)]
                     for b1 in small + outer[:4] for i in range(4)]
        for g in grids:
            b = np.sort(np.array(g))
            if np.min(np.diff(b, prepend=0.0)) < 0.02:
                continue
            seeds.append(np.concatenate([1j * b, -1j * b, np.zeros(odd)]))
        for _ in range(40):
            b = np.sort(0.05 + 3.0 * rng.random(k))
            if k > 1 and np.min(np.diff(b)) < 0.05:
                continue
            seeds.append(np.concatenate([1j * b, -1j * b, np.zeros(odd)]))
    for _ in range(n_random):
        seeds.append(rng.normal(0, 1.0, n) + 1j * rng.normal(0, 1.0, n))
    return _decollide(seeds)
