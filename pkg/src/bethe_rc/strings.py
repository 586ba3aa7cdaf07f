"""String partition of a certified root set, and the crossing correction.

A length-n string is a chain of n roots whose imaginary parts descend in
near-unit steps from (n-1)/2 down to -(n-1)/2 (up to finite-size
deviations), sharing a common real center and closed under complex
conjugation.  The partition into strings bridges the solver's numerics
and the combinatorial labels: it fixes the configuration nu (the string
lengths) and groups the per-root label numbers into per-string sums,
which the crossing correction turns into position-independent data.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .halfint import HalfInt

__all__ = [
    "BetheString",
    "StringPartition",
    "StringPartitionError",
    "partition_into_strings",
    "configuration_of_roots",
    "crossing_delta",
    "crossing_corrected_J",
]

ZERO_CENTER_TOL = 1e-7


class StringPartitionError(ValueError):
    """No conjugation-closed chain partition exists for a root set."""


@dataclass(frozen=True)
class BetheString:
    """One string: member roots (descending imaginary part) and their
    indices into the original root array."""

    roots: tuple[complex, ...]
    indices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.roots)

    @property
    def center(self) -> float:
        """Common real part of the members (their mean)."""
        return float(np.mean([z.real for z in self.roots]))

    @property
    def is_centered(self) -> bool:
        return abs(self.center) <= ZERO_CENTER_TOL


@dataclass(frozen=True)
class StringPartition:
    """Partition of a root set into strings, largest and rightmost first.

    ``ambiguous`` is set when a different conjugation-closed grouping
    exists within the same gap window; the deterministic first choice is
    still returned, and downstream counting treats the flag as a
    diagnostic."""

    strings: tuple[BetheString, ...]
    ambiguous: bool

    @property
    def configuration(self) -> tuple[int, ...]:
        return tuple(sorted((s.length for s in self.strings), reverse=True))


def _maximal_chains(lam: np.ndarray, pool: list[int], start: int,
                    t_im: float, t_re: float) -> list[list[int]]:
    """All maximal descending chains from ``start``, first-found first.

    A chain step goes to an unused root one unit lower in imaginary part
    (within t_im) without drifting more than t_re in real part."""
    found: list[list[int]] = []

    def grow(cur: int, used: list[int]) -> None:
        cand = [j for j in pool if j not in used
                and abs(lam[cur].real - lam[j].real) <= t_re
                and abs((lam[cur].imag - lam[j].imag) - 1.0) <= t_im]
        if not cand:
            found.append(list(used))
            return
        # gap closeness first (rounded so sub-1e-6 noise cannot decide),
        # then real-part drift: members of a string share a center, so a
        # tie between equally spaced candidates goes to the nearest one
        for j in sorted(cand, key=lambda j: (
                round(abs((lam[cur].imag - lam[j].imag) - 1.0), 6),
                abs(lam[cur].real - lam[j].real))):
            grow(j, used + [j])

    grow(start, [start])
    maxlen = max(len(c) for c in found)
    out: list[list[int]] = []
    seen: set[frozenset[int]] = set()
    for c in found:
        if len(c) == maxlen and frozenset(c) not in seen:
            out.append(c)
            seen.add(frozenset(c))
    return out


def _partition_search(lam: np.ndarray, t_im: float, t_re: float,
                      cap: int = 16) -> list[list[list[int]]]:
    """Greedy partitions into maximal chains, branching over ties.

    The first result always follows the first-found maximal chain at
    every step; alternates (up to ``cap`` partitions, 4 chain choices per
    step) only exist when distinct maximal chains compete."""
    results: list[list[list[int]]] = []

    def rec(pool: list[int], acc: list[list[int]]) -> None:
        if len(results) >= cap:
            return
        if not pool:
            results.append([list(g) for g in acc])
            return
        start = max(pool, key=lambda i: (lam[i].imag, -lam[i].real))
        for chain in _maximal_chains(lam, pool, start, t_im, t_re)[:4]:
            rest = [i for i in pool if i not in chain]
            rec(rest, acc + [chain])
            if len(results) >= cap:
                return

    rec(list(range(lam.size)), [])
    return results


def _conjugation_closed(groups: list[list[complex]], tol: float = 0.05) -> bool:
    # every string must be closed under conjugation (so 1-strings are real);
    # rounded keys keep 1e-300-scale noise out of the sort order
    for g in groups:
        a = sorted((round(z.real, 6), round(z.imag, 6)) for z in g)
        b = sorted((round(z.real, 6), round(-z.imag, 6)) for z in g)
        if any(abs(x - u) > tol or abs(y - v) > tol
               for (x, y), (u, v) in zip(a, b)):
            return False
    return True


def _make_string(lam: np.ndarray, idx: list[int]) -> BetheString:
    order = sorted(idx, key=lambda i: (-round(lam[i].imag, 8), round(lam[i].real, 8)))
    return BetheString(roots=tuple(complex(lam[i]) for i in order),
                       indices=tuple(order))


def partition_into_strings(roots: Sequence[complex], tol_im: float = 0.3,
                           tol_re: float = 0.5) -> StringPartition:
    """Partition roots into strings, widening the gap window if needed.

    Long strings deviate outward with N, so the strict unit-gap window
    can leave a partition that fails conjugation closure; the window
    widens 0.3 -> 0.4 -> 0.5 until a closed partition appears.  Raises
    StringPartitionError when none does."""
    lam = np.asarray(list(roots), np.complex128)
    if lam.size == 0:
        return StringPartition(strings=(), ambiguous=False)
    for t_im in (tol_im, 0.4, 0.5):
        parts = _partition_search(lam, t_im, tol_re)
        valid = [p for p in parts
                 if _conjugation_closed([[complex(lam[i]) for i in g] for g in p])]
        if not valid:
            continue
        primary = valid[0]
        groups0 = {frozenset(g) for g in primary}
        ambiguous = any({frozenset(g) for g in p} != groups0 for p in valid[1:])
        strings = [_make_string(lam, g) for g in primary]
        strings.sort(key=lambda s: (-s.length, -round(s.center, 8)))
        return StringPartition(strings=tuple(strings), ambiguous=ambiguous)
    raise StringPartitionError(
        "no conjugation-closed string partition for roots "
        + ", ".join(f"{z.real:+.6f}{z.imag:+.6f}i" for z in lam))


def configuration_of_roots(roots: Sequence[complex]) -> tuple[int, ...]:
    """String-length partition (weakly decreasing) of a root set."""
    return partition_into_strings(roots).configuration


def crossing_delta(l: int, n: int) -> int:
    """Label shift when strings of lengths l and n cross: l + n - 3."""
    return l + n - 3


def crossing_corrected_J(strings: Sequence[BetheString],
                         j_sums: Sequence[HalfInt]) -> list[HalfInt | None]:
    """Position-independent label sums for the right-half-plane strings.

    For a string S of length n with center strictly right of zero, the
    corrected sum subtracts crossing_delta(l, n) for every strictly
    shorter string strictly to its right and adds it for every strictly
    longer string strictly to its left.  Strings with center <= 0 get
    None: a centered string's rigging is half its vacancy number, and a
    left-half-plane string is labeled through its flip partner."""
    if len(strings) != len(j_sums):
        raise ValueError("need one label sum per string")
    out: list[HalfInt | None] = []
    for k, S in enumerate(strings):
        if S.center <= ZERO_CENTER_TOL:
            out.append(None)
            continue
        val = j_sums[k]
        for m, T in enumerate(strings):
            if m == k:
                continue
            if T.length < S.length and T.center > S.center:
                val = val - crossing_delta(T.length, S.length)
            elif T.length > S.length and T.center < S.center:
                val = val + crossing_delta(T.length, S.length)
        out.append(val)
    return out
