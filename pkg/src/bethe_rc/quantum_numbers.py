"""Bethe quantum numbers via a branch-cut-aware complex arctangent.

The quantum number of root k is

    J_k = (N/2pi) * (2 Arctan(2 l_k) - (2/N) sum_{j!=k} Arctan(l_k - l_j))

with Arctan the analytic continuation of the real arctangent cut along
(i, +i inf) and (-i, -i inf).  On the cuts the value is fixed by oddness
Arctan(-z) = -Arctan(z), which reproduces both one-sided jump relations
and makes quantum numbers negate exactly under root negation.  For a
certified solution every J_k lands on a half-integer of fixed parity;
the distance from it (the defect) is a numerical diagnostic.

The exact singular pair (i/2, -i/2) has no individual quantum numbers
(Arctan is singular at +-i); only the pair sum survives, computed along
the deformation l_1 = i/2 + re^(i theta) + c (re^(i theta))^N,
l_2 = -i/2 + re^(i theta) as r -> 0.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .halfint import HalfInt
from .solver import BetheSolution, singular_c_constant

__all__ = [
    "arctan_branch",
    "BetheNumberRecord",
    "raw_bethe_values",
    "bethe_numbers_regular",
    "bethe_numbers_flip_check",
    "singular_string_J",
]

# roots this close to the imaginary axis are treated as exactly on it,
# so both members of a conjugate pair see the same cut convention
_AXIS_TOL = 1e-9

# rejection radius around the branch points +-i themselves; kept far below
# _AXIS_TOL because narrow 2-strings put root differences within 1e-12 of
# +-i, where the value is still well-defined (the log's divergence cancels
# against the other terms of a quantum number, and any float-representable
# deviation keeps the half-integer rounding unambiguous)
_BRANCH_TOL = 1e-15

WARN_DEFECT = 1e-4
FAIL_DEFECT = 0.25


def arctan_branch(z: complex) -> complex:
    """Arctan with cuts (i, +i inf), (-i, -i inf); odd on the cuts."""
    x, y = z.real, z.imag
    if abs(x) <= _AXIS_TOL and abs(abs(y) - 1.0) <= _BRANCH_TOL:
        raise ValueError(f"branch point {z}")
    if abs(x) <= _AXIS_TOL and abs(y) > 1.0:
        # principal log evaluated from Re > 0 gives the upper-cut value;
        # the lower cut is its negation by oddness
        w = complex(0.0, abs(y))
        val = (0.5 / 1j) * cmath.log((1 + 1j * w) / (1 - 1j * w))
        return val if y > 0 else -val
    return (0.5 / 1j) * cmath.log((1 + 1j * z) / (1 - 1j * z))


@dataclass(frozen=True)
class BetheNumberRecord:
    """One root's quantum number plus rounding diagnostics."""

    value: HalfInt
    defect: float

    def __post_init__(self) -> None:
        if self.defect >= FAIL_DEFECT:
            raise ValueError(f"defect {self.defect:g} leaves rounding ambiguous")


def raw_bethe_values(roots: Sequence[complex], N: int) -> list[complex]:
    """Unrounded complex J_k for every root."""
    ell = len(roots)
    out = []
    for k in range(ell):
        s = (N / math.pi) * arctan_branch(2 * roots[k])
        for j in range(ell):
            if j != k:
                s -= arctan_branch(roots[k] - roots[j]) / math.pi
        out.append(s)
    return out


def _round_record(raw: complex, N: int, ell: int, label: str) -> BetheNumberRecord:
    doubled = round(2 * raw.real)
    defect = abs(raw - doubled / 2.0)
    if defect >= FAIL_DEFECT:
        raise ValueError(
            f"quantum number of {label} is {raw:.6f}, "
            f"distance {defect:.3f} from every half-integer")
    value = HalfInt(int(doubled))
    expect = (ell - 1 - N) % 2
    if value.doubled % 2 != expect:
        raise ValueError(
            f"quantum number {value} of {label} violates parity "
            f"2J = {ell - 1 - N} mod 2")
    return BetheNumberRecord(value=value, defect=defect)


# pair differences closer to +-i than this lose too many digits in the
# double-precision log for the quantum number to be trustworthy; such
# solutions are re-refined in arbitrary precision, which resolves the
# true sub-float deviation of the pair
_MP_PAIR_TOL = 1e-11


def _needs_mp(roots: Sequence[complex]) -> bool:
    rs = list(roots)
    for i in range(len(rs)):
        for j in range(i):
            d = rs[i] - rs[j]
            if min(abs(d - 1j), abs(d + 1j)) < _MP_PAIR_TOL:
                return True
    return False


def _arctan_branch_mp(z, mp):
    """arctan_branch in mpmath arithmetic (same cuts and conventions)."""
    x, y = z.real, z.imag
    if abs(x) <= mp.mpf(_AXIS_TOL) and abs(abs(y) - 1) <= mp.mpf("1e-60"):
        raise ValueError(f"branch point {z}")
    one = mp.mpf(1)
    half_over_i = mp.mpc(0, "-0.5")
    if abs(x) <= mp.mpf(_AXIS_TOL) and abs(y) > 1:
        w = mp.mpc(0, abs(y))
        val = half_over_i * mp.log((one + mp.mpc(0, 1) * w) / (one - mp.mpc(0, 1) * w))
        return val if y > 0 else -val
    return half_over_i * mp.log((one + mp.mpc(0, 1) * z) / (one - mp.mpc(0, 1) * z))


def _raw_values_mp(roots: Sequence[complex], N: int) -> list[complex]:
    """Unrounded J_k from re-certified arbitrary-precision roots."""
    import mpmath as mp

    from . import certify as _certify

    pts, _, ok = _certify.certify(list(roots), N)
    if not ok:
        raise ValueError("high-precision refinement failed for quantum numbers")
    saved = mp.mp.dps
    try:
        mp.mp.dps = 80
        out = []
        for k in range(len(pts)):
            s = mp.mpf(N) / mp.pi * _arctan_branch_mp(2 * pts[k], mp)
            for j in range(len(pts)):
                if j != k:
                    s -= _arctan_branch_mp(pts[k] - pts[j], mp) / mp.pi
            out.append(complex(s))
        return out
    finally:
        mp.mp.dps = saved


def bethe_numbers_regular(sol: BetheSolution, N: int | None = None) -> list[BetheNumberRecord]:
    """Rounded quantum numbers for a regular solution, in root order."""
    if sol.kind != "regular":
        raise ValueError("use singular_string_J for the singular pair")
    n = sol.N if N is None else N
    if _needs_mp(sol.roots):
        raws = _raw_values_mp(sol.roots, n)
    else:
        raws = raw_bethe_values(sol.roots, n)
    return [_round_record(raw, n, sol.ell, f"root {z}")
            for z, raw in zip(sol.roots, raws)]


def bethe_numbers_flip_check(sol: BetheSolution, flipped: BetheSolution) -> bool:
    """True iff quantum numbers negate root-by-root under negation."""
    a = bethe_numbers_regular(sol)
    b = bethe_numbers_regular(flipped)
    order = {}
    for rec, z in zip(b, flipped.roots):
        order.setdefault((round(z.real, 8), round(z.imag, 8)), []).append(rec)
    for rec, z in zip(a, sol.roots):
        key = (round(-z.real, 8), round(-z.imag, 8))
        partners = order.get(key)
        if not partners:
            raise ValueError(f"no negated partner for root {z}")
        match = [p for p in partners if p.value == -rec.value]
        if not match:
            return False
        partners.remove(match[0])
    return True


def _singular_values(
    sol: BetheSolution,
    N: int | None,
    r: float,
    theta: float,
) -> tuple[BetheNumberRecord, list[BetheNumberRecord]]:
    if sol.kind != "singular":
        raise ValueError("solution is not singular")
    if not -math.pi / 2 < theta < math.pi / 2:
        raise ValueError(f"theta {theta} outside (-pi/2, pi/2)")
    n = sol.N if N is None else N
    rest = list(sol.roots[2:])
    c = singular_c_constant(rest, n)
    eps = r * cmath.exp(1j * theta)
    l1 = 0.5j + eps + c * eps ** n
    l2 = -0.5j + eps
    others = [l1, l2] + rest

    def raw_j(k: int, skip: int) -> complex:
        z = others[k]
        s = (n / math.pi) * arctan_branch(2 * z)
        for j, w in enumerate(others):
            if j != k and j != skip:
                s -= arctan_branch(z - w) / math.pi
        return s

    # the mutual terms Arctan(l1-l2) and Arctan(l2-l1) cancel exactly by
    # oddness and sit within |c| r^N of a branch point, so they are dropped
    total = raw_j(0, 1) + raw_j(1, 0)
    doubled = round(2 * total.real)
    defect = abs(total - doubled / 2.0)
    if defect >= FAIL_DEFECT:
        raise ValueError(
            f"singular pair sum {total:.6f} does not settle on a half-integer")
    pair_record = BetheNumberRecord(value=HalfInt(int(doubled)), defect=defect)

    records = []
    if rest:
        # interactions with the pair are evaluated at the undeformed
        # exact positions; the r -> 0 limit is smooth there
        raws = []
        for k, z in enumerate(rest):
            s = (n / math.pi) * arctan_branch(2 * z)
            s -= arctan_branch(z - 0.5j) / math.pi
            s -= arctan_branch(z + 0.5j) / math.pi
            for j, w in enumerate(rest):
                if j != k:
                    s -= arctan_branch(z - w) / math.pi
            raws.append(s)
        records = [_round_record(raw, n, sol.ell, f"root {z}")
                   for z, raw in zip(rest, raws)]
    return pair_record, records


def singular_string_J(
    sol: BetheSolution,
    N: int | None = None,
    r: float = 1e-5,
    theta: float = 0.0,
) -> tuple[HalfInt, list[BetheNumberRecord]]:
    """Quantum-number sum of the singular pair, plus records for the
    remaining roots (computed on the regular path).

    The pair is deformed with radius r and angle theta in (-pi/2, pi/2);
    the full interaction terms with the other roots are included.  The
    rounded sum is independent of theta."""
    pair_record, records = _singular_values(sol, N, r, theta)
    return pair_record.value, records


def singular_pair_record(
    sol: BetheSolution,
    N: int | None = None,
    r: float = 1e-5,
    theta: float = 0.0,
) -> BetheNumberRecord:
    """The pair sum together with its rounding defect."""
    return _singular_values(sol, N, r, theta)[0]
