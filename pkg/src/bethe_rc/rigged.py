"""Partitions, vacancy numbers, and rigged configurations.

A rigged configuration is a partition nu of the down-spin count together
with an integer rigging for every part, bounded by the vacancy number of
that part length.  These are the exact combinatorial labels that the
classifier assigns to Bethe solutions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of n as weakly decreasing tuples."""
    if n == 0:
        yield ()
        return
    # iterative descent: first part k, then partitions of the remainder with parts <= k
    def rec(rem: int, maxpart: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        for k in range(min(rem, maxpart), 0, -1):
            for rest in rec(rem - k, k):
                yield (k,) + rest

    yield from rec(n, n)


def conjugate(nu: tuple[int, ...]) -> tuple[int, ...]:
    """Transpose of a partition."""
    if not nu:
        return ()
    return tuple(sum(1 for p in nu if p >= i) for i in range(1, nu[0] + 1))


def vacancy_number(nu: tuple[int, ...], k: int, N: int) -> int:
    """P_k(nu) = N - 2 sum_j min(k, nu_j)."""
    if k <= 0:
        raise ValueError(f"part length must be positive, got {k}")
    if N <= 0:
        raise ValueError(f"chain length must be positive, got {N}")
    return N - 2 * sum(min(k, p) for p in nu)


def _multiplicities(nu: tuple[int, ...]) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in nu:
        out[p] = out.get(p, 0) + 1
    return out


@dataclass(frozen=True)
class RiggedConfiguration:
    """Partition nu with a weakly increasing rigging multiset per part length."""

    N: int
    nu: tuple[int, ...]
    riggings: tuple[tuple[int, tuple[int, ...]], ...]  # ((length, sorted riggings), ...)

    def __post_init__(self) -> None:
        if list(self.nu) != sorted(self.nu, reverse=True) or any(p < 1 for p in self.nu):
            raise ValueError(f"nu must be weakly decreasing positive, got {self.nu}")
        mult = _multiplicities(self.nu)
        seen = dict(self.riggings)
        if set(seen) != set(mult):
            raise ValueError("riggings must cover exactly the part lengths of nu")
        for k, rigs in self.riggings:
            if len(rigs) != mult[k]:
                raise ValueError(f"need {mult[k]} riggings for length {k}, got {len(rigs)}")
            if list(rigs) != sorted(rigs):
                raise ValueError(f"riggings for length {k} must be weakly increasing")
            P = vacancy_number(self.nu, k, self.N)
            if P < 0:
                raise ValueError(f"inadmissible configuration: P_{k} = {P} < 0")
            if any(r < 0 or r > P for r in rigs):
                raise ValueError(f"riggings for length {k} must lie in [0, {P}]")

    @classmethod
    def make(cls, N: int, nu: tuple[int, ...], riggings: dict[int, list[int]]) -> "RiggedConfiguration":
        canon = tuple(sorted((k, tuple(sorted(v))) for k, v in riggings.items()))
        return cls(N=N, nu=tuple(sorted(nu, reverse=True)), riggings=canon)

    @property
    def cells(self) -> int:
        return sum(self.nu)

    def vacancy(self, k: int) -> int:
        return vacancy_number(self.nu, k, self.N)

    def rigging_map(self) -> dict[int, tuple[int, ...]]:
        return dict(self.riggings)

    def flip(self) -> "RiggedConfiguration":
        """Each rigging I -> P - I, re-sorted; an involution."""
        out = {k: [self.vacancy(k) - r for r in rigs] for k, rigs in self.riggings}
        return RiggedConfiguration.make(self.N, self.nu, out)

    def text(self) -> str:
        """Stable textual form used in reports and JSONL records."""
        nu_s = ",".join(str(p) for p in self.nu)
        rig_s = ",".join(
            f"{k}:[{','.join(str(r) for r in rigs)}]"
            for k, rigs in sorted(self.riggings, reverse=True)
        )
        return f"nu=[{nu_s}]; riggings={{{rig_s}}}; N={self.N}"


def canonical_equal(a: RiggedConfiguration, b: RiggedConfiguration) -> bool:
    return a.N == b.N and a.nu == b.nu and a.riggings == b.riggings


def admissible_partitions(N: int, ell: int) -> list[tuple[int, ...]]:
    """Partitions of ell whose occupied part lengths all have P_k >= 0."""
    out = []
    for nu in partitions(ell):
        if all(vacancy_number(nu, k, N) >= 0 for k in set(nu)):
            out.append(nu)
    return out


def count_rigged(nu: tuple[int, ...], N: int) -> int:
    """Number of rigging choices: prod_k C(P_k + m_k, m_k)."""
    total = 1
    for k, m in _multiplicities(nu).items():
        P = vacancy_number(nu, k, N)
        if P < 0:
            return 0
        total *= math.comb(P + m, m)
    return total


def enumerate_rigged_configurations(N: int, ell: int) -> list[RiggedConfiguration]:
    """All admissible rigged configurations for ell down spins on N sites."""
    if ell < 0 or 2 * ell > N:
        raise ValueError(f"need 0 <= ell <= N/2, got ell={ell}, N={N}")
    out: list[RiggedConfiguration] = []
    for nu in admissible_partitions(N, ell):
        mult = _multiplicities(nu)
        lengths = sorted(mult)
        # weakly increasing multisets per length, cartesian across lengths
        def rec(i: int, acc: dict[int, list[int]]) -> None:
            if i == len(lengths):
                out.append(RiggedConfiguration.make(N, nu, acc))
                return
            k = lengths[i]
            P = vacancy_number(nu, k, N)
            m = mult[k]

            def multisets(start: int, left: int, cur: list[int]) -> None:
                if left == 0:
                    rec(i + 1, {**acc, k: list(cur)})
                    return
                for v in range(start, P + 1):
                    cur.append(v)
                    multisets(v, left - 1, cur)
                    cur.pop()

            multisets(0, m, [])

        rec(0, {})
    return out


def sector_count(N: int, ell: int) -> int:
    """Independent count of highest-weight states: C(N, ell) - C(N, ell-1)."""
    return math.comb(N, ell) - math.comb(N, ell - 1)
