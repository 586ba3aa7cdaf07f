"""Assignment of rigged configurations to certified solutions.

Within a sector, solutions sharing a string configuration nu are labeled
jointly: each string's label-number sum is corrected for crossings,
same-length strings are ranked by center, the per-rank maxima fix the
offset M, and riggings follow as P - (M - Jtilde) for right-half-plane
strings, P/2 for centered strings, and the flip image P - r of the
mirror string's rigging for left-half-plane strings.  The conjectured
one-to-one map onto rigged configurations is then checked by counting.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .halfint import HalfInt
from .quantum_numbers import bethe_numbers_regular, singular_string_J
from .rigged import (RiggedConfiguration, conjugate, count_rigged,
                     vacancy_number)
from .solver import BetheSolution, SectorSolutions
from .strings import StringPartition, crossing_corrected_J, partition_into_strings

__all__ = [
    "ClassificationError",
    "LabeledSolution",
    "SolutionClassification",
    "SectorReport",
    "label_solution",
    "compute_M",
    "closed_form_M",
    "classify_solutions",
    "classify_sector",
    "verify_flip_consistency",
]


class ClassificationError(ValueError):
    """A solution cannot be consistently labeled."""


@dataclass(frozen=True)
class LabeledSolution:
    """A solution with its string partition and label numbers.

    ``root_numbers`` align with the solution's stored root order; the
    exact +-i/2 pair of a singular solution carries None there and
    contributes through ``pair_number``, its regularized joint number.
    ``corrected`` holds the crossing-corrected per-string sums (None for
    strings with center <= 0)."""

    solution: BetheSolution
    partition: StringPartition
    root_numbers: tuple[HalfInt | None, ...]
    pair_number: HalfInt | None
    string_numbers: tuple[HalfInt, ...]
    corrected: tuple[HalfInt | None, ...]

    @property
    def configuration(self) -> tuple[int, ...]:
        return self.partition.configuration


@dataclass(frozen=True)
class SolutionClassification:
    labeled: LabeledSolution
    rigged: RiggedConfiguration


def label_solution(sol: BetheSolution) -> LabeledSolution:
    """String partition plus label numbers for one solution."""
    lam = sol.numeric_roots()
    part = partition_into_strings(lam)
    if sol.kind == "regular":
        recs = bethe_numbers_regular(sol)
        root_numbers: tuple[HalfInt | None, ...] = tuple(r.value for r in recs)
        pair = None
    else:
        pair, rest = singular_string_J(sol)
        root_numbers = (None, None) + tuple(r.value for r in rest)
    string_numbers = []
    for S in part.strings:
        tot = HalfInt(0)
        for i in S.indices:
            v = root_numbers[i]
            if v is not None:
                tot = tot + v
        if pair is not None and (0 in S.indices or 1 in S.indices):
            if not (0 in S.indices and 1 in S.indices):
                raise ClassificationError(
                    "exact +-i/2 pair split across strings")
            tot = tot + pair
        string_numbers.append(tot)
    corrected = crossing_corrected_J(part.strings, string_numbers)
    return LabeledSolution(solution=sol, partition=part,
                           root_numbers=root_numbers, pair_number=pair,
                           string_numbers=tuple(string_numbers),
                           corrected=tuple(corrected))


def _rank_strings(part: StringPartition) -> dict[int, list[int]]:
    """String indices per length, ranked by strictly decreasing center."""
    by_len: dict[int, list[int]] = {}
    for k, S in enumerate(part.strings):
        by_len.setdefault(S.length, []).append(k)
    for length, idxs in by_len.items():
        idxs.sort(key=lambda k: -part.strings[k].center)
        centers = [round(part.strings[k].center, 7) for k in idxs]
        if len(set(centers)) != len(centers):
            raise ClassificationError(
                f"two strings of length {length} share a center; "
                "ranking is undefined")
    return by_len


def compute_M(labeled: list[LabeledSolution]) -> dict[tuple[int, int], HalfInt]:
    """Per-(length, rank) maxima of the corrected sums over Sol(nu).

    Ranks are 0-based from the rightmost string of each length.  Only
    right-half-plane strings contribute (the others carry None)."""
    M: dict[tuple[int, int], HalfInt] = {}
    for lab in labeled:
        ranks = _rank_strings(lab.partition)
        for length, idxs in ranks.items():
            for rank, k in enumerate(idxs):
                jt = lab.corrected[k]
                if jt is None:
                    continue
                key = (length, rank)
                if key not in M or jt > M[key]:
                    M[key] = jt
    return M


def closed_form_M(nu: tuple[int, ...], N: int) -> dict[tuple[int, int], HalfInt]:
    """Conjectured closed forms for the rank-0 maxima, where stated.

    With nu' the transpose: if nu_2 < 3 then
    M[nu_1, 0] = (N - nu'_1 - max(1, nu'_2)) nu_1 / 2, and for the
    two-string shape nu = (nu_1, 1) with nu_1 > 1 additionally
    M[1, 0] = (N + nu_1 + nu_2 - 2 nu'_1 - 3)/2.  (The second form fails
    for longer tails such as (2, 1, 1), so it is not applied there.)"""
    out: dict[tuple[int, int], HalfInt] = {}
    if not nu:
        return out
    nup = conjugate(nu)
    nu2 = nu[1] if len(nu) > 1 else 0
    if nu2 < 3:
        v2p = nup[1] if len(nup) > 1 else 0
        out[(nu[0], 0)] = HalfInt((N - nup[0] - max(1, v2p)) * nu[0])
    if len(nu) == 2 and nu[0] > 1 and nu2 == 1:
        out[(1, 0)] = HalfInt(N + nu[0] + nu2 - 2 * nup[0] - 3)
    return out


def _roots_key(roots, negate: bool = False):
    s = -1.0 if negate else 1.0
    return tuple(sorted((round(s * z.real, 6), round(s * z.imag, 6))
                        for z in roots))


def classify_solutions(labeled: list[LabeledSolution], N: int) -> list[SolutionClassification]:
    """Riggings for all solutions sharing one configuration.

    Requires Sol(nu) complete and closed under negation: the offsets M
    are empirical maxima, and left-half-plane strings read their rigging
    off the mirror string of the negated solution."""
    if not labeled:
        return []
    nu = labeled[0].configuration
    for lab in labeled:
        if lab.configuration != nu:
            raise ClassificationError("mixed configurations in one batch")
    M = compute_M(labeled)
    ranks = [_rank_strings(lab.partition) for lab in labeled]
    index_of = {_roots_key(lab.solution.roots): a for a, lab in enumerate(labeled)}

    # pass 1: centered and right-half-plane strings
    riggings: list[dict[int, int | None]] = []
    for a, lab in enumerate(labeled):
        rig: dict[int, int | None] = {}
        for length, idxs in ranks[a].items():
            P = vacancy_number(nu, length, N)
            for rank, k in enumerate(idxs):
                S = lab.partition.strings[k]
                if S.is_centered:
                    if P % 2 != 0:
                        raise ClassificationError(
                            f"centered string of length {length} with odd "
                            f"vacancy number {P}")
                    rig[k] = P // 2
                elif S.center > 0:
                    jt = lab.corrected[k]
                    gap = M[(length, rank)] - jt
                    if not gap.is_integer or gap.doubled < 0:
                        raise ClassificationError(
                            f"offset minus corrected sum is {gap}, not a "
                            "nonnegative integer")
                    rig[k] = P - gap.doubled // 2
                else:
                    rig[k] = None
        riggings.append(rig)

    # pass 2: left-half-plane strings from the mirror string of the
    # negated solution (rank reverses with the sign flip)
    for a, lab in enumerate(labeled):
        for length, idxs in ranks[a].items():
            P = vacancy_number(nu, length, N)
            m = len(idxs)
            for rank, k in enumerate(idxs):
                if riggings[a][k] is not None:
                    continue
                if P == 0:
                    riggings[a][k] = 0
                    continue
                b = index_of.get(_roots_key(lab.solution.roots, negate=True))
                if b is None:
                    raise ClassificationError(
                        "negated partner solution missing; cannot label "
                        "left-half-plane strings")
                pk = ranks[b][length][m - 1 - rank]
                pr = riggings[b][pk]
                if pr is None:
                    if b == a and m == 1:
                        # a self-negative solution whose partition is not
                        # negation-equivariant (the mirror chain was
                        # absorbed into a longer string); the string is
                        # its own flip partner, so r = P - r
                        if P % 2 != 0:
                            raise ClassificationError(
                                f"self-paired string of length {length} "
                                f"with odd vacancy number {P}")
                        riggings[a][k] = P // 2
                        continue
                    raise ClassificationError(
                        "mirror string is also left-half-plane")
                riggings[a][k] = P - pr

    out = []
    for a, lab in enumerate(labeled):
        per_len = {length: [riggings[a][k] for k in idxs]
                   for length, idxs in ranks[a].items()}
        rc = RiggedConfiguration.make(N, nu, per_len)
        out.append(SolutionClassification(labeled=lab, rigged=rc))
    return out


@dataclass(frozen=True)
class SectorReport:
    """Classification of a whole sector with its bijection verdict."""

    N: int
    ell: int
    classifications: tuple[SolutionClassification, ...]
    problems: tuple[str, ...]

    @property
    def bijective(self) -> bool:
        """True when every configuration's solutions map one-to-one onto
        its full rigging set."""
        if self.problems:
            return False
        seen: dict[tuple[int, ...], list[RiggedConfiguration]] = {}
        for c in self.classifications:
            seen.setdefault(c.rigged.nu, []).append(c.rigged)
        for nu, rcs in seen.items():
            want = count_rigged(nu, self.N)
            keys = {rc.riggings for rc in rcs}
            if len(rcs) != want or len(keys) != len(rcs):
                return False
        return True

    def by_configuration(self) -> dict[tuple[int, ...], list[SolutionClassification]]:
        out: dict[tuple[int, ...], list[SolutionClassification]] = {}
        for c in self.classifications:
            out.setdefault(c.rigged.nu, []).append(c)
        return out


def classify_sector(sector: SectorSolutions) -> SectorReport:
    """Label every solution of the sector and collect any failures."""
    problems: list[str] = []
    by_nu: dict[tuple[int, ...], list[LabeledSolution]] = {}
    for sol in sector.solutions:
        try:
            lab = label_solution(sol)
        except Exception as e:  # honest failure beats a silent drop
            problems.append(f"labeling failed for {sol.kind} solution: {e}")
            continue
        by_nu.setdefault(lab.configuration, []).append(lab)
    classifications: list[SolutionClassification] = []
    for nu in sorted(by_nu, reverse=True):
        batch = by_nu[nu]
        want = count_rigged(nu, sector.N)
        if len(batch) != want:
            problems.append(
                f"configuration {nu}: {len(batch)} solutions for "
                f"{want} rigged configurations")
        try:
            classifications.extend(classify_solutions(batch, sector.N))
        except ValueError as e:  # includes out-of-range riggings
            problems.append(f"configuration {nu}: {e}")
    return SectorReport(N=sector.N, ell=sector.ell,
                        classifications=tuple(classifications),
                        problems=tuple(problems))


def verify_flip_consistency(report: SectorReport) -> list[str]:
    """Negating a solution must flip every rigging to P - r."""
    out: list[str] = []
    index = {_roots_key(c.labeled.solution.roots): c
             for c in report.classifications}
    for c in report.classifications:
        partner = index.get(_roots_key(c.labeled.solution.roots, negate=True))
        if partner is None:
            out.append(f"no negated partner for a {c.rigged.nu} solution")
            continue
        if partner.rigged != c.rigged.flip():
            out.append(
                f"flip mismatch for {c.rigged.text()} vs {partner.rigged.text()}")
    return out
