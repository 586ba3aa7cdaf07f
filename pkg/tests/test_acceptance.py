"""Acceptance suite: one test per stated criterion, full-size run.

Each test prints a single PASS line on success; a failure fails the build.
The N=12 pipeline (solve -> quantum numbers -> classify -> flip -> exact
spectrum) runs exactly once per session via the ``verified12`` fixture.
"""

from __future__ import annotations

import pytest

from bethe_rc.classify import compute_M, label_solution
from bethe_rc.figures import catalogue_order
from bethe_rc.halfint import HalfInt
from bethe_rc.quantum_numbers import (
    bethe_numbers_flip_check,
    bethe_numbers_regular,
    singular_pair_record,
    singular_string_J,
)
from bethe_rc.rigged import enumerate_rigged_configurations, sector_count
from bethe_rc.solver import energy
from bethe_rc.spectrum import match_bethe_energies
from bethe_rc.strings import crossing_delta

EXPECTED_COUNTS_12 = {1: 11, 2: 54, 3: 154, 4: 275, 5: 297, 6: 132}

# 6-root catalogue for nu=(3,2,1) at N=12, as published: groups of seven by
# 2-string rigging; #12..#21 are the negations of #10..#1 to the printed
# digits, #11 is self-negative.
_TABLE_FIRST_HALF = {
    1: [0.54241927, 0.54455699 + 0.99639165j, 0.54455699 - 0.99639165j,
        -0.45810568 + 0.50017785j, -0.45810568 - 0.50017785j, -0.71532188],
    2: [0.52708058, 0.52957875 + 0.99660493j, 0.52957875 - 0.99660493j,
        -0.64127830 + 0.50335013j, -0.64127830 - 0.50335013j, -0.30368149],
    3: [0.49893578, 0.50200196 + 0.99724969j, 0.50200196 - 0.99724969j,
        -0.69284388 + 0.50515234j, -0.69284388 - 0.50515234j, -0.11725196],
    4: [0.46564665, 0.46941736 + 0.99809739j, 0.46941736 - 0.99809739j,
        -0.71976299 + 0.50614240j, -0.71976299 - 0.50614240j, 0.035044606],
    5: [0.42430010, 0.42960641 + 0.99941330j, 0.42960641 - 0.99941330j,
        -0.73869344 + 0.50683156j, -0.73869344 - 0.50683156j, 0.19387395],
    6: [0.38490522 + 0.01906127j, 0.36730804 + 0.99179719j,
        0.36730804 - 0.99179719j, -0.75221326 + 0.50729383j,
        -0.75221326 - 0.50729383j, 0.38490522 - 0.01906127j],
    7: [0.23056669, 0.23083274 + 0.99967059j, 0.23083274 - 0.99967059j,
        -0.76056174 + 0.50745313j, -0.76056174 - 0.50745313j, 0.82889133],
    8: [0.20669577, 0.20597572 + 1.00038608j, 0.20597572 - 1.00038608j,
        0.10578435 + 0.50000000j, 0.10578435 - 0.50000000j, -0.83021590],
    9: [0.059726272, 0.06007063 + 0.99927337j, 0.06007063 - 0.99927337j,
        0.10847310 + 0.50000000j, 0.10847310 - 0.50000000j, -0.39681373],
    10: [0.010757119, 0.01249979 + 0.99958901j, 0.01249979 - 0.99958901j,
         0.06941354 + 0.50000000j, 0.06941354 - 0.50000000j, -0.17458378],
    11: [0.018539900j, 0.99377501j, -0.99377501j,
         0.50000000j, -0.50000000j, -0.018539900j],
}


def golden_table() -> dict[int, list[complex]]:
    table = dict(_TABLE_FIRST_HALF)
    for k in range(12, 22):
        table[k] = [-z for z in _TABLE_FIRST_HALF[22 - k]]
    return table


def _sorted_roots(roots) -> list[complex]:
    return sorted(roots, key=lambda z: (round(z.real, 6), round(z.imag, 6)))


def _roots_key(roots, negate: bool = False):
    s = -1.0 if negate else 1.0
    return tuple(sorted((round(s * z.real, 6), round(s * z.imag, 6))
                        for z in roots))


@pytest.fixture(scope="module")
def golden_sector(verified12, classified):
    # classification of the persisted (12, 6) sector
    return classified(12, 6)


@pytest.fixture(scope="module")
def golden_321(golden_sector):
    cls = [c for c in golden_sector.classifications
           if c.labeled.configuration == (3, 2, 1)]
    ordered = catalogue_order([c.labeled for c in cls])
    by_id = {id(c.labeled): c for c in cls}
    return [by_id[id(lab)] for lab in ordered]


def test_criterion_1_sector_counts_and_residuals(verified12, solved):
    manifest, _out = verified12
    solve_stage = manifest.stage("solve")
    assert solve_stage.status == "ok", solve_stage.detail
    total = 0
    worst = 0.0
    for ell, want in EXPECTED_COUNTS_12.items():
        sec = solved(12, ell)
        assert len(sec.solutions) == want == sector_count(12, ell)
        total += len(sec.solutions)
        worst = max(worst, max(s.residual for s in sec.solutions))
    assert total == 923
    assert worst < 1e-10
    assert manifest.exit_code == 0
    print(f"CRITERION 1 PASS: counts 11/54/154/275/297/132, total 923, "
          f"max normalized residual {worst:.2e} < 1e-10")


def test_criterion_2_golden_sector_tables(golden_321):
    assert len(golden_321) == 21
    table = golden_table()

    # roots match the published tables to 1e-6 per component
    for k, c in enumerate(golden_321, start=1):
        got = _sorted_roots(c.labeled.solution.roots)
        want = _sorted_roots(table[k])
        for g, w in zip(got, want):
            assert abs(g - w) < 1e-6, (k, g, w)

    # solution #1 label sets per string: {7/2,5/2,9/2 | -7/2,-5/2 | -5/2}
    lab1 = golden_321[0].labeled
    by_len = {S.length: sorted(
        lab1.root_numbers[i] for i in S.indices) for S in lab1.partition.strings}
    assert by_len[3] == [HalfInt(5), HalfInt(7), HalfInt(9)]
    assert by_len[2] == [HalfInt(-7), HalfInt(-5)]
    assert by_len[1] == [HalfInt(-5)]

    # M table (M_3, M_2, M_1) = (21/2, 8, 7/2)
    M = compute_M([c.labeled for c in golden_321])
    assert M == {(3, 0): HalfInt(21), (2, 0): HalfInt(16), (1, 0): HalfInt(7)}

    # three-group rigging structure
    for c in golden_321:
        assert c.rigged.rigging_map()[3] == (0,)
    r2 = [c.rigged.rigging_map()[2][0] for c in golden_321]
    assert r2 == [0] * 7 + [1] * 7 + [2] * 7
    r1 = [c.rigged.rigging_map()[1][0] for c in golden_321]
    assert r1 == [0, 1, 2, 3, 4, 5, 6] * 3

    # solution #11: zero-center 3-string rigged 0
    c11 = golden_321[10]
    assert c11.labeled.solution.kind == "singular"
    assert c11.rigged.text() == "nu=[3,2,1]; riggings={3:[0],2:[1],1:[3]}; N=12"
    print("CRITERION 2 PASS: 21 roots to 1e-6, #1 labels, M=(21/2,8,7/2), "
          "three-group riggings, #11 zero-center rigging 0")


def test_criterion_3_crossing_spot_values(golden_321):
    # exact half-integer arithmetic
    assert HalfInt(23) - crossing_delta(3, 1) == HalfInt(21)
    assert HalfInt(10) + crossing_delta(2, 3) == HalfInt(14)
    assert HalfInt(12) + crossing_delta(2, 3) == HalfInt(16)

    # and each spot value occurs in the golden sector
    pairs = set()
    for c in golden_321:
        lab = c.labeled
        for S, js, jt in zip(lab.partition.strings, lab.string_numbers,
                             lab.corrected):
            if jt is not None:
                pairs.add((S.length, js, jt))
    assert (3, HalfInt(23), HalfInt(21)) in pairs
    assert (2, HalfInt(10), HalfInt(14)) in pairs
    assert (2, HalfInt(12), HalfInt(16)) in pairs
    print("CRITERION 3 PASS: 23/2-D(3,1)=21/2, 10/2+D(2,3)=14/2, "
          "12/2+D(2,3)=16/2, exactly and in the data")


def test_criterion_4_five_one_sector(golden_sector):
    cls = [c for c in golden_sector.classifications
           if c.labeled.configuration == (5, 1)]
    assert len(cls) == 9
    applicable = 0
    for c in cls:
        lab = c.labeled
        for S, js in zip(lab.partition.strings, lab.string_numbers):
            if S.length != 5 or abs(S.center) < 1e-2:
                continue
            applicable += 1
            want = HalfInt(45) if S.center > 0 else HalfInt(-45)
            assert js == want, (S.center, js)
    assert applicable == 8
    print("CRITERION 4 PASS: 9 solutions for nu=(5,1); 5-string J(S) = "
          "+-45/2 by center sign on all 8 off-center panels")


@pytest.mark.parametrize("N", [4, 6, 8, 10, 12])
def test_criterion_5_bijection(N, classified, verified12):
    for ell in range(1, N // 2 + 1):
        rep = classified(N, ell)
        assert rep.problems == (), (N, ell, rep.problems)
        assert rep.bijective, (N, ell)
        got = sorted((c.rigged.nu, c.rigged.riggings)
                     for c in rep.classifications)
        want = sorted((rc.nu, rc.riggings)
                      for rc in enumerate_rigged_configurations(N, ell))
        assert got == want, (N, ell)
    print(f"CRITERION 5 PASS: classification bijective onto the rigged "
          f"enumeration for every sector at N={N}")


@pytest.mark.parametrize("N", [4, 6, 8, 10, 12])
def test_criterion_6_flip_suite(N, classified, verified12):
    from bethe_rc.classify import verify_flip_consistency

    checked = 0
    for ell in range(1, N // 2 + 1):
        rep = classified(N, ell)
        assert verify_flip_consistency(rep) == [], (N, ell)
        sols = [c.labeled.solution for c in rep.classifications]
        index = {_roots_key(s.roots): s for s in sols}
        for s in sols:
            partner = index[_roots_key(s.roots, negate=True)]
            if s.kind == "regular":
                assert bethe_numbers_flip_check(s, partner), (N, ell)
            else:
                # singular solutions here are self-negative; their free
                # roots carry antisymmetric numbers
                assert partner is s
                _pair, rest = singular_string_J(s)
                vals = sorted(r.value for r in rest)
                assert vals == sorted(-r.value for r in rest)
            checked += 1
    print(f"CRITERION 6 PASS: quantum-number negation and rigging flip "
          f"exact on the half-integer level for all {checked} solutions "
          f"at N={N}")


def test_criterion_7_defects_and_parity(verified12, solved):
    worst = 0.0
    n_records = 0
    for ell in range(1, 7):
        par = (ell - 1 - 12) % 2
        for s in solved(12, ell).solutions:
            if s.kind == "regular":
                recs = bethe_numbers_regular(s)
            else:
                pair_rec = singular_pair_record(s)
                assert pair_rec.defect < 1e-6
                assert pair_rec.value.doubled % 2 == 0  # sum of two equals
                _p, recs = singular_string_J(s)
            for rec in recs:
                worst = max(worst, rec.defect)
                assert rec.defect < 1e-6
                assert rec.value.doubled % 2 == par, (ell, s.kind)
                n_records += 1
    assert worst < 1e-6
    print(f"CRITERION 7 PASS: all {n_records} root numbers across 923 "
          f"solutions round with defect < 1e-6 (worst {worst:.2e}); "
          f"parity 2J = ell-1-N (mod 2) with zero exceptions")


def test_criterion_8_singular_theta_independence(solved):
    sing = [s for s in solved(12, 2).solutions if s.kind == "singular"]
    assert len(sing) == 1 and sing[0].roots == (0.5j, -0.5j)
    values = set()
    for r in (1e-4, 1e-5, 1e-6):
        for theta in (-1.2, 0.0, 1.2):
            rec = singular_pair_record(sing[0], r=r, theta=theta)
            assert rec.defect < 1e-6
            values.add(rec.value)
    assert values == {HalfInt(12)}  # J_1 + J_2 = 6 at every grid point
    print("CRITERION 8 PASS: singular pair sum = 6 for all theta in "
          "{-1.2,0,1.2} x r in {1e-4,1e-5,1e-6}, defect < 1e-6")


def test_criterion_9_spectrum_oracle(verified12, solved):
    manifest, _out = verified12
    assert manifest.stage("spectrum").status == "ok"
    energies = {ell: [energy(s) for s in solved(12, ell).solutions]
                for ell in range(1, 7)}
    report = match_bethe_energies(energies, 12, tol=1e-8)
    assert report.multiplet_total == 4096
    assert report.ok, report.witnesses[:5]
    worst = max(s.max_deviation for s in report.sectors)
    print(f"CRITERION 9 PASS: every Bethe energy matches exact "
          f"diagonalization in every descendant sector (worst deviation "
          f"{worst:.2e} < 1e-8); multiplet completeness 4096 = 2^12")
