"""Quantum-number extraction: rounding, parity, flip, singular pairs."""

import pytest

from bethe_rc.halfint import HalfInt
from bethe_rc.quantum_numbers import (
    bethe_numbers_flip_check,
    bethe_numbers_regular,
    raw_bethe_values,
    singular_string_J,
)


def _neg_key(sol):
    return tuple(sorted((round(-z.real, 6), round(-z.imag, 6))
                        for z in sol.roots))


def _key(sol):
    return tuple(sorted((round(z.real, 6), round(z.imag, 6))
                        for z in sol.roots))


def test_defects_tiny_for_small_chain(solved):
    for ell in (1, 2, 3, 4):
        for s in solved(8, ell).solutions:
            if s.kind != "regular":
                continue
            for rec in bethe_numbers_regular(s):
                assert rec.defect < 1e-8


def test_parity_rule(solved):
    # 2 J_k has the parity of ell - 1 - N for every root
    for N, ell in ((8, 2), (8, 3), (8, 4), (6, 3)):
        for s in solved(N, ell).solutions:
            if s.kind == "regular":
                recs = bethe_numbers_regular(s)
            else:
                _pair, recs = singular_string_J(s)
            for rec in recs:
                assert (rec.value.doubled - (ell - 1 - N)) % 2 == 0


def test_raw_values_have_small_imaginary_part(solved):
    for s in solved(8, 3).solutions:
        if s.kind != "regular":
            continue
        for raw in raw_bethe_values(s.roots, s.N):
            assert abs(raw.imag) < 1e-8


def test_flip_negates_numbers(solved):
    sols = [s for s in solved(8, 3).solutions if s.kind == "regular"]
    index = {_key(s): s for s in sols}
    for s in sols:
        partner = index[_neg_key(s)]
        assert bethe_numbers_flip_check(s, partner)


def test_one_root_numbers_are_distinct(solved):
    # ell=1: the N-1 solutions carry pairwise distinct quantum numbers
    vals = set()
    for s in solved(12, 1).solutions:
        (rec,) = bethe_numbers_regular(s)
        vals.add(rec.value)
    assert len(vals) == 11


def test_singular_pair_theta_and_r_independence(solved):
    sing = [s for s in solved(8, 2).solutions if s.kind == "singular"]
    assert len(sing) == 1
    seen = set()
    for r in (1e-4, 1e-5, 1e-6):
        for theta in (-1.2, 0.0, 1.2):
            pair, _rest = singular_string_J(sing[0], r=r, theta=theta)
            seen.add(pair)
    assert len(seen) == 1


def test_singular_rest_numbers_antisymmetric(solved):
    for N, ell in ((8, 4), (6, 3)):
        for s in solved(N, ell).solutions:
            if s.kind != "singular":
                continue
            assert _key(s) == _neg_key(s)  # self-negative
            _pair, rest = singular_string_J(s)
            vals = sorted(r.value for r in rest)
            assert vals == sorted(-r.value for r in rest)


def test_singular_theta_domain_checked(solved):
    sing = [s for s in solved(8, 2).solutions if s.kind == "singular"]
    with pytest.raises(ValueError):
        singular_string_J(sing[0], theta=2.0)


def test_singular_rejects_regular_input(solved):
    reg = [s for s in solved(8, 2).solutions if s.kind == "regular"]
    with pytest.raises(ValueError):
        singular_string_J(reg[0])


def test_regular_numbers_reject_wrong_kind(solved):
    sing = [s for s in solved(8, 2).solutions if s.kind == "singular"]
    with pytest.raises(ValueError):
        bethe_numbers_regular(sing[0])
