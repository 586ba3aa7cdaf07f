"""Branch-aware complex arctangent used for quantum-number extraction.

The function agrees with the principal arctangent away from the cuts
(i, i*inf) and (-i, -i*inf), is odd everywhere including on the cuts, and
rejects the branch points +-i.
"""

import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bethe_rc.quantum_numbers import arctan_branch

finite = st.floats(min_value=-50.0, max_value=50.0,
                   allow_nan=False, allow_infinity=False)


def test_closed_form_at_2i():
    # independent closed form: for z = 2i on the upper cut,
    # value = pi/2 + (i/2) ln 3 (principal limit from Re z -> 0+)
    got = arctan_branch(2j)
    want = math.pi / 2 + 0.5j * math.log(3.0)
    assert abs(got - want) < 1e-14


def test_matches_principal_off_axis():
    for z in (0.3 + 0.2j, -1.5 + 0.9j, 2.0 - 3.0j, 0.01 + 0.99j):
        # cmath.atan is principal with cuts on the same rays
        assert abs(arctan_branch(z) - cmath.atan(z)) < 1e-13


def test_real_axis_reduces_to_atan():
    for x in (-5.0, -0.7, 0.0, 0.2, 3.0):
        got = arctan_branch(complex(x, 0.0))
        assert abs(got.imag) < 1e-15
        assert abs(got.real - math.atan(x)) < 1e-14


@given(finite, finite)
def test_oddness(x, y):
    z = complex(x, y)
    if min(abs(z - 1j), abs(z + 1j)) < 1e-6:
        return  # branch points excluded
    a = arctan_branch(z)
    b = arctan_branch(-z)
    assert abs(a + b) < 1e-13 * max(1.0, abs(a))


def test_oddness_on_the_cuts():
    for y in (1.5, 2.0, 10.0):
        up = arctan_branch(complex(0.0, y))
        dn = arctan_branch(complex(0.0, -y))
        assert up == -dn
        assert up.real == pytest.approx(math.pi / 2, abs=1e-15)


def test_axis_snap_kills_stray_real_noise():
    # tiny real parts from refinement noise must not flip the cut side
    a = arctan_branch(complex(1e-300, 1.5))
    b = arctan_branch(complex(-1e-300, 1.5))
    assert a == b


def test_branch_points_rejected():
    for z in (1j, -1j):
        with pytest.raises(ValueError):
            arctan_branch(z)


def test_near_branch_point_on_axis_rejected_only_within_tol():
    # a narrow 2-string difference sits near +-i but beyond the rejection
    # tolerance; it must evaluate, not raise
    val = arctan_branch(complex(0.0, 1.0000000001))
    assert math.isfinite(val.real) and math.isfinite(val.imag)
