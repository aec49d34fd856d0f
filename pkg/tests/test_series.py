import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ioacheck.scalars import to_complex
from ioacheck.series import (
    ITERATE_DELTA,
    PRODUCT_DELTA,
    REVERSED_DELTA,
    SHIFT_DELTA,
    RationalFn,
    Series,
    SeriesError,
    delta,
    ev_get,
    exponents,
    iota,
    random_rational_fn,
    verify_delta_identities,
    verify_delta_substitution,
    verify_prop_2_1,
)

ONE = {exponents(): Fraction(1)}


def binomial_expansion(m, n):
    """Coefficient of x1^(-m-n) x2^n in (x1 - x2)^(-m) expanded in x2/x1."""
    return comb(m + n - 1, n)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_iota12_matches_binomial_series(m):
    s = iota("12", RationalFn.prop_shape(ONE, r=m), 8)
    for n in range(6):
        assert s.coefficient(exponents(x1=-m - n, x2=n)) == binomial_expansion(m, n)


def test_iota21_expands_in_the_other_direction():
    s = iota("21", RationalFn.prop_shape(ONE, r=1), 8)
    # 1/(x1 - x2) = -1/x2 * 1/(1 - x1/x2)
    for n in range(6):
        assert s.coefficient(exponents(x1=n, x2=-1 - n)) == -1


def test_iota20_substitutes_x1():
    s = iota("20", RationalFn.prop_shape(ONE, s=1), 8)
    # 1/(x0 + x2) expanded in x0/x2
    for n in range(6):
        assert s.coefficient(exponents(x0=n, x2=-1 - n)) == (-1) ** n


def test_iota_numeric_sum_converges_to_value():
    f = random_rational_fn(random.Random(3))
    s = iota("12", f, 40)
    x1, x2 = 3.0, 1.0
    point = {"x0": x1 - x2, "x1": x1, "x2": x2}
    total = sum(to_complex(c) * x1 ** ev_get(ev, "x1") * x2 ** ev_get(ev, "x2") for ev, c in s)
    assert abs(total - f.evaluate(point)) < 1e-6 * max(1, abs(f.evaluate(point)))


def test_unknown_iota_rejected():
    with pytest.raises(SeriesError):
        iota("02", RationalFn.prop_shape(ONE), 4)


def test_delta_is_all_ones_in_window():
    d = delta("x", 5)
    assert all(d.coefficient(exponents(x=k)) == 1 for k in range(-5, 6))


@pytest.mark.parametrize("cutoff", [4, 8, 12])
def test_delta_identities(cutoff):
    reports = verify_delta_identities(cutoff)
    assert [r.name for r in reports] == ["delta-shift", "delta-three-term"]
    assert all(r.passed and r.compared > 0 for r in reports)


def test_delta_atoms_differ_from_each_other():
    assert not PRODUCT_DELTA.expand(6).compare(REVERSED_DELTA.expand(6)).equal
    assert SHIFT_DELTA.expand(6).compare(ITERATE_DELTA.expand(6)).equal


def test_delta_substitution():
    assert verify_delta_substitution({-2: 3, 0: -1, 1: Fraction(1, 2)}, "x", 8).passed


def test_prop_identities_on_fixed_function():
    f = RationalFn.prop_shape({exponents(x0=1, x1=2): Fraction(3), exponents(x2=1): Fraction(-1)}, 2, 1, 3)
    assert all(r.passed for r in verify_prop_2_1(f, 8))


def test_prop_identity_detects_wrong_expansion():
    f = RationalFn.prop_shape(ONE, r=2)
    i21 = iota("21", f, 8)
    wrong = iota("12", f, 8)
    assert not i21.compare(wrong).equal


@given(st.integers(0, 10_000))
def test_prop_identities_random(seed):
    f = random_rational_fn(random.Random(seed), max_degree=4, max_pole=3)
    assert all(r.passed for r in verify_prop_2_1(f, 6))


def test_series_arithmetic():
    x = Series.monomial(1, x1=1)
    y = Series.monomial(2, x2=-1)
    assert (x * y).coefficient(exponents(x1=1, x2=-1)) == 2
    assert (x - x).coefficient(exponents(x1=1)) == 0


def test_build_tracks_sign_of_reversed_factor():
    f = RationalFn.build(ONE, [({"x2": 1, "x1": -1}, 1)])
    g = RationalFn.build({exponents(): Fraction(-1)}, [({"x1": 1, "x2": -1}, 1)])
    pt = {"x0": 0.3, "x1": 2.0, "x2": 0.5}
    assert abs(f.evaluate(pt) - g.evaluate(pt)) < 1e-12


def test_opposite_directions_cannot_multiply():
    from ioacheck.series import DirectionError

    f = RationalFn.prop_shape(ONE, r=1)
    with pytest.raises(DirectionError):
        iota("12", f, 4) * iota("21", f, 4)
