import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ioacheck.scalars import (
    Approx,
    Cyclotomic,
    ModeMixError,
    inverse,
    is_zero,
    root_of_unity,
    scalar_from_json,
    scalar_to_json,
    simplify,
)

orders = st.sampled_from([1, 2, 3, 4, 6, 8, 12, 24])
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclotomics(draw):
    n = draw(orders)
    return Cyclotomic(n, draw(st.lists(fracs, min_size=1, max_size=n)))


def test_fourth_root_is_i():
    i = root_of_unity(Fraction(1, 4))
    assert i * i == -1
    assert cmath.isclose(i.to_complex(), 1j)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 12, 24])
def test_primitive_roots_have_exact_order(n):
    z = Cyclotomic.zeta(n)
    assert z**n == 1
    assert all(z**k != 1 for k in range(1, n))


def test_sum_of_all_roots_vanishes():
    total = sum((root_of_unity(Fraction(k, 12)) for k in range(12)), Cyclotomic.rational(0))
    assert total.is_zero()


def test_sqrt2_from_eighth_roots():
    z = root_of_unity(Fraction(1, 8))
    s = z + z.conjugate()
    assert s * s == 2
    assert not s.is_rational()


def test_mixed_orders_embed():
    a = root_of_unity(Fraction(1, 3)) * root_of_unity(Fraction(1, 4))
    assert a == root_of_unity(Fraction(7, 12))


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(cyclotomics())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@given(cyclotomics())
def test_complex_embedding_is_a_homomorphism(a):
    b = root_of_unity(Fraction(5, 24)) + 2
    assert cmath.isclose((a * b).to_complex(), a.to_complex() * b.to_complex(), abs_tol=1e-9)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=24))
def test_root_of_unity_matches_exp(q):
    assert cmath.isclose(root_of_unity(q).to_complex(), cmath.exp(2j * math.pi * float(q)), abs_tol=1e-12)


@given(cyclotomics())
def test_json_round_trip(a):
    assert scalar_from_json(scalar_to_json(a)) == a


def test_phase_shorthand():
    assert scalar_from_json({"phase": "1/4", "scale": "2"}) == root_of_unity(Fraction(1, 4)) * 2


def test_simplify_collapses_rationals():
    assert simplify(root_of_unity(Fraction(1, 2))) == Fraction(-1)
    assert isinstance(simplify(root_of_unity(Fraction(1, 3))), Cyclotomic)


def test_approx_tolerance_and_mixing():
    a = Approx(1 + 1e-12)
    assert is_zero(a - 1)
    assert inverse(Approx(2j)) == Approx(-0.5j)
    with pytest.raises(ModeMixError):
        Approx(1) + root_of_unity(Fraction(1, 3))
