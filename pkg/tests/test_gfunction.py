import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ioacheck.gfunction import SHIFT, SWAP, GFunction, GFunctionError, common_coordinates
from ioacheck.paths import principal_logs

exps = st.fractions(min_value=-2, max_value=2, max_denominator=12)
coeffs = st.integers(-4, 4).filter(bool)


@st.composite
def gfunctions(draw):
    terms = draw(st.lists(st.tuples(exps, exps, exps, coeffs), min_size=1, max_size=4))
    return GFunction.from_terms(terms)


POINT = (3 + 2j, 1 + 0.5j)


def direct_value(terms, point):
    z1, z2 = point
    logs = principal_logs(point)
    return sum(c * cmath.exp(float(a) * logs[0] + float(b) * logs[1] + float(g) * logs[2]) for a, b, g, c in terms)


def test_integer_shifts_are_absorbed():
    lhs = GFunction.term((Fraction(1, 2), 0, 1))
    rhs = GFunction.term((Fraction(3, 2), 0, 0)) - GFunction.term((Fraction(1, 2), 1, 0))
    assert lhs == rhs


def test_difference_cancels():
    g = GFunction.term((0, 0, -1), 1, {(1, 0): 1, (0, 1): -1})
    assert g == GFunction.term((0, 0, 0))


@given(st.lists(st.tuples(exps, exps, exps, coeffs), min_size=1, max_size=4))
def test_evaluate_matches_monomial_sum(terms):
    g = GFunction.from_terms(terms)
    expected = direct_value(terms, POINT)
    assert abs(g.evaluate(principal_logs(POINT), POINT) - expected) < 1e-8 * max(1, abs(expected))


@given(gfunctions(), gfunctions())
def test_addition_is_pointwise(f, g):
    logs = principal_logs(POINT)
    assert abs((f + g).evaluate(logs, POINT) - f.evaluate(logs, POINT) - g.evaluate(logs, POINT)) < 1e-7


@given(gfunctions())
def test_swap_twice_is_identity(g):
    # log(z2 - z1) = log(z1 - z2) + i pi, then back with -i pi
    once = g.substitute(SWAP, (0, 0, Fraction(1, 2)))
    assert once.substitute(SWAP, (0, 0, Fraction(-1, 2))) == g


@given(gfunctions())
def test_json_round_trip(g):
    assert GFunction.from_json(g.to_json()) == g


@given(gfunctions())
def test_shift_branch_by_zero_and_back(g):
    assert g.shift_branch(0, 0, 0) == g
    assert g.shift_branch(1, -2, 1).shift_branch(-1, 2, -1) == g


def test_shift_branch_rejects_half_turns():
    with pytest.raises(GFunctionError):
        GFunction.term((Fraction(1, 2), 0, 0)).shift_branch(Fraction(1, 2), 0, 0)


def test_substitute_rejects_incompatible_offsets():
    with pytest.raises(GFunctionError):
        GFunction.term((Fraction(1, 3), 0, 0)).substitute(SWAP, (0, 0, 0))


def test_shift_substitution_numerically():
    g = GFunction.from_terms([(Fraction(1, 3), Fraction(1, 4), Fraction(-1, 2), 2)])
    z = (0.5 + 3j, -1 - 2j)
    u = (z[0] - z[1], -z[1])
    # u1 = z1 - z2, u2 = -z2, u1 - u2 = z1; pick logs of u at principal values and match offsets
    ulogs = principal_logs(u)
    zlogs = principal_logs(z)
    offsets = tuple(Fraction(round(((a - b) / (2j * cmath.pi)).real * 2), 2) for a, b in zip(ulogs, (zlogs[2], zlogs[1], zlogs[0])))
    h = g.substitute(SHIFT, offsets)
    assert abs(h.evaluate(zlogs, z) - g.evaluate(ulogs, u)) < 1e-9


def test_common_coordinates_align_shifts():
    f = GFunction.term((Fraction(1, 2), 1, 0))
    g = GFunction.term((Fraction(1, 2), 0, 0))
    cf, cg = common_coordinates([f, g])
    assert set(cf) | set(cg)
    assert all(rep == (Fraction(1, 2), 0, 0) for rep, _ in cf)
