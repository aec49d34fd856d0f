import dataclasses
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ioacheck.gfunction import GFunction
from ioacheck.model import (
    ModelError,
    OperatorLabel,
    abelian_model,
    default_kappa,
    load_model,
    model_from_json,
    save_model,
    synthetic_model,
    validate_spec,
)
from ioacheck.scalars import is_zero

F = Fraction


def lattice_correlator(n, a1, a2, a3):
    """z1^<a1,a3> z2^<a2,a3> (z1-z2)^<a1,a2> with the sign that keeps orderings consistent."""
    k = default_kappa(n)
    sign = -1 if (k * n * a1 * (a2 + a3 >= n)) % 2 else 1
    return GFunction.term((k * a1 * a3, k * a2 * a3, k * a1 * a2), sign)


def test_kappa_and_weights():
    assert default_kappa(4) == F(1, 4)
    assert default_kappa(3) == F(2, 3)
    m = abelian_model(4)
    assert m.weights == {0: 0, 1: F(1, 8), 2: F(1, 2), 3: F(9, 8)}


def test_two_color_example():
    m = abelian_model(2)
    label = m.classes("P", (1, 1, 0, 0))[0]
    assert m.product_correlator(label) == GFunction.term((0, 0, F(1, 2)))
    assert m.iterate_correlator(m.classes("I", (1, 1, 0, 0))[0]) == GFunction.term((0, 0, F(1, 2)))


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_abelian_correlators_match_lattice_form(n):
    m = abelian_model(n)
    for a1, a2, a3, a4 in m.quadruples():
        label = m.classes("P", (a1, a2, a3, a4))[0]
        assert m.product_correlator(label) == lattice_correlator(n, a1, a2, a3)


def test_identity_insert_gives_single_class():
    m = abelian_model(4)
    for a in range(4):
        for b in range(4):
            g = m.product_correlator(m.classes("P", (0, a, b, (a + b) % 4))[0])
            assert len(g.class_reps()) == 1
            (rep,) = g.class_reps()
            assert rep[0] == 0 and rep[2] == 0


def test_zero_class_gives_zero():
    m = abelian_model(4)
    label = m.classes("P", (1, 2, 3, 2))[0].with_scalar(0)
    assert m.product_correlator(label).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4, 8])
def test_omega_involution(n):
    m = abelian_model(n)
    for a, b, c in m.operators:
        for r in (-2, -1, 0, 1):
            op = OperatorLabel(a, b, c, 1)
            back = m.omega_apply(-r - 1, m.omega_apply(r, op))
            assert back.key == op.key and is_zero(back.scalar - 1)


def test_omega_on_integer_exponent():
    m = abelian_model(4)
    assert m.omega_scalar(-1, 2, 2, 0) == -1  # q(2,2) = 1
    assert m.omega_apply(0, OperatorLabel(1, 2, 3, 0)).scalar == 0


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_abelian_models_validate(n):
    assert validate_spec(abelian_model(n)).passed


def test_identity_axiom_violation():
    m = abelian_model(4)
    ops = dict(m.operators)
    ops[(0, 1, 2)] = (F(0), 1)
    bad = validate_spec(dataclasses.replace(m, operators=ops))
    assert not bad.passed
    assert any(v.rule == "identity-axiom" for v in bad.violations)


def test_class_collision_violation():
    m = abelian_model(4)
    quad = (1, 2, 3, 2)
    only = m.p_templates[quad]
    (a5, g), = only.items()
    templates = dict(m.p_templates)
    templates[quad] = {a5: g, 3: g}
    bad = validate_spec(dataclasses.replace(m, p_templates=templates))
    assert any(v.rule == "class-collision" and "(1,2,3,2)" in v.where for v in bad.violations)


def test_weight_condition_violation():
    assert not validate_spec(abelian_model(4, weights={1: "1/3"})).passed


@given(st.integers(0, 500))
def test_synthetic_models_validate(seed):
    m = synthetic_model(random.Random(seed))
    assert validate_spec(m).passed
    for quad in m.quadruples():
        for label in m.classes("P", quad):
            for rep in m.product_correlator(label).class_reps():
                assert all(F(x).denominator in (1, 2, 3, 4, 6, 12) for x in rep)


def test_json_round_trip(tmp_path):
    for m in (abelian_model(4, product_factors={(1, 2, 3, 2): 2}), synthetic_model(random.Random(7))):
        path = tmp_path / "m.json"
        save_model(m, path)
        back = load_model(path)
        assert back.to_json() == m.to_json()
        for quad in m.quadruples():
            for label in m.classes("P", quad):
                assert back.product_correlator(label) == m.product_correlator(label)


def test_config_errors(tmp_path):
    with pytest.raises(ModelError):
        load_model(tmp_path / "missing.json")
    with pytest.raises(ModelError):
        model_from_json({"colors": 4, "bogus": 1})
    with pytest.raises(ModelError):
        model_from_json({"colors": 4, "constants": {"(1,2,9)": "1"}})
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(ModelError):
        load_model(tmp_path / "bad.json")


def test_product_factor_scales_correlator():
    base = abelian_model(4)
    bumped = abelian_model(4, product_factors={(1, 2, 3, 2): 2})
    label = base.classes("P", (1, 2, 3, 2))[0]
    assert bumped.product_correlator(label) == base.product_correlator(label).scale(2)
    other = base.classes("P", (1, 1, 1, 3))[0]
    assert bumped.product_correlator(other) == base.product_correlator(other)
    assert json.loads(json.dumps(bumped.to_json()))["constants"]
