import random
from fractions import Fraction

import pytest

from ioacheck.branch_checks import sample_points
from ioacheck.branched import (
    chain_logs,
    germ_from_logs,
    iota_g,
    mirror_point,
    substitute_shift,
    sum_series_at,
    swap_variables,
)
from ioacheck.gfunction import GFunction
from ioacheck.model import synthetic_model
from ioacheck.paths import Region, anchor_logs, anchor_point, numeric_point, principal_logs, region_contains


@pytest.fixture(scope="module")
def model():
    return synthetic_model(random.Random(2))


def test_chain_starts_at_anchor():
    p = numeric_point(anchor_point())
    assert chain_logs(Region.R1, p) == pytest.approx(anchor_logs())
    assert region_contains(Region.S2, numeric_point(mirror_point()))


@pytest.mark.parametrize("which,region,kind", [("12", Region.R1, "P"), ("21", Region.R2, "P"), ("20", Region.R3, "I")])
def test_expansion_sums_to_preferred_branch(model, which, region, kind):
    quad = model.quadruples()[0]
    label = model.classes(kind, quad)[0]
    g = model.correlator(label)
    series = iota_g(which, g, 40)
    for p in sample_points(region, 3, seed=5, min_margin=0.3):
        expected = g.evaluate(chain_logs(region, p), p)
        assert sum_series_at(series, p, which) == pytest.approx(expected, rel=1e-6)


def test_germs_compare_branches():
    g = GFunction.term((Fraction(1, 3), Fraction(1, 4), Fraction(-1, 2)))
    p = sample_points(Region.R1, 1, seed=1)[0]
    logs = chain_logs(Region.R1, p)
    assert germ_from_logs(g, logs, p).function == germ_from_logs(g, logs, p).function
    turned = (logs[0] + 2j * 3.141592653589793, logs[1], logs[2])
    assert germ_from_logs(g, turned, p).function != germ_from_logs(g, logs, p).function


def test_swap_variables_takes_R2_branch(model):
    g = model.product_correlator(model.classes("P", model.quadruples()[0])[0])
    h = swap_variables(g)
    for p in sample_points(Region.R1, 3, seed=2):
        image = (p[1], p[0])
        assert h.evaluate(chain_logs(Region.R1, p), p) == pytest.approx(g.evaluate(chain_logs(Region.R2, image), image))


def test_substitute_shift_numerically(model):
    g = model.product_correlator(model.classes("P", model.quadruples()[0])[0])
    h = substitute_shift(g)
    for p in sample_points(Region.S1, 2, seed=3):
        image = (p[0] - p[1], -p[1])
        # both sides single valued near p once the branch is fixed; compare moduli
        assert abs(h.evaluate(principal_logs(p), p)) == pytest.approx(abs(g.evaluate(principal_logs(image), image)), rel=1e-9)
