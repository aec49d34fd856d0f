import random

import pytest

from ioacheck.branch_checks import path_relation_checks, preferred_branch_checks, sample_points
from ioacheck.model import abelian_model, synthetic_model
from ioacheck.moore_seiberg import MatrixSet, build_all
from ioacheck.paths import Region, region_margin


@pytest.mark.parametrize("region", list(Region)[:7])
def test_samples_lie_inside(region):
    pts = sample_points(region, 10, seed=3)
    assert len(pts) == 10
    assert all(region_margin(region, p) > 0.1 for p in pts)
    assert pts == sample_points(region, 10, seed=3)


@pytest.mark.parametrize("mode", ["exact", "float"])
@pytest.mark.parametrize("model", [abelian_model(3), synthetic_model(random.Random(5))], ids=["abelian3", "synthetic5"])
def test_all_branch_relations_hold(model, mode):
    ms = build_all(model)
    reports = preferred_branch_checks(model, mode, 1e-9, 10, 0, ms) + path_relation_checks(model, mode, 1e-9, 10, 0, ms)
    assert all(r.passed for r in reports), next(r for r in reports if not r.passed)
    prefixes = {r.name.split()[0] for r in reports}
    assert prefixes == {"preferred", "overlap-S1", "overlap-S2", "gamma-shift", "sigma-shift"}


def test_wrong_braiding_is_caught():
    m = abelian_model(4)
    ms = build_all(m)
    broken = MatrixSet(ms.F, ms.B.inverse("B^-1"), ms.omega)
    reports = preferred_branch_checks(m, "exact", 1e-9, 4, 0, broken)
    failing = {r.name.split()[0] + " " + r.name.split()[1] for r in reports if not r.passed}
    assert "preferred R2" in failing
    assert not any(name.startswith("preferred R1") or name.startswith("preferred R3") for name in failing)
