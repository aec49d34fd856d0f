import cmath
import csv
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ioacheck import _kernels_py, kernels
from ioacheck.paths import (
    DEFAULT_PARAMS,
    PathError,
    PathParams,
    Region,
    anchor_point,
    build_gamma,
    build_sigma,
    certify_path,
    continue_along,
    log_offsets,
    numeric_point,
    principal_log,
    principal_logs,
    region_contains,
    straight_path,
    track_logs,
)

F = Fraction

# open intervals and the region each tube must sit in, read off the construction of the two loops
GAMMA_INTERVALS = [
    ((F(0), F(2, 7)), "|z1|>|z2|>0"),
    ((F(2, 7), F(3, 7)), "Re z1>0>Re z2, Im z1>0>Im z2"),
    ((F(3, 7), F(4, 7)), "|z2|>|z1|>0, Re z2<0, Im z2<0"),
    ((F(4, 7), F(1)), "|z2|>|z1-z2|>0"),
]
SIGMA_INTERVALS = [
    ((F(0), F(2, 7)), "|z1|>|z1-z2|>0"),
    ((F(2, 7), F(4, 7)), "|z1|>|z2|>0"),
    ((F(4, 7), F(5, 7)), "Re z1>0>Re z2, Im z1>0>Im z2"),
    ((F(5, 7), F(1)), "|z2|>|z1|>0"),
]


def ray(w):
    return abs(w.imag) if w.real >= 0 else abs(w)


def brute_clearance(path, n=7000, sign=1):
    best = math.inf
    for k in range(n + 1):
        z1, z2 = path.at(k / n)
        best = min(best, ray(z1), ray(z2), 0.5 * ray(sign * (z1 - z2)))
    return best


def test_principal_log_branch():
    assert principal_log(-1).imag == pytest.approx(math.pi)
    assert 0 <= principal_log(1 - 1e-9j).imag < 2 * math.pi
    with pytest.raises(PathError):
        principal_log(0)


def test_log_offsets_half_integers():
    p = (2 + 1j, 1 + 0j)
    logs = list(principal_logs(p))
    logs[2] += 2j * math.pi
    assert log_offsets(logs, p) == (0, 0, 1)


def test_default_params_and_parsing():
    assert DEFAULT_PARAMS.as_tuple() == tuple(map(F, (7, 4, 7, 2, 2, 7, 4, 7)))
    assert PathParams.parse("7,4,7,2,2,7,4,7") == DEFAULT_PARAMS
    with pytest.raises(PathError):
        PathParams.parse("1,2,3").validate()
    with pytest.raises(PathError):
        PathParams.parse("4,7,7,2,2,7,4,7").validate()
    with pytest.raises(PathError):
        PathParams(7.0)


def test_anchor_in_S1():
    assert region_contains(Region.S1, numeric_point(anchor_point()))
    assert numeric_point(build_gamma().exact_at(F(0))) == pytest.approx(numeric_point(anchor_point()))


@pytest.mark.parametrize("build,intervals", [(build_gamma, GAMMA_INTERVALS), (build_sigma, SIGMA_INTERVALS)])
def test_containment_lists(build, intervals):
    path = build()
    opens = [((c.lo, c.hi), c.name) for c in path.conditions if not c.closed]
    assert opens == intervals


@pytest.mark.parametrize("build,sign", [(build_gamma, 1), (build_sigma, -1)])
def test_certified_with_positive_clearance(build, sign):
    path = build()
    cert = certify_path(path)
    assert cert.passed, cert.detail
    assert all(c["status"] == "pass" for c in cert.conditions)
    assert cert.clearance > 0
    assert cert.clearance == pytest.approx(brute_clearance(path, sign=sign), rel=1e-3)


def test_frozen_clearances():
    # derived from brute-force sampling of the default loops
    assert certify_path(build_gamma()).clearance == pytest.approx(3 * math.sqrt(2) / 4, rel=1e-6)
    assert certify_path(build_sigma()).clearance == pytest.approx(math.sqrt(2) / 2, rel=1e-6)


@pytest.mark.parametrize("build,base", [(build_gamma, Region.S1), (build_sigma, Region.S2)])
def test_loops_close_with_zero_winding(build, base):
    path = build()
    assert region_contains(base, numeric_point(path.exact_at(F(0))))
    assert path.at(1.0) == pytest.approx(path.at(0.0))
    cont = continue_along(path, certified=certify_path(path))
    assert cont.winding.as_tuple() == (0, 0, 0)


def test_wrong_ambient_fails_certification():
    cert = certify_path(build_gamma(), Region.GDoublePrime)
    assert not cert.passed


def test_track_logs_around_origin():
    loop = lambda s: (cmath.exp(2j * math.pi * s) * 2, 0.5 + 0j)  # noqa: E731
    logs, deltas = track_logs(loop, principal_logs(loop(0)))
    assert deltas[0] == pytest.approx(2 * math.pi)
    assert deltas[1] == pytest.approx(0)
    assert logs[0] - principal_logs(loop(0))[0] == pytest.approx(2j * math.pi)


def test_straight_path_endpoints():
    fn = straight_path((1 + 1j, 2j), (3, 1))
    assert fn(0) == (1 + 1j, 2j)
    assert fn(1) == (3, 1)


def test_csv_dump(tmp_path):
    out = tmp_path / "gamma.csv"
    build_gamma().write_csv(out, samples=50)
    rows = list(csv.reader(out.open()))
    assert len(rows) > 50


points = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@given(st.lists(points.filter(lambda w: abs(w) > 1e-3), min_size=2, max_size=40))
def test_kernel_backends_agree_on_arg_walk(ws):
    assert kernels.arg_walk(ws) == pytest.approx(_kernels_py.arg_walk(ws), abs=1e-12)


@given(st.lists(st.tuples(points, points), min_size=1, max_size=40), st.sampled_from([1, -1]))
def test_kernel_backends_agree_on_clearance(pairs, sign):
    z1s, z2s = [p[0] for p in pairs], [p[1] for p in pairs]
    assert kernels.min_clearance(z1s, z2s, sign) == pytest.approx(_kernels_py.min_clearance(z1s, z2s, sign), abs=1e-12)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, IOACHECK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from ioacheck import kernels; print(kernels.BACKEND)"], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
