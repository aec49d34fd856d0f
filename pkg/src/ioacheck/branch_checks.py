"""Preferred-branch identifications and the path relations used by the (23) move.

Every check compares a closed form written in some chart with the branch of
the product correlator obtained by continuation.  In exact mode both sides
are rewritten against principal logs at the sample point and compared as
GFunctions; in float mode their values are compared.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .branched import chain_logs, chart_logs, germ_from_logs, reanchor
from .gfunction import SHIFT, SWAP, GFunction
from .model import IOASpec, OperatorClassLabel
from .moore_seiberg import MatrixSet, build_all
from .paths import (
    DEFAULT_PARAMS,
    FORMS,
    PathParams,
    Region,
    build_gamma,
    build_sigma,
    numeric_point,
    principal_logs,
    region_margin,
    straight_path,
    track_logs,
)
from .scalars import DEFAULT_TOLERANCE
from .series import CheckReport

MODES = ("exact", "float")


# ---------------------------------------------------------------- sample points


def sample_points(region: Region | str, n: int, seed: int = 0, min_margin: float = 0.1) -> list[tuple[complex, complex]]:
    """n seeded points inside ``region`` with the given margin."""
    region = Region(region) if isinstance(region, str) else region
    rng = random.Random(f"{region.value}:{seed}")
    out = []
    while len(out) < n:
        if region in (Region.S1, Region.S2):
            x, y = rng.uniform(1, 8), rng.uniform(1, 8)
            u, v = rng.uniform(0.15, 0.85) * x, rng.uniform(0.15, 0.85) * y
            big, small = complex(x + u, y + v), complex(x, y)
            p = (big, small) if region is Region.S1 else (small, big)
        else:
            p = tuple(cmath.rect(rng.uniform(0.5, 8), rng.uniform(0.05, 2 * math.pi - 0.05)) for _ in range(2))
        if region_margin(region, p) > min_margin:
            out.append(p)
    return out


# ---------------------------------------------------------------- comparisons


@dataclass(frozen=True)
class Form:
    """A function with the logs it is evaluated with at a point.

    ``swap`` means the function's own variables are (z2, z1).
    """

    function: GFunction
    chart: str
    swap: bool = False

    def germ(self, point) -> GFunction:
        p = numeric_point(point)
        if not self.swap:
            return germ_from_logs(self.function, chart_logs(self.chart, p), p).function
        image = (p[1], p[0])
        return reanchor(self.function, SWAP, chart_logs(self.chart, image), principal_logs(p), p)

    def value(self, point) -> complex:
        p = numeric_point(point)
        if not self.swap:
            return self.function.evaluate(chart_logs(self.chart, p), p)
        image = (p[1], p[0])
        return self.function.evaluate(chart_logs(self.chart, image), image)


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


def _compare(name: str, left_germ, left_value, form: Form, point, mode: str, tol: float) -> CheckReport:
    """left_* give the continued branch; form gives the claimed closed form."""
    p = numeric_point(point)
    if mode == "exact":
        a, b = left_germ(), form.germ(p)
        ok = a == b
        cex = None if ok else {"point": [repr(p[0]), repr(p[1])], "class": repr(a.differs_from(b))}
        return CheckReport(name, ok, 1, cex, "" if ok else "germs differ")
    a, b = left_value(), form.value(p)
    ok = _close(a, b, tol)
    cex = None if ok else {"point": [repr(p[0]), repr(p[1])], "left": repr(a), "right": repr(b)}
    return CheckReport(name, ok, 1, cex, "" if ok else f"|difference| = {abs(a - b):.3e}")


def _label_tag(label: OperatorClassLabel) -> str:
    return "P(" + ",".join(map(str, label.quad)) + f";{label.a5})"


def _single(model: IOASpec, vec: dict, kind: str) -> GFunction:
    total = GFunction.zero()
    for (k, quad, a5), c in vec.items():
        lab = OperatorClassLabel(k, quad, a5, c)
        total = total + (model.product_correlator(lab) if kind == "P" else model.iterate_correlator(lab))
    return total


def region_forms(model: IOASpec, label: OperatorClassLabel, ms: MatrixSet) -> dict:
    """The closed form claimed to be the preferred branch on each of R1..R4."""
    z = {label.key: label.scalar}
    fz = ms.F.apply(z)
    return {
        Region.R1: Form(_single(model, z, "P"), "12"),
        Region.R2: Form(_single(model, ms.B.apply(z), "P"), "12", swap=True),
        Region.R3: Form(_single(model, fz, "I"), "20"),
        Region.R4: Form(_single(model, ms.omega[(1, False)].apply(fz), "I"), "20", swap=True),
    }


def preferred_branch_checks(
    model: IOASpec,
    mode: str = "exact",
    tol: float = DEFAULT_TOLERANCE,
    n_points: int = 10,
    seed: int = 0,
    matrices: MatrixSet | None = None,
    params: PathParams = DEFAULT_PARAMS,
) -> list[CheckReport]:
    """Each region's closed form against the chain-continued branch, plus the S1/S2 overlaps."""
    ms = matrices or build_all(model)
    pts = {r: sample_points(r, n_points, seed) for r in (Region.R1, Region.R2, Region.R3, Region.R4, Region.S1, Region.S2)}
    out = []
    for quad in model.quadruples():
        for label in model.classes("P", quad):
            phi = model.product_correlator(label)
            forms = region_forms(model, label, ms)
            tag = _label_tag(label)
            for region, form in forms.items():
                reps = []
                for p in pts[region]:
                    logs = chain_logs(region, p, params)
                    reps.append(
                        _compare(
                            tag,
                            lambda: germ_from_logs(phi, logs, p).function,
                            lambda: phi.evaluate(logs, p),
                            form,
                            p,
                            mode,
                            tol,
                        )
                    )
                out.append(_merge(f"preferred {region.value} {tag}", reps))
            for name, region, left, right in (("overlap-S1", Region.S1, Region.R1, Region.R3), ("overlap-S2", Region.S2, Region.R2, Region.R4)):
                reps = []
                lf = forms[left]
                for p in pts[region]:
                    reps.append(_compare(tag, lambda: lf.germ(p), lambda: lf.value(p), forms[right], p, mode, tol))
                out.append(_merge(f"{name} {tag}", reps))
    return out


def _merge(name: str, reps: list[CheckReport]) -> CheckReport:
    bad = next((r for r in reps if not r.passed), None)
    if bad:
        return CheckReport(name, False, len(reps), bad.counterexample, bad.detail)
    return CheckReport(name, True, len(reps), None, f"{len(reps)} points")


# ---------------------------------------------------------------- path relations


@lru_cache(maxsize=8)
def _path_logs(which: str, params: PathParams, n_points: int, seed: int):
    """Logs continued from the path's base time to both ends and on to the sample points.

    They do not depend on the function, so one continuation serves all classes.
    """
    path, base_t, region = (
        (build_gamma(params), Fraction(2, 7), Region.S1) if which == "gamma" else (build_sigma(params), Fraction(5, 7), Region.S2)
    )
    base = numeric_point(path.exact_at(base_t))
    base_logs = principal_logs(base)
    back, _ = track_logs(path.at, base_logs, FORMS, float(base_t), 0.0)
    fwd, _ = track_logs(path.at, base_logs, FORMS, float(base_t), 1.0)
    end = numeric_point(path.exact_at(Fraction(0)))
    samples = sample_points(region, n_points, seed)
    at_samples = []
    for s in samples:
        b, _ = track_logs(straight_path(end, s), back)
        f, _ = track_logs(straight_path(end, s), fwd)
        at_samples.append((s, tuple(b), tuple(f)))
    return base, tuple(base_logs), end, tuple(back), tuple(fwd), tuple(at_samples)


def shifted_function(phi: GFunction, point) -> GFunction:
    """z -> phi(z1 - z2, -z2) against principal logs at ``point``, phi taken in chart 12 at the image."""
    p = numeric_point(point)
    image = (p[0] - p[1], -p[1])
    return reanchor(phi, SHIFT, chart_logs("12", image), principal_logs(p), p)


def _path_relation(
    name: str,
    which: str,
    model: IOASpec,
    label: OperatorClassLabel,
    forms: tuple[Form, Form],
    mode: str,
    tol: float,
    n_points: int,
    seed: int,
    params: PathParams,
) -> CheckReport:
    base, base_logs, end, back, fwd, samples = _path_logs(which, params, n_points, seed)
    psi = shifted_function(model.product_correlator(label), base)
    reps = []
    for logs, form in ((back, forms[0]), (fwd, forms[1])):
        reps.append(_compare(name, lambda: germ_from_logs(psi, logs, end).function, lambda: psi.evaluate(logs, end), form, end, mode, tol))
    for s, b, f in samples:
        for logs, form in ((b, forms[0]), (f, forms[1])):
            reps.append(_compare(name, lambda: germ_from_logs(psi, logs, s).function, lambda: psi.evaluate(logs, s), form, s, mode, tol))
    return _merge(f"{name} {_label_tag(label)}", reps)


def path_relation_checks(
    model: IOASpec,
    mode: str = "exact",
    tol: float = DEFAULT_TOLERANCE,
    n_points: int = 10,
    seed: int = 0,
    matrices: MatrixSet | None = None,
    params: PathParams = DEFAULT_PARAMS,
) -> list[CheckReport]:
    """The shifted product correlator continued around gamma and sigma.

    Along gamma the two ends must give the product correlator of
    Omega-tilde^(4) Z (chart 12) and the iterate correlator of
    F Omega-tilde^(4) Z (chart 20) on S1; along sigma they must give the
    R4 form of Omega-tilde^(1) F Omega-tilde^(4) Z and the R2 form of
    B Omega-tilde^(4) Z on S2.
    """
    ms = matrices or build_all(model)
    out = []
    for quad in model.quadruples():
        for label in model.classes("P", quad):
            w = ms.omega[(4, False)].apply({label.key: label.scalar})
            fw = ms.F.apply(w)
            gamma_forms = (Form(_single(model, w, "P"), "12"), Form(_single(model, fw, "I"), "20"))
            sigma_forms = (
                Form(_single(model, ms.omega[(1, False)].apply(fw), "I"), "20", swap=True),
                Form(_single(model, ms.B.apply(w), "P"), "12", swap=True),
            )
            out.append(_path_relation("gamma-shift", "gamma", model, label, gamma_forms, mode, tol, n_points, seed, params))
            out.append(_path_relation("sigma-shift", "sigma", model, label, sigma_forms, mode, tol, n_points, seed, params))
    return out


__all__ = ["Form", "MODES", "path_relation_checks", "preferred_branch_checks", "region_forms", "sample_points", "shifted_function"]
