"""Regions of C^2, piecewise paths, clearance certification and log continuation."""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from . import kernels
from .kernels import ray_distance
from .scalars import Cyclotomic, root_of_unity, to_complex

TWO_PI = 2 * math.pi
STEP_BOUND = math.pi / 2


class PathError(ValueError):
    pass


class BudgetExhausted(PathError):
    pass


# ---------------------------------------------------------------- logs


def principal_log(w: complex) -> complex:
    """log|w| + i arg w with arg in [0, 2 pi)."""
    if w == 0:
        raise PathError("log of zero")
    arg = cmath.phase(w)
    if arg < 0:
        arg += TWO_PI
    return complex(math.log(abs(w)), arg)


def series_log(w: complex) -> complex:
    """Standard principal log, arg in (-pi, pi]; the value binomial series sum to."""
    return cmath.log(w)


def forms_at(point: Sequence[complex]) -> tuple[complex, complex, complex]:
    z1, z2 = complex(point[0]), complex(point[1])
    return z1, z2, z1 - z2


def principal_logs(point) -> tuple[complex, complex, complex]:
    return tuple(principal_log(w) for w in forms_at(point))


def log_offsets(logs: Sequence[complex], point, forms=None, tol: float = 1e-6) -> tuple[Fraction, ...]:
    """(L - principal log of the form) / 2 pi i as exact half-integers.

    ``forms`` defaults to z1, z2, z1 - z2; a log of -w against the principal
    log of w gives an odd multiple of 1/2.
    """
    values = forms if forms is not None else forms_at(point)
    out = []
    for L, w in zip(logs, values):
        k = (L - principal_log(w)) / (2j * math.pi)
        half = round(k.real * 2)
        if abs(k.real * 2 - half) > tol or abs(k.imag) > tol:
            raise PathError(f"log offset {k} is not a half-integer")
        out.append(Fraction(half, 2))
    return tuple(out)


# ---------------------------------------------------------------- regions


def _chain(*values: float) -> float:
    """Margin of a strict decreasing chain v0 > v1 > ... ."""
    return min(a - b for a, b in zip(values, values[1:]))


def _margin_s1(z1, z2):
    d = z1 - z2
    return min(_chain(z1.real, z2.real, d.real, 0.0), _chain(z1.imag, z2.imag, d.imag, 0.0))


def _margin_abs(big, small, *cuts):
    m = min(abs(big) - abs(small), abs(small))
    for w in cuts:
        m = min(m, ray_distance(w))
    return m


class Region(Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    S1 = "S1"
    S2 = "S2"
    GPrime = "GPrime"
    GDoublePrime = "GDoublePrime"


_REGION_MARGIN: dict[Region, Callable[[complex, complex], float]] = {
    Region.R1: lambda z1, z2: _margin_abs(z1, z2, z1, z2),
    Region.R2: lambda z1, z2: _margin_abs(z2, z1, z1, z2),
    Region.R3: lambda z1, z2: _margin_abs(z2, z1 - z2, z2, z1 - z2),
    Region.R4: lambda z1, z2: _margin_abs(z1, z1 - z2, z1, z2 - z1),
    Region.R5: lambda z1, z2: _margin_abs(z1 - z2, z2, -z2, z1 - z2),
    Region.S1: _margin_s1,
    Region.S2: lambda z1, z2: _margin_s1(z2, z1),
    Region.GPrime: lambda z1, z2: min(ray_distance(z1), ray_distance(z2), ray_distance(z1 - z2)),
    Region.GDoublePrime: lambda z1, z2: min(ray_distance(z1), ray_distance(z2), ray_distance(z2 - z1)),
}


def region_margin(region: Region | str, point) -> float:
    """Positive inside the region; the size is a slack, not a distance."""
    region = Region(region) if isinstance(region, str) else region
    z1, z2 = complex(point[0]), complex(point[1])
    if not (cmath.isfinite(z1) and cmath.isfinite(z2)):
        raise PathError("point must be finite")
    return _REGION_MARGIN[region](z1, z2)


def region_contains(region: Region | str, point) -> bool:
    return region_margin(region, point) > 0


# containments along the two closed paths
TUBE_CONDITIONS: dict[str, Callable[[complex, complex], float]] = {
    "S1": _margin_s1,
    "S2": lambda z1, z2: _margin_s1(z2, z1),
    "|z1|>|z2|>0": lambda z1, z2: min(abs(z1) - abs(z2), abs(z2)),
    "|z2|>|z1|>0": lambda z1, z2: min(abs(z2) - abs(z1), abs(z1)),
    "|z2|>|z1|>0, Re z2<0, Im z2<0": lambda z1, z2: min(abs(z2) - abs(z1), abs(z1), -z2.real, -z2.imag),
    "|z2|>|z1-z2|>0": lambda z1, z2: min(abs(z2) - abs(z1 - z2), abs(z1 - z2)),
    "|z1|>|z1-z2|>0": lambda z1, z2: min(abs(z1) - abs(z1 - z2), abs(z1 - z2)),
    "Re z1>-Re z2>0, Im z1>-Im z2>0": lambda z1, z2: min(
        _chain(z1.real, -z2.real, 0.0), _chain(z1.imag, -z2.imag, 0.0)
    ),
    "Re z1>0>Re z2, Im z1>0>Im z2": lambda z1, z2: min(_chain(z1.real, 0.0, z2.real), _chain(z1.imag, 0.0, z2.imag)),
    "-Re z2>Re z1>0, -Im z2>Im z1>0": lambda z1, z2: min(
        _chain(-z2.real, z1.real, 0.0), _chain(-z2.imag, z1.imag, 0.0)
    ),
    "Re z2<Re(z2-z1)<Re z1<0, same for Im": lambda z1, z2: min(
        _chain(0.0, z1.real, (z2 - z1).real, z2.real), _chain(0.0, z1.imag, (z2 - z1).imag, z2.imag)
    ),
}


# ---------------------------------------------------------------- parameters


@dataclass(frozen=True)
class PathParams:
    a0: Fraction = Fraction(7)
    b0: Fraction = Fraction(4)
    a1: Fraction = Fraction(7)
    b1: Fraction = Fraction(2)
    a2: Fraction = Fraction(2)
    b2: Fraction = Fraction(7)
    a3: Fraction = Fraction(4)
    b3: Fraction = Fraction(7)

    def __post_init__(self):
        for name in ("a0", "b0", "a1", "b1", "a2", "b2", "a3", "b3"):
            value = getattr(self, name)
            if isinstance(value, float):
                raise PathError(f"{name} must be exact, got float {value!r}")
            object.__setattr__(self, name, Fraction(value))

    def violations(self) -> list[str]:
        a0, b0, a1, b1, a2, b2, a3, b3 = self.as_tuple()
        checks = [
            ("a0 > b0 > a0-b0 > 0", a0 > b0 > a0 - b0 > 0),
            ("a1 > a1-b1 > b1 > 0", a1 > a1 - b1 > b1 > 0),
            ("b2 > b2-a2 > a2 > 0", b2 > b2 - a2 > a2 > 0),
            ("b3 > a3 > b3-a3 > 0", b3 > a3 > b3 - a3 > 0),
        ]
        return [name for name, ok in checks if not ok]

    def validate(self) -> "PathParams":
        bad = self.violations()
        if bad:
            raise PathError("path parameters violate: " + "; ".join(bad))
        return self

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.a0, self.b0, self.a1, self.b1, self.a2, self.b2, self.a3, self.b3)

    @classmethod
    def parse(cls, text: str) -> "PathParams":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 8:
            raise PathError("expected eight comma-separated values a0,b0,a1,b1,a2,b2,a3,b3")
        return cls(*(Fraction(p) for p in parts))


DEFAULT_PARAMS = PathParams()

EIGHTH = root_of_unity(Fraction(1, 8))  # e^{i pi/4}


def on_ray(r, theta: Fraction = Fraction(1, 4)) -> Cyclotomic:
    """r * e^{i pi theta} exactly; theta is given in units of pi."""
    return root_of_unity(Fraction(theta) / 2) * Fraction(r)


def anchor_point(params: PathParams = DEFAULT_PARAMS) -> tuple[Cyclotomic, Cyclotomic]:
    """The base point (a0 e^{i pi/4}, b0 e^{i pi/4})."""
    params.validate()
    return on_ray(params.a0), on_ray(params.b0)


def anchor_logs(params: PathParams = DEFAULT_PARAMS) -> tuple[complex, complex, complex]:
    p = numeric_point(anchor_point(params))
    logs = principal_logs(p)
    for L in logs:
        if abs(L.imag - math.pi / 4) > 1e-12:
            raise PathError("anchor is not on the pi/4 ray")
    return logs


def numeric_point(point) -> tuple[complex, complex]:
    return to_complex(point[0]), to_complex(point[1])


# ---------------------------------------------------------------- segments


@dataclass(frozen=True)
class Linear:
    start: Cyclotomic
    end: Cyclotomic

    def at(self, s: float) -> complex:
        a, b = to_complex(self.start), to_complex(self.end)
        return a + (b - a) * s

    def endpoints(self):
        return self.start, self.end

    def to_json(self) -> dict:
        return {"kind": "linear", "start": _cx(self.start), "end": _cx(self.end)}


@dataclass(frozen=True)
class Arc:
    """center + radius * e^{i pi (theta0 + s * sweep)}."""

    center: Cyclotomic
    radius: Fraction
    theta0: Fraction
    sweep: Fraction

    def at(self, s: float) -> complex:
        c = to_complex(self.center)
        return c + float(self.radius) * cmath.exp(1j * math.pi * (float(self.theta0) + s * float(self.sweep)))

    def endpoints(self):
        return (
            self.center + on_ray(self.radius, self.theta0),
            self.center + on_ray(self.radius, self.theta0 + self.sweep),
        )

    def to_json(self) -> dict:
        return {
            "kind": "arc",
            "center": _cx(self.center),
            "radius": str(self.radius),
            "theta0_over_pi": str(self.theta0),
            "sweep_over_pi": str(self.sweep),
        }


def _cx(c: Cyclotomic) -> list[float]:
    v = to_complex(c)
    return [v.real, v.imag]


@dataclass(frozen=True)
class Segment:
    t0: Fraction
    t1: Fraction
    z1: Linear | Arc
    z2: Linear | Arc

    def at(self, t: float) -> tuple[complex, complex]:
        s = (t - float(self.t0)) / float(self.t1 - self.t0)
        return self.z1.at(s), self.z2.at(s)


@dataclass(frozen=True)
class Condition:
    """A containment the path must satisfy on [lo, hi] (open or closed ends)."""

    lo: Fraction
    hi: Fraction
    name: str
    closed: bool = False

    def covers(self, t: Fraction | float) -> bool:
        if self.closed:
            return self.lo <= t <= self.hi
        return self.lo < t < self.hi


@dataclass(frozen=True)
class PathSpec:
    name: str
    segments: tuple[Segment, ...]
    ambient: Region
    conditions: tuple[Condition, ...] = ()
    closed: bool = True
    samples_per_segment: int = 64

    def at(self, t) -> tuple[complex, complex]:
        t = float(t)
        for seg in self.segments:
            if t <= float(seg.t1):
                return seg.at(max(t, float(seg.t0)))
        return self.segments[-1].at(float(self.segments[-1].t1))

    def exact_at(self, t: Fraction):
        """Exact endpoint of the segment ending at t (t must be a joint)."""
        for seg in self.segments:
            if seg.t0 == t:
                return seg.z1.endpoints()[0], seg.z2.endpoints()[0]
            if seg.t1 == t:
                return seg.z1.endpoints()[1], seg.z2.endpoints()[1]
        raise PathError(f"{t} is not a joint of {self.name}")

    def joint_gaps(self) -> list[Fraction]:
        """Joints where consecutive segments do not meet exactly."""
        bad = []
        pairs = list(zip(self.segments, self.segments[1:]))
        if self.closed:
            pairs.append((self.segments[-1], self.segments[0]))
        for left, right in pairs:
            end = (left.z1.endpoints()[1], left.z2.endpoints()[1])
            start = (right.z1.endpoints()[0], right.z2.endpoints()[0])
            if end[0] != start[0] or end[1] != start[1]:
                bad.append(left.t1)
        return bad

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ambient": self.ambient.value,
            "closed": self.closed,
            "segments": [
                {"t0": str(s.t0), "t1": str(s.t1), "z1": s.z1.to_json(), "z2": s.z2.to_json()} for s in self.segments
            ],
        }

    def write_csv(self, path, samples: int | None = None) -> None:
        n = samples or self.samples_per_segment
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(["t", "re_z1", "im_z1", "re_z2", "im_z2"])
            for seg in self.segments:
                for k in range(n + 1):
                    t = float(seg.t0) + (float(seg.t1) - float(seg.t0)) * k / n
                    z1, z2 = seg.at(t)
                    out.writerow([f"{t:.9f}", f"{z1.real:.12g}", f"{z1.imag:.12g}", f"{z2.real:.12g}", f"{z2.imag:.12g}"])


def _sevenths(k: int) -> Fraction:
    return Fraction(k, 7)


def build_gamma(params: PathParams = DEFAULT_PARAMS) -> PathSpec:
    params.validate()
    a0, b0, a1, b1, a2, b2, _, _ = params.as_tuple()
    q, f = Fraction(1, 4), Fraction(5, 4)
    c = on_ray(b2, f)
    segs = (
        Segment(_sevenths(0), _sevenths(1), Linear(on_ray(a0), on_ray(a1)), Linear(on_ray(b0), on_ray(b1))),
        Segment(_sevenths(1), _sevenths(2), Linear(on_ray(a1), on_ray(a1)), Arc(on_ray(0), b1, q, Fraction(1))),
        Segment(_sevenths(2), _sevenths(3), Linear(on_ray(a1), on_ray(a2)), Linear(on_ray(b1, f), on_ray(b2, f))),
        Segment(_sevenths(3), _sevenths(4), Arc(on_ray(0), a2, q, Fraction(1)), Linear(c, c)),
        Segment(_sevenths(4), _sevenths(5), Arc(c, b2 - a2, q, Fraction(1)), Linear(c, c)),
        Segment(_sevenths(5), _sevenths(6), Arc(on_ray(0), 2 * b2 - a2, f, Fraction(-1)), Arc(on_ray(0), b2, f, Fraction(-1))),
        Segment(_sevenths(6), _sevenths(7), Linear(on_ray(2 * b2 - a2), on_ray(a0)), Linear(on_ray(b2), on_ray(b0))),
    )
    conds = (
        Condition(_sevenths(0), _sevenths(0), "S1", True),
        Condition(_sevenths(0), _sevenths(2), "|z1|>|z2|>0"),
        Condition(_sevenths(2), _sevenths(2), "Re z1>-Re z2>0, Im z1>-Im z2>0", True),
        Condition(_sevenths(2), _sevenths(3), "Re z1>0>Re z2, Im z1>0>Im z2"),
        Condition(_sevenths(3), _sevenths(3), "-Re z2>Re z1>0, -Im z2>Im z1>0", True),
        Condition(_sevenths(3), _sevenths(4), "|z2|>|z1|>0, Re z2<0, Im z2<0"),
        Condition(_sevenths(4), _sevenths(4), "Re z2<Re(z2-z1)<Re z1<0, same for Im", True),
        Condition(_sevenths(4), _sevenths(7), "|z2|>|z1-z2|>0"),
        Condition(_sevenths(7), _sevenths(7), "S1", True),
    )
    return PathSpec("gamma", segs, Region.GPrime, conds)


def build_sigma(params: PathParams = DEFAULT_PARAMS) -> PathSpec:
    params.validate()
    a0, b0, a1, b1, a2, b2, a3, b3 = params.as_tuple()
    q, f = Fraction(1, 4), Fraction(5, 4)
    segs = (
        Segment(_sevenths(0), _sevenths(1), Linear(on_ray(a3), on_ray(a3)), Arc(on_ray(a3), b3 - a3, q, Fraction(1))),
        Segment(_sevenths(1), _sevenths(2), Linear(on_ray(a3), on_ray(a0)), Linear(on_ray(2 * a3 - b3), on_ray(b0))),
        Segment(_sevenths(2), _sevenths(3), Linear(on_ray(a0), on_ray(a1)), Linear(on_ray(b0), on_ray(b1))),
        Segment(_sevenths(3), _sevenths(4), Linear(on_ray(a1), on_ray(a1)), Arc(on_ray(0), b1, q, Fraction(1))),
        Segment(_sevenths(4), _sevenths(5), Linear(on_ray(a1), on_ray(a2)), Linear(on_ray(b1, f), on_ray(b2, f))),
        Segment(_sevenths(5), _sevenths(6), Linear(on_ray(a2), on_ray(a2)), Arc(on_ray(0), b2, f, Fraction(-1))),
        Segment(_sevenths(6), _sevenths(7), Linear(on_ray(a2), on_ray(a3)), Linear(on_ray(b2), on_ray(b3))),
    )
    conds = (
        Condition(_sevenths(0), _sevenths(0), "S2", True),
        Condition(_sevenths(0), _sevenths(2), "|z1|>|z1-z2|>0"),
        Condition(_sevenths(2), _sevenths(2), "S1", True),
        Condition(_sevenths(2), _sevenths(4), "|z1|>|z2|>0"),
        Condition(_sevenths(4), _sevenths(4), "Re z1>-Re z2>0, Im z1>-Im z2>0", True),
        Condition(_sevenths(4), _sevenths(5), "Re z1>0>Re z2, Im z1>0>Im z2"),
        Condition(_sevenths(5), _sevenths(5), "-Re z2>Re z1>0, -Im z2>Im z1>0", True),
        Condition(_sevenths(5), _sevenths(7), "|z2|>|z1|>0"),
        Condition(_sevenths(7), _sevenths(7), "S2", True),
    )
    return PathSpec("sigma", segs, Region.GDoublePrime, conds)


# ---------------------------------------------------------------- certification


@dataclass
class Certification:
    path: str
    ambient: str
    passed: bool
    clearance: float
    samples: int
    conditions: list[dict] = field(default_factory=list)
    joint_gaps: list[str] = field(default_factory=list)
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "path": self.path,
            "ambient": self.ambient,
            "status": "pass" if self.passed else "fail",
            "clearance": self.clearance,
            "samples": self.samples,
            "conditions": self.conditions,
            "joint_gaps": self.joint_gaps,
            "detail": self.detail,
        }


def _sample(path: PathSpec, per_segment: int) -> tuple[list[float], list[complex], list[complex]]:
    ts, z1s, z2s = [], [], []
    for seg in path.segments:
        for k in range(per_segment + 1):
            t = seg.t0 + (seg.t1 - seg.t0) * Fraction(k, per_segment)
            z1, z2 = seg.at(float(t))
            ts.append(t)
            z1s.append(z1)
            z2s.append(z2)
    return ts, z1s, z2s


def certify_path(
    path: PathSpec,
    ambient: Region | None = None,
    floor: float = 1e-6,
    rel_tol: float = 1e-3,
    max_samples: int = 1 << 14,
) -> Certification:
    """Sample until the minimum clearance stabilizes, then check every containment."""
    ambient = ambient or path.ambient
    if ambient not in (Region.GPrime, Region.GDoublePrime):
        raise PathError("ambient must be GPrime or GDoublePrime")
    sign = 1 if ambient is Region.GPrime else -1
    n = path.samples_per_segment
    previous = None
    while True:
        ts, z1s, z2s = _sample(path, n)
        clearance = kernels.min_clearance(z1s, z2s, sign)
        if previous is not None and abs(clearance - previous) <= rel_tol * max(previous, 1e-300):
            break
        previous = clearance
        n *= 2
        if n > max_samples:
            raise BudgetExhausted(f"clearance of {path.name} did not stabilize within {max_samples} samples per segment")
    gaps = [str(t) for t in path.joint_gaps()]
    cond_reports = []
    ok = clearance > floor and not gaps
    for cond in path.conditions:
        fn = TUBE_CONDITIONS[cond.name]
        if cond.closed:
            pts = [numeric_point(path.exact_at(cond.lo))]
        else:
            pts = [(a, b) for t, a, b in zip(ts, z1s, z2s) if cond.covers(t)]
        margin = min(fn(a, b) for a, b in pts) if pts else -math.inf
        passed = margin > 0
        ok = ok and passed
        interval = f"[{cond.lo}]" if cond.closed else f"({cond.lo},{cond.hi})"
        cond_reports.append({"t": interval, "region": cond.name, "margin": margin, "status": "pass" if passed else "fail"})
    detail = "" if ok else ("clearance below floor" if clearance <= floor else "containment or joint failure")
    return Certification(path.name, ambient.value, ok, clearance, n, cond_reports, gaps, detail)


# ---------------------------------------------------------------- continuation


FORMS = ((1, 0), (0, 1), (1, -1))  # z1, z2, z1 - z2


def _form_values(points, form):
    a, b = form
    return [a * z1 + b * z2 for z1, z2 in points]


def track_logs(
    fn: Callable[[float], tuple[complex, complex]],
    initial_logs: Sequence[complex],
    forms: Sequence[tuple] = FORMS,
    t0: float = 0.0,
    t1: float = 1.0,
    start_samples: int = 32,
    max_samples: int = 1 << 16,
) -> tuple[list[complex], list[float]]:
    """Continue logs of the given linear forms along fn from t0 to t1.

    Returns the continued logs and the total arg change of each form.
    Sampling doubles until every step changes each arg by less than pi/2.
    """
    n = start_samples
    while True:
        pts = [fn(t0 + (t1 - t0) * k / n) for k in range(n + 1)]
        deltas = []
        worst = 0.0
        for form in forms:
            ws = _form_values(pts, form)
            if any(w == 0 for w in ws):
                raise PathError("path passes through a singular point")
            total, step = kernels.arg_walk(ws)
            deltas.append(total)
            worst = max(worst, step)
        if worst < STEP_BOUND:
            break
        n *= 2
        if n > max_samples:
            raise BudgetExhausted("path runs too close to a singularity to resolve arg steps")
    logs = []
    for L, form, d in zip(initial_logs, forms, deltas):
        ws0 = _form_values([pts[0]], form)[0]
        ws1 = _form_values([pts[-1]], form)[0]
        logs.append(L + complex(math.log(abs(ws1) / abs(ws0)), d))
    return logs, deltas


@dataclass(frozen=True)
class WindingTriple:
    w1: int
    w2: int
    w12: int

    def __add__(self, other: "WindingTriple") -> "WindingTriple":
        return WindingTriple(self.w1 + other.w1, self.w2 + other.w2, self.w12 + other.w12)

    def __neg__(self) -> "WindingTriple":
        return WindingTriple(-self.w1, -self.w2, -self.w12)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.w1, self.w2, self.w12)


@dataclass
class Continuation:
    delta_args: tuple[float, float, float]
    winding: WindingTriple | None
    function: object = None

    def to_json(self) -> dict:
        return {
            "delta_args_over_pi": [d / math.pi for d in self.delta_args],
            "winding": list(self.winding.as_tuple()) if self.winding else None,
        }


def path_delta_args(path: PathSpec, t0=0, t1=1) -> tuple[float, float, float]:
    """Total arg change of z1, z2, z1-z2 along path restricted to [t0, t1]."""
    totals = [0.0, 0.0, 0.0]
    for seg in path.segments:
        lo, hi = max(float(seg.t0), float(t0)), min(float(seg.t1), float(t1))
        if lo >= hi:
            continue
        _, deltas = track_logs(seg.at, (0j, 0j, 0j), FORMS, lo, hi)
        totals = [a + b for a, b in zip(totals, deltas)]
    return tuple(totals)


def continue_along(path: PathSpec, g=None, t0=0, t1=1, certified: Certification | None = None) -> Continuation:
    """Arg changes along the path; for a full closed path also the winding triple.

    When a GFunction is given, the returned function is g with its branch
    shifted by the winding triple.
    """
    if certified is not None and not certified.passed:
        raise PathError(f"{path.name} is not certified")
    deltas = path_delta_args(path, t0, t1)
    winding = None
    full = float(t0) == 0.0 and float(t1) == 1.0 and path.closed
    if full:
        ks = [d / TWO_PI for d in deltas]
        rounded = [round(k) for k in ks]
        if any(abs(k - r) > 1e-9 for k, r in zip(ks, rounded)):
            raise PathError(f"closed path produced non-integer winding {ks}")
        winding = WindingTriple(*rounded)
    cont = g
    if g is not None and winding is not None:
        cont = g.shift_branch(*winding.as_tuple())
    return Continuation(tuple(deltas), winding, cont)


# ---------------------------------------------------------------- polar interpolation


def _polar_interp(w0: complex, w1: complex, s: float) -> complex:
    """Linear in log-modulus and in arg taken in (0, 2 pi); stays off [0, inf)."""
    l0, l1 = principal_log(w0), principal_log(w1)
    return cmath.exp(l0 + (l1 - l0) * s)


def chart_path(coords: str, start, end) -> Callable[[float], tuple[complex, complex]]:
    """Path from start to end interpolating polar coordinates of a region's chart.

    ``coords`` names the chart: "12" uses (z1, z2), "21" uses (z2, z1),
    "20" uses (z2, z1-z2) and "10" uses (z1, z2-z1).
    """
    s0, s1 = numeric_point(start), numeric_point(end)
    to_chart, from_chart = _CHARTS[coords]
    c0, c1 = to_chart(*s0), to_chart(*s1)

    def fn(s: float):
        u = _polar_interp(c0[0], c1[0], s)
        v = _polar_interp(c0[1], c1[1], s)
        return from_chart(u, v)

    return fn


_CHARTS = {
    "12": (lambda z1, z2: (z1, z2), lambda u, v: (u, v)),
    "21": (lambda z1, z2: (z2, z1), lambda u, v: (v, u)),
    "20": (lambda z1, z2: (z2, z1 - z2), lambda u, v: (u + v, u)),
    "10": (lambda z1, z2: (z1, z2 - z1), lambda u, v: (u, u + v)),
}


def straight_path(start, end) -> Callable[[float], tuple[complex, complex]]:
    a, b = numeric_point(start), numeric_point(end)
    return lambda s: (a[0] + (b[0] - a[0]) * s, a[1] + (b[1] - a[1]) * s)
