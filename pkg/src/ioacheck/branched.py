"""Preferred branches of GFunctions, variable changes and expansions.

All branches are anchored at the base point P0 on the pi/4 ray, where the
logs of z1, z2 and z1-z2 are principal.  The branch on R1 is continued
inside R1; R3 and R4 are reached by continuing from P0 inside them (P0 lies
in S1); R2 is reached through R4 to the mirrored point Q in S2 and then
inside R2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .gfunction import SHIFT, SWAP, GFunction, GFunctionError, match_forms
from .paths import (
    DEFAULT_PARAMS,
    PathError,
    PathParams,
    Region,
    anchor_logs,
    anchor_point,
    build_gamma,
    chart_path,
    log_offsets,
    numeric_point,
    principal_log,
    principal_logs,
    region_contains,
    series_log,
    track_logs,
)
from .series import Series, binom_expand, exponents

BRANCH_REGIONS = (Region.R1, Region.R2, Region.R3, Region.R4)

# chart used to move inside each region, and the legs of the chain
_CHAIN = {
    Region.R1: ("12",),
    Region.R3: ("20",),
    Region.R4: ("10",),
    Region.R2: ("10", "21"),
}


def mirror_point(params: PathParams = DEFAULT_PARAMS):
    """(b0 e^{i pi/4}, a0 e^{i pi/4}), the anchor with coordinates exchanged; it lies in S2."""
    p1, p2 = anchor_point(params)
    return p2, p1


def _key(point) -> tuple[complex, complex]:
    return numeric_point(point)


@lru_cache(maxsize=4096)
def _chain_logs_cached(region: Region, point: tuple[complex, complex], params: PathParams):
    start = numeric_point(anchor_point(params))
    logs = list(anchor_logs(params))
    legs = _CHAIN[region]
    stops = [numeric_point(mirror_point(params)), point] if len(legs) == 2 else [point]
    for chart, stop in zip(legs, stops):
        logs, _ = track_logs(chart_path(chart, start, stop), logs)
        start = stop
    return tuple(logs)


def chain_logs(region: Region | str, point, params: PathParams = DEFAULT_PARAMS) -> tuple[complex, complex, complex]:
    """Logs of z1, z2, z1-z2 on the preferred branch of ``region`` at ``point``."""
    region = Region(region) if isinstance(region, str) else region
    if region not in BRANCH_REGIONS:
        raise PathError(f"preferred branches live on R1..R4, not {region.value}")
    point = _key(point)
    if not region_contains(region, point):
        raise PathError(f"point {point} is outside {region.value}")
    return _chain_logs_cached(region, point, params)


@dataclass(frozen=True)
class BranchGerm:
    """A branch at a point, rewritten against principal logs of z1, z2, z1-z2.

    Two germs at the same point are equal iff their functions are equal as
    canonical GFunctions; this is an exact comparison.
    """

    point: tuple[complex, complex]
    function: GFunction

    def value(self) -> complex:
        return self.function.evaluate(principal_logs(self.point), self.point)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BranchGerm):
            return NotImplemented
        return self.function == other.function

    __hash__ = None


def germ_from_logs(g: GFunction, logs, point) -> BranchGerm:
    point = _key(point)
    return BranchGerm(point, g.shift_branch(*log_offsets(logs, point)))


def preferred_branch_eval(g: GFunction, region: Region | str, point, exact: bool = False, params=DEFAULT_PARAMS):
    """Value of the preferred branch; a BranchGerm in exact mode, a complex otherwise."""
    logs = chain_logs(region, point, params)
    if exact:
        return germ_from_logs(g, logs, point)
    return g.evaluate(logs, _key(point))


# ---------------------------------------------------------------- variable changes


def reanchor(g: GFunction, matrix, image_logs, target_logs, point) -> GFunction:
    """The function z -> g(matrix z) whose branch at ``point`` uses ``image_logs``.

    ``image_logs`` are the logs of u1, u2, u1-u2 (u = matrix z) carried by
    the chosen branch of g; ``target_logs`` are logs of z1, z2, z1-z2 on the
    branch the result is expressed in.
    """
    perm, _ = match_forms(matrix)
    offsets = []
    for slot in range(3):
        k = (image_logs[slot] - target_logs[perm[slot]]) / (2j * math.pi)
        half = round(k.real * 2)
        if abs(k.real * 2 - half) > 1e-6 or abs(k.imag) > 1e-6:
            raise GFunctionError(f"branch offset {k} is not a half-integer")
        offsets.append(Fraction(half, 2))
    return g.substitute(matrix, offsets)


def _apply(matrix, point):
    z1, z2 = _key(point)
    (a, b), (c, d) = matrix
    return (a * z1 + b * z2, c * z1 + d * z2)


def swap_variables(g: GFunction, params: PathParams = DEFAULT_PARAMS) -> GFunction:
    """(z1, z2) -> g(z2, z1), taking the preferred R2 branch of g as the R1 branch of the result.

    The half-turn relating log(z2-z1) to log(z1-z2) comes out of the
    continuation, not a sign convention.
    """
    p0 = _key(anchor_point(params))
    image = _apply(SWAP, p0)
    return reanchor(g, SWAP, chain_logs(Region.R2, image, params), chain_logs(Region.R1, p0, params), p0)


def shift_base_point(params: PathParams = DEFAULT_PARAMS):
    """gamma(2/7): lies in R1 and in R5, so both sides of the shift are expansions there."""
    return build_gamma(params).exact_at(Fraction(2, 7))


def substitute_shift(g: GFunction, params: PathParams = DEFAULT_PARAMS) -> GFunction:
    """(z1, z2) -> g(z1-z2, -z2).

    On R5 the branch uses the preferred R1 branch of g at the image point; it
    is carried to R1 at gamma(2/7), which lies in both.
    """
    base = _key(shift_base_point(params))
    image = _apply(SHIFT, base)
    return reanchor(g, SHIFT, chain_logs(Region.R1, image, params), chain_logs(Region.R1, base, params), base)


# ---------------------------------------------------------------- expansions


def chart_logs(which: str, point) -> tuple[complex, complex, complex]:
    """Logs that summing the ``which`` expansion with principal monomials produces.

    "12": logs of z1, z2, z1-z2 with (z1-z2) expanded in z2/z1.
    "21": logs of z1, z2, z2-z1 with (z2-z1) expanded in z1/z2.
    "20": logs of z1, z2, z1-z2 with z1 = z2 + (z1-z2) expanded in (z1-z2)/z2.
    """
    z1, z2 = _key(point)
    if which == "12":
        return principal_log(z1), principal_log(z2), principal_log(z1) + series_log(1 - z2 / z1)
    if which == "21":
        return principal_log(z1), principal_log(z2), principal_log(z2) + series_log(1 - z1 / z2)
    if which == "20":
        return principal_log(z2) + series_log(1 + (z1 - z2) / z2), principal_log(z2), principal_log(z1 - z2)
    raise GFunctionError(f"unknown expansion {which!r}")


_EXPANSION_REGION = {"12": Region.R1, "21": Region.R2, "20": Region.R3}


@lru_cache(maxsize=None)
def expansion_offsets(which: str, params: PathParams = DEFAULT_PARAMS) -> tuple[Fraction, Fraction, Fraction]:
    """(preferred log - chart log) / 2 pi i on the region matching ``which``."""
    region = _EXPANSION_REGION[which]
    ref = _key(mirror_point(params) if region is Region.R2 else anchor_point(params))
    pref = chain_logs(region, ref, params)
    chart = chart_logs(which, ref)
    out = []
    for a, b in zip(pref, chart):
        k = (a - b) / (2j * math.pi)
        half = round(k.real * 2)
        if abs(k.real * 2 - half) > 1e-6 or abs(k.imag) > 1e-6:
            raise GFunctionError(f"expansion offset {k} is not a half-integer")
        out.append(Fraction(half, 2))
    return tuple(out)


def iota_g(which: str, g: GFunction, cutoff: int, params: PathParams = DEFAULT_PARAMS) -> Series:
    """Expansion of the preferred branch of g on R1 ("12"), R2 ("21") or R3 ("20")."""
    from .scalars import root_of_unity

    k = expansion_offsets(which, params)
    total = Series.zero()
    for rep, (i, j, kk, num) in g.classes():
        ph = root_of_unity(rep[0] * k[0] + rep[1] * k[1] + rep[2] * k[2])
        if which in ("12", "21"):
            large, small = ("x1", "x2") if which == "12" else ("x2", "x1")
            sign = 1 if which == "12" else (-1) ** (kk % 2)  # (x1-x2)^kk = (-1)^kk (x2-x1)^kk
            diff = binom_expand(large, small, rep[2] + kk, cutoff, sign=-1)
            mono = Series.monomial(ph * sign, x1=rep[0] + i, x2=rep[1] + j)
            poly = Series.polynomial({exponents(x1=a, x2=b): c for (a, b), c in num.items()})
            piece = diff * mono * poly
        else:
            z1 = binom_expand("x2", "x0", rep[0] + i, cutoff, sign=1)
            mono = Series.monomial(ph, x2=rep[1] + j, x0=rep[2] + kk)
            # num(z1, z2) with z1 = x0 + x2, z2 = x2
            terms: dict = {}
            for (a, b), c in num.items():
                for m in range(a + 1):
                    ev = exponents(x0=m, x2=a - m + b)
                    terms[ev] = terms.get(ev, 0) + c * math.comb(a, m)
            piece = z1 * mono * Series.polynomial(terms)
        total = total + piece
    return total


def sum_series_at(s: Series, point, which: str) -> complex:
    """Numerically sum a truncated expansion with principal monomials at a point."""
    import cmath

    from .scalars import to_complex

    z1, z2 = _key(point)
    logs = {"x1": principal_log(z1), "x2": principal_log(z2), "x0": principal_log(z1 - z2)}
    total = 0j
    for ev, c in s:
        total += to_complex(c) * cmath.exp(sum(float(e) * logs[v] for v, e in ev))
    return total
