"""Pure-Python float kernels; same signatures as the compiled module."""

import cmath
import math


def arg_walk(ws):
    """Total change of arg along consecutive samples and the largest single step."""
    total = 0.0
    worst = 0.0
    prev = ws[0]
    for w in ws[1:]:
        step = cmath.phase(w / prev)
        total += step
        if abs(step) > worst:
            worst = abs(step)
        prev = w
    return total, worst


def ray_distance(w):
    """Distance from w to the closed ray [0, +inf)."""
    if w.real >= 0.0:
        return abs(w.imag)
    return abs(w)


def min_clearance(z1s, z2s, diff_sign):
    """Smallest max-norm distance from the samples to the cut set.

    The cut set is z1 in [0,inf), z2 in [0,inf) and diff_sign*(z1-z2) in
    [0,inf).  Moving both coordinates by at most e moves z1-z2 by at most 2e,
    hence the factor 1/2 on the difference term.
    """
    best = math.inf
    for z1, z2 in zip(z1s, z2s):
        d = min(ray_distance(z1), ray_distance(z2), 0.5 * ray_distance(diff_sign * (z1 - z2)))
        if d < best:
            best = d
    return best
