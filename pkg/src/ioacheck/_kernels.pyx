# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled float kernels for path sampling."""

from libc.math cimport atan2, fabs, hypot, INFINITY


cdef inline double _ray_distance(double re, double im) nogil:
    if re >= 0.0:
        return fabs(im)
    return hypot(re, im)


def arg_walk(ws):
    cdef Py_ssize_t n = len(ws), k
    cdef double total = 0.0, worst = 0.0, step
    cdef double complex prev, cur, ratio
    prev = ws[0]
    for k in range(1, n):
        cur = ws[k]
        ratio = cur * prev.conjugate()
        step = atan2(ratio.imag, ratio.real)
        total += step
        if fabs(step) > worst:
            worst = fabs(step)
        prev = cur
    return total, worst


def min_clearance(z1s, z2s, int diff_sign):
    cdef Py_ssize_t n = len(z1s), k
    cdef double best = INFINITY, d, e
    cdef double complex a, b, c
    for k in range(n):
        a = z1s[k]
        b = z2s[k]
        c = diff_sign * (a - b)
        d = _ray_distance(a.real, a.imag)
        e = _ray_distance(b.real, b.imag)
        if e < d:
            d = e
        e = 0.5 * _ray_distance(c.real, c.imag)
        if e < d:
            d = e
        if d < best:
            best = d
    return best
