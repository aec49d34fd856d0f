"""Acceptance criteria 1-7.  Each test records one line; the lines are
printed in the terminal summary (see conftest.py)."""

import random
import time
from dataclasses import replace
from fractions import Fraction
from itertools import permutations

import pytest

from ioacheck.branch_checks import path_relation_checks, preferred_branch_checks
from ioacheck.jacobi import verify_s3_model
from ioacheck.model import OperatorLabel, abelian_model, synthetic_model, validate_spec
from ioacheck.moore_seiberg import build_all, check_relations
from ioacheck.paths import Region, build_gamma, build_sigma, certify_path, continue_along
from ioacheck.scalars import is_zero
from ioacheck.series import random_rational_fn, verify_delta_identities, verify_prop_2_1

RESULTS: dict[int, str] = {}

F = Fraction
SYNTHETIC_SEEDS = range(5)


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, RESULTS[n]


def test_criterion_1_formal_calculus():
    start = time.perf_counter()
    rng = random.Random(20240)
    identities = []
    for _ in range(20):
        f = random_rational_fn(rng, max_degree=4, max_pole=3)
        identities.extend(verify_prop_2_1(f, 10))
    deltas = verify_delta_identities(12)
    elapsed = time.perf_counter() - start
    ok = all(r.passed and r.compared > 0 for r in identities + deltas) and elapsed < 30
    record(1, ok, f"{len(identities)} identity checks on 20 functions at cutoff 10, delta identities at 12, {elapsed:.1f}s")


def test_criterion_2_omega_involution():
    m = abelian_model(8)
    n = 0
    bad = []
    for a, b, c in m.operators:
        for r in (-2, -1, 0, 1):
            op = OperatorLabel(a, b, c, 1)
            back = m.omega_apply(-r - 1, m.omega_apply(r, op))
            n += 1
            if back.key != op.key or not is_zero(back.scalar - 1):
                bad.append((a, b, c, r))
    record(2, not bad, f"{n} operator/r pairs on Z/8, {len(bad)} failures")


def test_criterion_3_moore_seiberg():
    start = time.perf_counter()
    wanted = {"hexagon1", "hexagon2", "inverse-omega2", "inverse-omega2-inv", "F-omega4", "B-omega4"}
    lines = []
    ok = True
    for n in (2, 3, 4, 6, 8):
        rep = check_relations(abelian_model(n))
        by = rep.by_relation()
        ok = ok and rep.passed and wanted <= set(by)
        lines.append(f"N={n}:{sum(c for _, c in by.values())}")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 60
    record(3, ok, f"all relations over all quadruples ({', '.join(lines)} columns), {elapsed:.1f}s")


GAMMA_OPEN = [
    ((F(0), F(2, 7)), "|z1|>|z2|>0"),
    ((F(2, 7), F(3, 7)), "Re z1>0>Re z2, Im z1>0>Im z2"),
    ((F(3, 7), F(4, 7)), "|z2|>|z1|>0, Re z2<0, Im z2<0"),
    ((F(4, 7), F(1)), "|z2|>|z1-z2|>0"),
]
SIGMA_OPEN = [
    ((F(0), F(2, 7)), "|z1|>|z1-z2|>0"),
    ((F(2, 7), F(4, 7)), "|z1|>|z2|>0"),
    ((F(4, 7), F(5, 7)), "Re z1>0>Re z2, Im z1>0>Im z2"),
    ((F(5, 7), F(1)), "|z2|>|z1|>0"),
]


def test_criterion_4_paths():
    parts = []
    ok = True
    for path, ambient, intervals in ((build_gamma(), Region.GPrime, GAMMA_OPEN), (build_sigma(), Region.GDoublePrime, SIGMA_OPEN)):
        cert = certify_path(path, ambient)
        listed = [((c.lo, c.hi), c.name) for c in path.conditions if not c.closed]
        winding = continue_along(path, certified=cert).winding.as_tuple()
        ok = ok and cert.passed and cert.clearance > 0 and listed == intervals and winding == (0, 0, 0)
        ok = ok and all(c["status"] == "pass" for c in cert.conditions)
        parts.append(f"{path.name}: clearance {cert.clearance:.4f}, {len(cert.conditions)} containments, winding {winding}")
    record(4, ok, "; ".join(parts))


def test_criterion_5_branches():
    ok = True
    counts = {}
    for model in (abelian_model(4), synthetic_model(random.Random(3))):
        ms = build_all(model)
        for mode in ("exact", "float"):
            reps = preferred_branch_checks(model, mode, 1e-9, 10, 0, ms) + path_relation_checks(model, mode, 1e-9, 10, 0, ms)
            ok = ok and all(r.passed for r in reps)
            for r in reps:
                kind = r.name.split()[0] if r.name.split()[0] != "preferred" else r.name.split()[1]
                counts[kind] = counts.get(kind, 0) + r.compared
    kinds = {"R1", "R2", "R3", "R4", "overlap-S1", "overlap-S2", "gamma-shift", "sigma-shift"}
    ok = ok and set(counts) == kinds
    record(5, ok, "points compared " + ", ".join(f"{k}={counts.get(k, 0)}" for k in sorted(kinds)) + " (both modes)")


def _within_synthetic_limits(m):
    for quad in m.quadruples():
        labels = m.classes("P", quad)
        reps = {rep for lab in labels for rep in m.product_correlator(lab).class_reps()}
        if len(reps) > 5 or any(F(x).denominator > 12 for rep in reps for x in rep):
            return False
    return True


def test_criterion_6_s3():
    start = time.perf_counter()
    models = [abelian_model(n) for n in (2, 4, 6)] + [synthetic_model(random.Random(s), name=f"synthetic-{s}") for s in SYNTHETIC_SEEDS]
    ok = True
    parts = []
    for m in models:
        ok = ok and validate_spec(m).passed and _within_synthetic_limits(m)
        rep = verify_s3_model(m, 8)
        passed, total = rep.counts()
        ok = ok and passed == total and total > 0 and total % 6 == 0
        parts.append(f"{m.name} {passed}/{total}")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 300
    record(6, ok, f"{', '.join(parts)} at cutoff 8, {elapsed:.1f}s")


def _orbit(quad):
    a1, a2, a3, a4 = quad
    return {(*p, a4) for p in permutations((a1, a2, a3))}


def test_criterion_7_mutation():
    parts = []
    ok = True
    for model, quad in (
        (abelian_model(4), (1, 2, 3, 2)),
        (synthetic_model(random.Random(0)), ("1", "2", "3", "4")),
    ):
        a5 = model.p_classes(quad)[0]
        mutated = replace(model, product_factors={quad + (a5,): 2})
        rep = check_relations(mutated)
        failing = rep.failing_quadruples()
        hexagon = {r.relation for r in rep.failures()} & {"hexagon1", "hexagon2"}
        local = quad in failing and failing <= _orbit(quad)
        ok = ok and not rep.passed and bool(hexagon) and local
        untouched = len(model.quadruples()) - len(failing)
        parts.append(f"{model.name}: {len(failing)} failing quadruples, all in the orbit of {quad}; {untouched} untouched")
    record(7, ok, "; ".join(parts))
