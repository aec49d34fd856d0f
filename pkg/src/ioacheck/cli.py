"""The ``verify`` command: run verification suites and write a JSON report.

Exit codes: 0 all checks pass, 1 some check fails, 2 bad arguments or
model config, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .branch_checks import path_relation_checks, preferred_branch_checks
from .jacobi import JacobiError, extract_FGH, jacobi_check, transform_swap12, transform_swap23, verify_s3
from .model import IOASpec, ModelError, OperatorLabel, abelian_model, load_model, synthetic_model, validate_spec
from .moore_seiberg import FusingError, build_all, check_relations, kernel_rank_check
from .paths import DEFAULT_PARAMS, PathError, PathParams, build_gamma, build_sigma, certify_path, continue_along
from .scalars import DEFAULT_TOLERANCE, is_zero
from .series import CheckReport, random_rational_fn, verify_delta_identities, verify_delta_substitution, verify_prop_2_1

SUITES = ("formal", "paths", "branches", "moore-seiberg", "jacobi", "s3")
MODEL_SUITES = {"branches", "moore-seiberg", "jacobi", "s3"}
OMEGA_RS = (-2, -1, 0, 1)
RANDOM_FUNCTIONS = 20
KERNEL_CUTOFF = 8


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    suites: tuple
    model: str | None = None
    cutoff: int = 10
    mode: str = "exact"
    tolerance: float = DEFAULT_TOLERANCE
    tolerance_text: str = "1/1000000000"
    seed: int = 0
    report: str | None = None
    params: PathParams = DEFAULT_PARAMS
    dump_paths: str | None = None

    def echo(self) -> dict:
        return {
            "suites": list(self.suites),
            "model": self.model,
            "cutoff": self.cutoff,
            "mode": self.mode,
            "tolerance": self.tolerance_text if self.mode == "float" else None,
            "seed": self.seed,
            "path_params": [str(x) for x in self.params.as_tuple()],
        }


@dataclass
class Entry:
    suite: str
    check: CheckReport
    duration: float | None

    def to_json(self) -> dict:
        out = {"suite": self.suite, "name": self.check.name, "status": self.check.status, "duration": self.duration}
        out["detail"] = self.check.detail
        if self.check.counterexample is not None:
            out["counterexample"] = self.check.counterexample
        elif not self.check.passed:
            out["counterexample"] = {"suite": self.suite, "check": self.check.name}
        return out


@dataclass
class Run:
    config: RunConfig
    entries: list = field(default_factory=list)
    state: dict = field(default_factory=dict)

    def add(self, suite: str, checks, started: float) -> None:
        checks = list(checks)
        each = (time.perf_counter() - started) / max(len(checks), 1)
        for c in checks:
            self.entries.append(Entry(suite, c, None if self.config.mode == "exact" else round(each, 6)))

    @property
    def passed(self) -> bool:
        return all(e.check.passed for e in self.entries)

    def summary(self) -> dict:
        per: dict = {}
        for e in self.entries:
            ok, bad = per.get(e.suite, (0, 0))
            per[e.suite] = (ok + e.check.passed, bad + (not e.check.passed))
        return {
            "passed": sum(e.check.passed for e in self.entries),
            "failed": sum(not e.check.passed for e in self.entries),
            "total": len(self.entries),
            "suites": {s: {"passed": ok, "failed": bad} for s, (ok, bad) in per.items()},
        }

    def to_json(self) -> dict:
        return {
            "tool": {"name": "ioacheck", "version": __version__},
            "config": self.config.echo(),
            "checks": [e.to_json() for e in self.entries],
            "summary": self.summary(),
        }


# ---------------------------------------------------------------- suites


def suite_formal(run: Run) -> None:
    cfg = run.config
    t = time.perf_counter()
    checks = [c for c in verify_delta_identities(cfg.cutoff)]
    checks.append(verify_delta_substitution({-2: 3, 0: -1, 1: Fraction(1, 2), 3: 2}, "x", cfg.cutoff))
    rng = random.Random(cfg.seed)
    for k in range(RANDOM_FUNCTIONS):
        f = random_rational_fn(rng, max_degree=4, max_pole=3)
        for rep in verify_prop_2_1(f, cfg.cutoff):
            rep.name = f"iota-delta {rep.name} f{k}"
            checks.append(rep)
    run.add("formal", checks, t)


def suite_paths(run: Run) -> None:
    cfg = run.config
    t = time.perf_counter()
    checks = []
    for path in (build_gamma(cfg.params), build_sigma(cfg.params)):
        cert = certify_path(path)
        checks.append(
            CheckReport(
                f"certify {path.name}",
                cert.passed,
                cert.samples,
                None if cert.passed else cert.to_json(),
                f"clearance {cert.clearance:.6g} in {cert.ambient}" if cert.passed else cert.detail,
            )
        )
        for cond in cert.conditions:
            ok = cond["status"] == "pass"
            checks.append(CheckReport(f"contain {path.name} {cond['t']} {cond['region']}", ok, 1, None if ok else cond, ""))
        cont = continue_along(path, certified=cert if cert.passed else None) if cert.passed else continue_along(path)
        w = cont.winding.as_tuple() if cont.winding else None
        ok = w == (0, 0, 0)
        checks.append(CheckReport(f"winding {path.name}", ok, 3, None if ok else {"winding": w}, f"winding {w}"))
        if cfg.dump_paths:
            out = Path(cfg.dump_paths)
            out.mkdir(parents=True, exist_ok=True)
            path.write_csv(out / f"{path.name}.csv")
    run.add("paths", checks, t)


def suite_branches(run: Run, model: IOASpec) -> None:
    cfg = run.config
    t = time.perf_counter()
    ms = _matrices(run, model)
    if ms is None:
        run.add("branches", [_skip("branches", "matrices could not be built")], t)
        return
    checks = preferred_branch_checks(model, cfg.mode, cfg.tolerance, 10, cfg.seed, ms, cfg.params)
    checks += path_relation_checks(model, cfg.mode, cfg.tolerance, 10, cfg.seed, ms, cfg.params)
    run.add("branches", checks, t)


def _skip(suite: str, why: str) -> CheckReport:
    return CheckReport(f"{suite} precondition", False, 0, {"reason": why}, why)


def _matrices(run: Run, model: IOASpec):
    if "matrices" not in run.state:
        try:
            run.state["matrices"] = build_all(model)
            run.state["matrix_error"] = None
        except FusingError as exc:
            run.state["matrices"] = None
            run.state["matrix_error"] = exc
    return run.state["matrices"]


def suite_moore_seiberg(run: Run, model: IOASpec) -> None:
    t = time.perf_counter()
    checks = []
    val = validate_spec(model)
    run.state["valid"] = val.passed
    checks.append(
        CheckReport(
            "validate model",
            val.passed,
            len(model.operators),
            None if val.passed else val.to_json(),
            f"{len(val.violations)} violations" if val.violations else "ok",
        )
    )
    checks.append(_omega_involution(model))
    ms = _matrices(run, model)
    if ms is None:
        exc = run.state["matrix_error"]
        checks.append(CheckReport("fusing", False, 0, {"quadruple": list(map(str, exc.quad))}, str(exc)))
        run.state["relations"] = None
        run.add("moore-seiberg", checks, t)
        return
    checks.append(_merge_named("kernel rank", kernel_rank_check(model, KERNEL_CUTOFF)))
    rel = check_relations(model, ms)
    run.state["relations"] = rel
    for name, (ok, n) in rel.by_relation().items():
        bad = [r for r in rel.failures() if r.relation == name]
        cex = None
        if bad:
            cex = {"quadruples": [list(map(str, r.quad)) for r in bad], "first": bad[0].counterexample}
        checks.append(CheckReport(f"relation {name}", ok, n, cex, f"{n} quadruples" if ok else f"{len(bad)} of {n} quadruples fail"))
    run.add("moore-seiberg", checks, t)


def _omega_involution(model: IOASpec) -> CheckReport:
    n = 0
    for (a, b, c) in model.operators:
        for r in OMEGA_RS:
            op = OperatorLabel(a, b, c, 1)
            back = model.omega_apply(-r - 1, model.omega_apply(r, op))
            n += 1
            if back.key != op.key or not is_zero(back.scalar - 1):
                return CheckReport("omega involution", False, n, {"operator": [str(a), str(b), str(c)], "r": r}, "")
    return CheckReport("omega involution", True, n, None, f"{n} operator/r pairs")


def _merge_named(name: str, reps: list[CheckReport]) -> CheckReport:
    bad = [r for r in reps if not r.passed]
    if bad:
        return CheckReport(name, False, len(reps), bad[0].counterexample, f"{len(bad)} of {len(reps)} fail; first {bad[0].name}")
    return CheckReport(name, True, len(reps), None, f"{len(reps)} checks")


def suite_jacobi(run: Run, model: IOASpec) -> None:
    cfg = run.config
    t = time.perf_counter()
    ms = _matrices(run, model)
    if ms is None:
        run.add("jacobi", [_skip("jacobi", "matrices could not be built")], t)
        return
    checks = []
    for quad in model.quadruples():
        for label in model.classes("P", quad):
            tag = "P(" + ",".join(map(str, quad)) + f";{label.a5})"
            try:
                base = extract_FGH(model, [label], cfg.cutoff, ms, cfg.params)
            except JacobiError as exc:
                checks.append(CheckReport(f"jacobi {tag}", False, 0, {"class": tag}, str(exc)))
                continue
            checks.append(_from_jacobi(f"jacobi {tag}", jacobi_check(base)))
            for name, move in (("(12)(12)", transform_swap12), ("(23)(23)", transform_swap23)):
                try:
                    once = move(model, base.source, cfg.cutoff, ms, base.phi, cfg.params)
                    twice = move(model, once.source, cfg.cutoff, ms, once.phi, cfg.params, once.permutation)
                    checks.append(_from_jacobi(f"jacobi {name} {tag}", jacobi_check(twice)))
                except JacobiError as exc:
                    checks.append(CheckReport(f"jacobi {name} {tag}", False, 0, {"class": tag, "moves": name}, str(exc)))
    run.add("jacobi", checks, t)


def _from_jacobi(name: str, rep) -> CheckReport:
    fail = rep.first_failure()
    n = sum(c.compared for c in rep.checks)
    if fail is None:
        return CheckReport(name, True, n, None, f"{len(rep.checks)} checks")
    where = {"quadruple": [str(c) for c in rep.quad or ()], "permutation": rep.permutation, "check": fail.name}
    return CheckReport(name, False, n, {**where, **(fail.counterexample or {})}, fail.detail)


def suite_s3(run: Run, model: IOASpec) -> None:
    cfg = run.config
    t = time.perf_counter()
    ms = _matrices(run, model)
    rel = run.state.get("relations") if "relations" in run.state else (check_relations(model, ms) if ms else None)
    if ms is None or rel is None or not rel.passed:
        run.add("s3", [_skip("s3", "Moore-Seiberg relations do not hold")], t)
        return
    checks = []
    for quad in model.quadruples():
        report = verify_s3(model, quad, cfg.cutoff, ms, rel, cfg.params)
        for r in report.results:
            checks.append(_from_jacobi(f"s3 {r.permutation} " + ",".join(map(str, quad)) + f" {r.source}", r))
    run.add("s3", checks, t)


# ---------------------------------------------------------------- plumbing


def resolve_model(spec: str) -> IOASpec:
    """A config path, or a built-in: abelian:N or synthetic:SEED[:CHANNELS]."""
    if spec.startswith("abelian:"):
        return abelian_model(int(spec.split(":", 1)[1]))
    if spec.startswith("synthetic:"):
        parts = spec.split(":")
        channels = int(parts[2]) if len(parts) > 2 else None
        return synthetic_model(random.Random(int(parts[1])), channels, name=spec)
    return load_model(spec)


def parse_args(argv) -> RunConfig:
    parser = argparse.ArgumentParser(prog="verify", description="Run exact verification suites on an intertwining operator algebra model.")
    parser.add_argument("--suites", default=None, help=f"comma-separated subset of {','.join(SUITES)}")
    parser.add_argument("--model", default=None, help="model config JSON, or abelian:N / synthetic:SEED[:CHANNELS]")
    parser.add_argument("--cutoff", type=int, default=10)
    parser.add_argument("--mode", choices=("exact", "float"), default="exact")
    parser.add_argument("--tolerance", default="1e-9", help="float-mode tolerance, as a decimal or p/q")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--report", default=None, help="write the JSON report here ('-' for stdout)")
    parser.add_argument("--path-params", default=None, help="a0,b0,a1,b1,a2,b2,a3,b3")
    parser.add_argument("--dump-paths", default=None, help="directory for sampled path CSVs")
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        if not exc.code:
            raise
        raise UsageError("bad arguments") from exc

    if ns.suites:
        suites = tuple(s.strip() for s in ns.suites.split(",") if s.strip())
        unknown = [s for s in suites if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suites: {', '.join(unknown)}")
    else:
        suites = SUITES if ns.model else ("formal", "paths")
    suites = tuple(s for s in SUITES if s in suites)
    if ns.cutoff < 1:
        raise UsageError("cutoff must be at least 1")
    try:
        tol = Fraction(ns.tolerance)
    except ValueError:
        raise UsageError(f"tolerance {ns.tolerance!r} is not a number") from None
    if tol <= 0:
        raise UsageError("tolerance must be positive")
    try:
        params = PathParams.parse(ns.path_params).validate() if ns.path_params else DEFAULT_PARAMS
    except (PathError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if MODEL_SUITES & set(suites) and not ns.model:
        raise ModelError(f"suites {sorted(MODEL_SUITES & set(suites))} need --model")
    return RunConfig(suites, ns.model, ns.cutoff, ns.mode, float(tol), str(ns.tolerance), ns.seed, ns.report, params, ns.dump_paths)


def run(cfg: RunConfig) -> Run:
    out = Run(cfg)
    model = resolve_model(cfg.model) if cfg.model else None
    for suite in cfg.suites:
        if suite == "formal":
            suite_formal(out)
        elif suite == "paths":
            suite_paths(out)
        elif suite == "branches":
            suite_branches(out, model)
        elif suite == "moore-seiberg":
            suite_moore_seiberg(out, model)
        elif suite == "jacobi":
            suite_jacobi(out, model)
        elif suite == "s3":
            suite_s3(out, model)
    return out


def write_report(result: Run, target: str | None) -> None:
    text = json.dumps(result.to_json(), indent=2, sort_keys=True) + "\n"
    if target == "-":
        sys.stdout.write(text)
    elif target:
        Path(target).write_text(text)


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
        result = run(cfg)
    except (UsageError, ModelError) as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    except Exception:  # noqa: BLE001
        traceback.print_exc()
        return 3
    write_report(result, cfg.report)
    if cfg.report != "-":
        s = result.summary()
        for suite, counts in s["suites"].items():
            print(f"{suite:14s} {counts['passed']:6d} pass {counts['failed']:4d} fail")
        print(f"{'total':14s} {s['passed']:6d} pass {s['failed']:4d} fail  (seed {cfg.seed})")
    return 0 if result.passed else 1


if __name__ == "__main__":
    sys.exit(main())
