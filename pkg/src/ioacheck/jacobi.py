"""Coefficient families of a correlator, the Jacobi identity, and its S3 orbit.

For a P-class combination Z of a quadruple the three families are read off
from three functions that the model provides independently:

* the product correlator of Z (preferred branch on R1),
* the product correlator of B(Z) with its variables exchanged, taken on the
  preferred branch of R2,
* the iterate correlator of F(Z) (preferred branch on R3).

Each is written as sum_alpha F_alpha * e_alpha with e_alpha the branched
monomial whose exponents lie in [0,1)^3, and the Jacobi identity is checked
for every alpha on the iota_12 / iota_21 / iota_20 expansions of the
coefficients.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .branched import chain_logs, chart_logs, mirror_point, reanchor, substitute_shift, swap_variables
from .gfunction import SWAP, GFunction
from .model import IOASpec, OperatorClassLabel, _sort_key
from .moore_seiberg import MatrixSet, RelationReport, build_all, check_relations
from .paths import DEFAULT_PARAMS, PathParams, Region, anchor_point, numeric_point
from .scalars import format_rational, inverse, scalar_to_json
from .series import PRODUCT_DELTA, REVERSED_DELTA, SHIFT_DELTA, CheckReport, DeltaExpression, RationalFn, _report, exponents, iota


class JacobiError(ValueError):
    """The three extracted families do not share their exponent classes."""


class PreconditionError(RuntimeError):
    pass


# ---------------------------------------------------------------- decomposition


@dataclass(frozen=True)
class CoefficientFunction:
    """F_alpha: the Laurent dressing of the class alpha, an integer-exponent GFunction."""

    alpha: tuple
    value: GFunction

    def as_rational(self) -> RationalFn:
        """F_alpha(x1, x2) as numerator / (x1^s x2^t (x1-x2)^r)."""
        ((_, (i, j, k, num)),) = self.value.classes() or [((0, 0, 0), (0, 0, 0, {}))]
        lift = {}
        for (a, b), c in num.items():
            lift[(a + max(i, 0), b + max(j, 0))] = c
        # multiply in (x1 - x2)^k for k > 0
        for _ in range(max(k, 0)):
            nxt: dict = {}
            for (a, b), c in lift.items():
                nxt[(a + 1, b)] = nxt.get((a + 1, b), 0) + c
                nxt[(a, b + 1)] = nxt.get((a, b + 1), 0) - c
            lift = nxt
        numerator = {exponents(x1=a, x2=b): c for (a, b), c in lift.items() if c != 0}
        return RationalFn.build(numerator, [({"x1": 1}, max(-i, 0)), ({"x2": 1}, max(-j, 0)), ({"x1": 1, "x2": -1}, max(-k, 0))])

    def to_json(self) -> dict:
        return {"alpha": [format_rational(a) for a in self.alpha], "value": self.value.to_json()}


def basis_decompose(g: GFunction) -> list[CoefficientFunction]:
    return [CoefficientFunction(rep, GFunction({(Fraction(0),) * 3: data})) for rep, data in g.classes()]


def recompose(parts: Iterable[CoefficientFunction]) -> GFunction:
    total = GFunction.zero()
    for cf in parts:
        total = total + cf.value * GFunction.term(cf.alpha)
    return total


# ---------------------------------------------------------------- instances


@dataclass
class JacobiInstance:
    quad: tuple
    source: tuple  # OperatorClassLabels, all P-classes of quad
    F: dict
    G: dict
    H: dict
    cutoff: int
    permutation: str = "123"
    phi: GFunction | None = None
    notes: list = field(default_factory=list)

    def alphas(self) -> list:
        return sorted(set(self.F) | set(self.G) | set(self.H))

    def describe_source(self) -> str:
        return " + ".join(f"{scalar_to_json(l.scalar)}*{l.kind}[{l.a5}]" for l in self.source) or "0"


def _combination(model: IOASpec, labels: Sequence[OperatorClassLabel], kind: str) -> GFunction:
    total = GFunction.zero()
    for lab in labels:
        total = total + (model.product_correlator(lab) if kind == "P" else model.iterate_correlator(lab))
    return total


def _family(g: GFunction) -> dict:
    return {cf.alpha: cf for cf in basis_decompose(g)}


def _braided_function(model: IOASpec, labels, ms: MatrixSet, params: PathParams) -> GFunction:
    """P-corr(B Z) evaluated at (z2, z1), expressed against the preferred logs of R2."""
    braided = ms.B.apply({l.key: l.scalar for l in labels})
    psi = _combination(model, _labels(braided), "P")
    q = mirror_point(params)
    p0 = anchor_point(params)
    return reanchor(psi, SWAP, chain_logs(Region.R1, p0, params), chain_logs(Region.R2, q, params), q)


def _iterate_function(model: IOASpec, labels, ms: MatrixSet, params: PathParams) -> GFunction:
    """I-corr(F Z) expressed against the preferred logs of R3 (chart logs at the anchor)."""
    fused = ms.F.apply({l.key: l.scalar for l in labels})
    psi = _combination(model, _labels(fused), "I")
    p0 = numeric_point(anchor_point(params))
    chart = chart_logs("20", p0)
    pref = chain_logs(Region.R3, p0, params)
    k = [(b - a) / (2j * 3.141592653589793) for a, b in zip(chart, pref)]
    ks = [round(x.real) for x in k]
    return psi.shift_branch(*(-n for n in ks))


def _labels(vec: dict) -> list[OperatorClassLabel]:
    return [OperatorClassLabel(k[0], k[1], k[2], v) for k, v in sorted(vec.items(), key=lambda kv: _sort_key(kv[0]))]


def _normalize_source(model, source) -> tuple:
    if isinstance(source, OperatorClassLabel):
        source = [source]
    labels = tuple(source)
    quads = {l.quad for l in labels}
    if len(quads) > 1:
        raise JacobiError("a source combination must live in one quadruple")
    for l in labels:
        if l.kind != "P":
            raise JacobiError("sources are P-classes")
    return labels


def extract_FGH(
    model: IOASpec,
    source,
    cutoff: int,
    matrices: MatrixSet | None = None,
    params: PathParams = DEFAULT_PARAMS,
    phi: GFunction | None = None,
    permutation: str = "123",
) -> JacobiInstance:
    """The three families for a P-class (or combination of P-classes of one quadruple).

    ``phi`` replaces the product correlator as the source of the F family;
    the transforms pass the function they constructed.
    """
    ms = matrices or build_all(model)
    labels = _normalize_source(model, source)
    quad = labels[0].quad if labels else None
    own = _combination(model, labels, "P")
    phi = own if phi is None else phi
    inst = JacobiInstance(
        quad,
        labels,
        _family(phi),
        _family(_braided_function(model, labels, ms, params)),
        _family(_iterate_function(model, labels, ms, params)),
        cutoff,
        permutation,
        phi,
    )
    if phi != own:
        inst.notes.append("constructed function differs from the product correlator of the source class")
    if not (set(inst.F) == set(inst.G) == set(inst.H)):
        raise JacobiError(f"quadruple {quad}: extracted families use different exponent classes")
    return inst


# ---------------------------------------------------------------- the check


@dataclass
class JacobiReport:
    quad: tuple
    permutation: str
    source: str
    passed: bool
    checks: list
    seconds: float = 0.0

    def first_failure(self) -> CheckReport | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self) -> dict:
        fail = self.first_failure()
        out = {
            "quadruple": list(map(str, self.quad)) if self.quad else [],
            "class": self.source,
            "permutation": self.permutation,
            "status": "pass" if self.passed else "fail",
            "detail": fail.detail if fail else f"{len(self.checks)} checks",
        }
        if fail and fail.counterexample:
            out["counterexample"] = fail.counterexample
        return out


def _key(f: GFunction) -> str:
    return json.dumps(f.to_json(), sort_keys=True)


@lru_cache(maxsize=4096)
def _expansion_check(fkey: str, gkey: str, hkey: str, cutoff: int) -> CheckReport:
    F, G, H = (CoefficientFunction((0, 0, 0), GFunction.from_json(json.loads(k))).as_rational() for k in (fkey, gkey, hkey))
    lhs = DeltaExpression.term(PRODUCT_DELTA, iota("12", F, cutoff)) - DeltaExpression.term(
        REVERSED_DELTA, iota("21", G, cutoff)
    )
    # x2^-1 d((x1-x0)/x2) equals x1^-1 d((x2+x0)/x1); the latter expands in
    # x0/x2 like iota_20, so truncation windows of the product stay certified
    rhs = DeltaExpression.term(SHIFT_DELTA, iota("20", H, cutoff))
    zero = F.is_zero() and G.is_zero() and H.is_zero()
    return _report("expansion", lhs.expand(cutoff).compare(rhs.expand(cutoff)), 0 if zero else 1)


def _scaled_keys(f: GFunction, g: GFunction, h: GFunction) -> tuple[str, str, str]:
    """Cache keys with a common scalar divided out; the identity is linear."""
    terms = f.monomials() or g.monomials() or h.monomials()
    if not terms:
        return _key(f), _key(g), _key(h)
    c = inverse(terms[0][1])
    return _key(f.scale(c)), _key(g.scale(c)), _key(h.scale(c))


def jacobi_check(inst: JacobiInstance) -> JacobiReport:
    """Closed-form agreement per alpha, then the delta expansions at the cutoff."""
    start = time.perf_counter()
    checks: list[CheckReport] = []
    zero = GFunction.zero()
    for alpha in inst.alphas():
        tag = "(" + ",".join(format_rational(a) for a in alpha) + ")"
        f = inst.F[alpha].value if alpha in inst.F else zero
        g = inst.G[alpha].value if alpha in inst.G else zero
        h = inst.H[alpha].value if alpha in inst.H else zero
        for name, other in (("G", g), ("H", h)):
            same = other == f
            checks.append(
                CheckReport(
                    f"closed-form F=={name} {tag}",
                    same,
                    1,
                    None if same else {"alpha": tag, "F": f.to_json(), name: other.to_json()},
                    "" if same else f"{name}_alpha differs from F_alpha",
                )
            )
        rep = _expansion_check(*_scaled_keys(f, g, h), inst.cutoff)
        checks.append(
            CheckReport(f"jacobi {tag}", rep.passed, rep.compared, {"alpha": tag, **(rep.counterexample or {})} if not rep.passed else None, rep.detail)
        )
    if not inst.alphas():
        checks.append(CheckReport("jacobi zero", True, 0, None, "all families are zero"))
    passed = all(c.passed for c in checks) and not inst.notes
    if inst.notes:
        checks.append(CheckReport("construction", False, 1, {"note": inst.notes[0]}, inst.notes[0]))
    return JacobiReport(inst.quad, inst.permutation, inst.describe_source(), passed, checks, time.perf_counter() - start)


# ---------------------------------------------------------------- S3 transforms


def _swap_perm(perm: str, i: int) -> str:
    p = list(perm)
    p[i], p[i + 1] = p[i + 1], p[i]
    return "".join(p)


def transform_swap12(
    model: IOASpec,
    source,
    cutoff: int,
    matrices: MatrixSet | None = None,
    phi: GFunction | None = None,
    params: PathParams = DEFAULT_PARAMS,
    permutation: str = "123",
) -> JacobiInstance:
    """Instance for the exchanged first two insertions.

    The new F family comes from phi(z2, z1) carried to R1 by continuation;
    the new source class is B(Z) and the G and H families come from B(B(Z))
    and F(B(Z)).
    """
    ms = matrices or build_all(model)
    labels = _normalize_source(model, source)
    phi = _combination(model, labels, "P") if phi is None else phi
    new = _labels(ms.B.apply({l.key: l.scalar for l in labels}))
    return extract_FGH(model, new, cutoff, ms, params, swap_variables(phi, params), _swap_perm(permutation, 0))


def transform_swap23(
    model: IOASpec,
    source,
    cutoff: int,
    matrices: MatrixSet | None = None,
    phi: GFunction | None = None,
    params: PathParams = DEFAULT_PARAMS,
    permutation: str = "123",
) -> JacobiInstance:
    """Instance for the exchanged last two insertions.

    The new F family comes from phi(z1 - z2, -z2) on the branch fixed where
    the shifted point is in R1; the new source class is Omega-tilde^(4)(Z).
    """
    ms = matrices or build_all(model)
    labels = _normalize_source(model, source)
    phi = _combination(model, labels, "P") if phi is None else phi
    new = _labels(ms.omega[(4, False)].apply({l.key: l.scalar for l in labels}))
    return extract_FGH(model, new, cutoff, ms, params, substitute_shift(phi, params), _swap_perm(permutation, 1))


@dataclass
class S3Report:
    model: str
    results: list  # JacobiReport

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def counts(self) -> tuple[int, int]:
        return sum(r.passed for r in self.results), len(self.results)

    def to_json(self) -> dict:
        ok, n = self.counts()
        return {"model": self.model, "passed": ok, "total": n, "results": [r.to_json() for r in self.results]}


def s3_orbit(model: IOASpec, label: OperatorClassLabel, cutoff: int, ms: MatrixSet, params: PathParams = DEFAULT_PARAMS):
    """Instances for all six orderings, reached from the base by (12) and (23) moves."""
    base = extract_FGH(model, [label], cutoff, ms, params)
    seen = {"123": base}
    queue = ["123"]
    while queue:
        perm = queue.pop(0)
        inst = seen[perm]
        for move in (transform_swap12, transform_swap23):
            nxt_perm = _swap_perm(perm, 0 if move is transform_swap12 else 1)
            if nxt_perm in seen:
                continue
            seen[nxt_perm] = move(model, inst.source, cutoff, ms, inst.phi, params, perm)
            queue.append(nxt_perm)
    return [seen[p] for p in sorted(seen)]


def verify_s3(
    model: IOASpec,
    quad,
    cutoff: int,
    matrices: MatrixSet | None = None,
    relations: RelationReport | None = None,
    params: PathParams = DEFAULT_PARAMS,
) -> S3Report:
    """All six orderings for every P-class of the quadruple; refuses models failing the relations."""
    ms = matrices or build_all(model)
    rel = relations or check_relations(model, ms)
    if not rel.passed:
        bad = rel.failures()[0]
        raise PreconditionError(f"relation {bad.relation} fails at {bad.quad}; the S3 check needs all relations")
    results = []
    for label in model.classes("P", tuple(quad)):
        try:
            orbit = s3_orbit(model, label, cutoff, ms, params)
        except JacobiError as exc:
            results.append(JacobiReport(tuple(quad), "123", f"P[{label.a5}]", False, [CheckReport("extract", False, 0, None, str(exc))]))
            continue
        for inst in orbit:
            rep = jacobi_check(inst)
            rep.source = f"P[{label.a5}] -> {inst.describe_source()}"
            results.append(rep)
    return S3Report(model.name, results)


def verify_s3_model(model: IOASpec, cutoff: int, quads=None, params: PathParams = DEFAULT_PARAMS) -> S3Report:
    ms = build_all(model)
    rel = check_relations(model, ms)
    out = S3Report(model.name, [])
    for quad in quads or model.quadruples():
        out.results.extend(verify_s3(model, quad, cutoff, ms, rel, params).results)
    return out


__all__ = [
    "CoefficientFunction",
    "JacobiError",
    "JacobiInstance",
    "JacobiReport",
    "PreconditionError",
    "S3Report",
    "basis_decompose",
    "extract_FGH",
    "jacobi_check",
    "recompose",
    "s3_orbit",
    "transform_swap12",
    "transform_swap23",
    "verify_s3",
    "verify_s3_model",
]
