"""Desk-scale intertwining operator algebra instances.

Intertwining operators are represented only through their matrix
coefficients between lowest-weight vectors.  An operator of type
(a, b -> c) is a basis operator Y(a, b, c) normalized so that its two-point
function is ``constant(a, b, c) * x^q`` where q = h_c - h_a - h_b up to an
integer fixed by the model.

A quadruple (a1, a2, a3, a4) carries P-classes [Y(a1,a5,a4) (x) Y(a2,a3,a5)]_P
and I-classes [Y(a1,a2,a5) (x) Y(a5,a3,a4)]_I.  Their correlators are
GFunctions in (z1, z2); product correlators use the R1 branch at the anchor,
iterate correlators the R3 branch (both principal at the anchor).

Two families are provided:

* ``abelian_model(N)``: colors Z/N, q(a,b) = kappa*a*b on representatives
  0..N-1, one class per quadruple on each side.
* ``synthetic_model(rng)``: four colors plus up to five channels of
  intermediate colors; correlators are prod (w_i - w_j)^e_ij times a Laurent
  dressing in the differences.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import permutations
from pathlib import Path
from typing import Any, Callable, Hashable, Iterable, Mapping

from .gfunction import GFunction
from .scalars import (
    ScalarError,
    inverse,
    is_zero,
    parse_rational,
    root_of_unity,
    scalar_from_json,
    scalar_to_json,
    simplify,
)

Color = Hashable
Quad = tuple


class ModelError(ValueError):
    """Malformed model configuration or a request outside the model."""


@dataclass(frozen=True)
class OperatorLabel:
    """scalar * Y(a, b, c): an intertwining operator of type (a, b -> c)."""

    a: Color
    b: Color
    c: Color
    scalar: Any = 1

    @property
    def key(self) -> tuple:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class OperatorClassLabel:
    """scalar times the class P(quad, a5) or I(quad, a5)."""

    kind: str
    quad: Quad
    a5: Color
    scalar: Any = 1

    def __post_init__(self):
        if self.kind not in ("P", "I"):
            raise ModelError(f"class kind must be 'P' or 'I', not {self.kind!r}")
        if len(self.quad) != 4:
            raise ModelError(f"quadruple must have four colors, got {self.quad!r}")

    @property
    def key(self) -> tuple:
        return (self.kind, tuple(self.quad), self.a5)

    def operators(self) -> tuple[tuple, tuple]:
        """Types of the two operators in the tensor product, outer first for P."""
        a1, a2, a3, a4 = self.quad
        if self.kind == "P":
            return (a1, self.a5, a4), (a2, a3, self.a5)
        return (a1, a2, self.a5), (self.a5, a3, a4)

    def with_scalar(self, scalar) -> "OperatorClassLabel":
        return replace(self, scalar=scalar)


@dataclass(frozen=True)
class Violation:
    rule: str
    where: str
    detail: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "where": self.where, "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"passed": self.passed, "violations": [v.to_json() for v in self.violations]}


@dataclass
class IOASpec:
    """A model: colors, weights, operators and per-quadruple correlator templates.

    ``operators`` maps (a, b, c) to (two-point exponent, constant).
    ``p_templates[quad][a5]`` and ``i_templates[quad][a5]`` are the
    correlators with both structure constants set to 1.
    ``product_factors`` multiplies individual P-correlators; it exists to
    build deliberately inconsistent models.
    """

    name: str
    colors: tuple
    identity: Color
    weights: dict
    operators: dict
    p_templates: dict
    i_templates: dict
    product_factors: dict = field(default_factory=dict)
    source: dict = field(default_factory=dict)

    # -- lookup

    def quadruples(self) -> list[Quad]:
        return sorted(set(self.p_templates) | set(self.i_templates), key=_sort_key)

    def p_classes(self, quad: Quad) -> list[Color]:
        return sorted(self.p_templates.get(tuple(quad), {}), key=_sort_key)

    def i_classes(self, quad: Quad) -> list[Color]:
        return sorted(self.i_templates.get(tuple(quad), {}), key=_sort_key)

    def classes(self, kind: str, quad: Quad) -> list[OperatorClassLabel]:
        colors = self.p_classes(quad) if kind == "P" else self.i_classes(quad)
        return [OperatorClassLabel(kind, tuple(quad), a5) for a5 in colors]

    def constant(self, a, b, c):
        try:
            return self.operators[(a, b, c)][1]
        except KeyError:
            raise ModelError(f"no operator of type ({a}, {b} -> {c})") from None

    def two_point(self, a, b, c) -> GFunction:
        """<c', Y(a,b,c)(w_a, x) w_b> as a function of x (carried by z1)."""
        try:
            q, const = self.operators[(a, b, c)]
        except KeyError:
            raise ModelError(f"no operator of type ({a}, {b} -> {c})") from None
        return GFunction.term((q, 0, 0), const)

    # -- correlators

    def product_correlator(self, label: OperatorClassLabel) -> GFunction:
        if label.kind != "P":
            raise ModelError("product_correlator needs a P-class")
        quad = tuple(label.quad)
        try:
            template = self.p_templates[quad][label.a5]
        except KeyError:
            raise ModelError(f"no P-class with intermediate {label.a5} for quadruple {quad}") from None
        (o1, o2) = label.operators()
        factor = self.product_factors.get(quad + (label.a5,), 1)
        scalar = self.constant(*o1) * self.constant(*o2) * factor * label.scalar
        return template.scale(simplify(scalar))

    def iterate_correlator(self, label: OperatorClassLabel) -> GFunction:
        if label.kind != "I":
            raise ModelError("iterate_correlator needs an I-class")
        quad = tuple(label.quad)
        try:
            template = self.i_templates[quad][label.a5]
        except KeyError:
            raise ModelError(f"no I-class with intermediate {label.a5} for quadruple {quad}") from None
        (o1, o2) = label.operators()
        scalar = self.constant(*o1) * self.constant(*o2) * label.scalar
        return template.scale(simplify(scalar))

    def correlator(self, label: OperatorClassLabel) -> GFunction:
        return self.product_correlator(label) if label.kind == "P" else self.iterate_correlator(label)

    # -- Omega

    def omega_scalar(self, r: int, a, b, c):
        """s with Omega_r(Y(a,b,c)) = s * Y(b,a,c).

        Omega_r(Y)(w_b, x) w_a = e^{x L(-1)} Y(w_a, e^{(2r+1) pi i} x) w_b; on
        lowest-weight vectors e^{x L(-1)} drops out, so the two-point
        function of the image is that of Y with x^q replaced by
        e^{(2r+1) pi i q} x^q.
        """
        (rep, (i, _, _, num)), = self.two_point(a, b, c).classes()
        q = rep[0] + i
        const = num[(0, 0)]
        target = self.constant(b, a, c)
        return simplify(const * inverse(target) * root_of_unity(Fraction(2 * r + 1, 2) * q))

    def omega_apply(self, r: int, op: OperatorLabel) -> OperatorLabel:
        if is_zero(op.scalar):
            return OperatorLabel(op.b, op.a, op.c, op.scalar)
        return OperatorLabel(op.b, op.a, op.c, simplify(op.scalar * self.omega_scalar(r, op.a, op.b, op.c)))

    # -- serialization

    def to_json(self) -> dict:
        return dict(self.source)


def _sort_key(x):
    if isinstance(x, tuple):
        return tuple(_sort_key(y) for y in x)
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


# ---------------------------------------------------------------- validation


def validate_spec(spec: IOASpec) -> ValidationReport:
    """Identity axiom, weight condition and exponent-class distinctness."""
    out: list[Violation] = []
    h = spec.weights
    e = spec.identity

    for (a, b, c), (q, _) in sorted(spec.operators.items(), key=lambda kv: _sort_key(kv[0])):
        where = f"({a},{b},{c})"
        if a == e and b != c:
            out.append(Violation("identity-axiom", where, f"operator from {e} maps {b} to {c}"))
        if (q - (h[c] - h[a] - h[b])).denominator != 1:
            out.append(Violation("weight-condition", where, f"two-point exponent {q} not in h_c-h_a-h_b+Z"))

    for quad in spec.quadruples():
        a1, a2, a3, a4 = quad
        where = "(" + ",".join(map(str, quad)) + ")"
        seen: dict = {}
        for a5, g in spec.p_templates.get(quad, {}).items():
            for rep in g.class_reps():
                if (rep[1] - (h[a5] - h[a2] - h[a3])).denominator != 1 or (
                    rep[0] + rep[2] - (h[a4] - h[a1] - h[a5])
                ).denominator != 1:
                    out.append(Violation("weight-condition", where, f"P-class {a5} exponent class {_fmt(rep)}"))
                if rep in seen:
                    out.append(Violation("class-collision", where, f"P-classes {seen[rep]} and {a5} share {_fmt(rep)}"))
                seen[rep] = a5
        seen = {}
        for a5, g in spec.i_templates.get(quad, {}).items():
            for rep in g.class_reps():
                if (rep[2] - (h[a5] - h[a1] - h[a2])).denominator != 1 or (
                    rep[0] + rep[1] - (h[a4] - h[a5] - h[a3])
                ).denominator != 1:
                    out.append(Violation("weight-condition", where, f"I-class {a5} exponent class {_fmt(rep)}"))
                if rep in seen:
                    out.append(Violation("class-collision", where, f"I-classes {seen[rep]} and {a5} share {_fmt(rep)}"))
                seen[rep] = a5
    return ValidationReport(tuple(out))


def _fmt(rep) -> str:
    return "(" + ",".join(str(x) for x in rep) + ")"


# ---------------------------------------------------------------- abelian models


def default_kappa(n: int) -> Fraction:
    """1/N for even N, 2/N for odd N: the smallest form with integral N*kappa and N^2*kappa/2."""
    return Fraction(1, n) if n % 2 == 0 else Fraction(2, n)


def abelian_model(
    n: int,
    kappa=None,
    constants: Mapping | None = None,
    product_factors: Mapping | None = None,
    weights: Mapping | None = None,
) -> IOASpec:
    """Z/N model with q(a,b) = kappa*a*b on representatives 0..N-1.

    The product correlator carries the cocycle (-1)^{kappa N a1 [a2+a3 >= N]},
    which is what makes the correlators of the three orderings consistent
    when a2 + a3 wraps around.
    """
    if n < 1:
        raise ModelError("N must be positive")
    kappa = default_kappa(n) if kappa is None else Fraction(kappa)
    if (kappa * n).denominator != 1 or (kappa * n * n / 2).denominator != 1:
        raise ModelError(f"kappa {kappa} is not well defined on Z/{n}")
    colors = tuple(range(n))
    h = {a: kappa * a * a / 2 for a in colors}
    if weights:
        h.update({a: Fraction(w) for a, w in weights.items()})
    consts = dict(constants or {})

    def q(a, b):
        return kappa * a * b

    ops = {}
    for a in colors:
        for b in colors:
            c = (a + b) % n
            ops[(a, b, c)] = (q(a, b), consts.get((a, b, c), 1))

    p_t, i_t = {}, {}
    for a1 in colors:
        for a2 in colors:
            for a3 in colors:
                a4 = (a1 + a2 + a3) % n
                quad = (a1, a2, a3, a4)
                mono = GFunction.term((q(a1, a3), q(a2, a3), q(a1, a2)))
                wrap = 1 if a2 + a3 >= n else 0
                cocycle = root_of_unity(-kappa * n * a1 * wrap / 2)
                p_t[quad] = {(a2 + a3) % n: mono.scale(simplify(cocycle))}
                i_t[quad] = {(a1 + a2) % n: mono}

    factors = {}
    for key, v in (product_factors or {}).items():
        key = tuple(key)
        if len(key) == 4:
            key = key + ((key[1] + key[2]) % n,)
        factors[key] = v

    source: dict = {"colors": n, "form": {"(1,1)": _fr(kappa)}}
    if weights:
        source["weights"] = {str(a): _fr(w) for a, w in sorted(h.items())}
    if consts or factors:
        source["constants"] = {}
        for key, v in sorted(consts.items()):
            source["constants"][_tuple_key(key)] = scalar_to_json(v)
        for key, v in sorted(factors.items()):
            source["constants"][_tuple_key(key)] = scalar_to_json(v)
    return IOASpec(f"abelian-{n}", colors, 0, h, ops, p_t, i_t, factors, source)


def _fr(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _tuple_key(key) -> str:
    return "(" + ",".join(str(k) for k in key) + ")"


# ---------------------------------------------------------------- synthetic models

OUTER = ("1", "2", "3")
TOP = "4"
PAIRS = (("1", "2"), ("1", "3"), ("2", "3"))


@dataclass(frozen=True)
class Channel:
    """One family of intermediate colors c12_j, c13_j, c23_j.

    ``exponents`` maps a pair such as ("1","2") to e_12; ``dressing`` is a
    list of ((n12, n13, n23), coeff) for coeff * prod (w_i - w_j)^n_ij.
    """

    index: int
    exponents: dict
    dressing: tuple

    def intermediate(self, i, j) -> str:
        i, j = sorted((i, j))
        return f"c{i}{j}_{self.index}"

    def exponent(self, i, j) -> Fraction:
        return self.exponents[tuple(sorted((i, j)))]


def _pair_form(pos: dict, i, j) -> tuple[int, int]:
    """w_i - w_j as (slot, sign) among z1, z2, z1-z2, for positions in {z1, z2, 0}."""
    vec = {"z1": (1, 0), "z2": (0, 1), "0": (0, 0)}
    a = vec[pos[i]]
    b = vec[pos[j]]
    d = (a[0] - b[0], a[1] - b[1])
    for slot, form in enumerate(((1, 0), (0, 1), (1, -1))):
        if d == form:
            return slot, 1
        if d == (-form[0], -form[1]):
            return slot, -1
    raise ModelError(f"positions {pos} do not give a singular form for ({i},{j})")


def channel_function(ch: Channel, order: tuple) -> GFunction:
    """prod_{pairs} (w_i - w_j)^e_ij * dressing at w_order[0]=z1, w_order[1]=z2, w_order[2]=0.

    The branched part is oriented along the ordering, so it reads
    z1^{e(a1,a3)} z2^{e(a2,a3)} (z1-z2)^{e(a1,a2)} with no sign ambiguity.
    """
    a1, a2, a3 = order
    pos = {a1: "z1", a2: "z2", a3: "0"}
    base = GFunction.term((ch.exponent(a1, a3), ch.exponent(a2, a3), ch.exponent(a1, a2)))
    dressing = GFunction.zero()
    for ns, coeff in ch.dressing:
        exps = [0, 0, 0]
        sign = 1
        for (i, j), n in zip(PAIRS, ns):
            slot, s = _pair_form(pos, i, j)
            exps[slot] += n
            sign *= s ** (n % 2)
        dressing = dressing + GFunction.term(exps, coeff * sign)
    return base * dressing


def synthetic_from_channels(
    channels: Iterable[Channel],
    constants: Mapping,
    include_identity: bool = True,
    product_factors: Mapping | None = None,
    name: str = "synthetic",
) -> IOASpec:
    channels = tuple(channels)
    colors = list(OUTER) + [TOP]
    if include_identity:
        colors.append("e")
    h: dict = {c: Fraction(0) for c in colors}
    ops: dict = {}

    def put(a, b, c, q):
        ops[(a, b, c)] = (Fraction(q), constants.get((a, b, c), 1))

    for ch in channels:
        for i, j in PAIRS:
            c = ch.intermediate(i, j)
            e = ch.exponent(i, j)
            colors.append(c)
            h[c] = e % 1
            (k,) = [x for x in OUTER if x not in (i, j)]
            put(i, j, c, e)
            put(j, i, c, e)
            put(k, c, TOP, ch.exponent(i, k) + ch.exponent(j, k))
            put(c, k, TOP, ch.exponent(i, k) + ch.exponent(j, k))

    p_t: dict = {}
    i_t: dict = {}
    for order in permutations(OUTER):
        quad = order + (TOP,)
        p_t[quad] = {}
        i_t[quad] = {}
        for ch in channels:
            g = channel_function(ch, order)
            p_t[quad][ch.intermediate(order[1], order[2])] = g
            i_t[quad][ch.intermediate(order[0], order[1])] = g

    factors = {}
    for key, v in (product_factors or {}).items():
        key = tuple(key)
        if len(key) == 4:
            for a5 in p_t.get(key, {}):
                factors[key + (a5,)] = v
        else:
            factors[key] = v

    source = {
        "colors": list(colors),
        "weights": {c: _fr(w) for c, w in h.items()},
        "constants": {_tuple_key(k): scalar_to_json(v[1]) for k, v in ops.items() if v[1] != 1},
        "synthetic_correlators": [
            {
                "channel": ch.index,
                "exponents": {i + j: _fr(ch.exponents[(i, j)]) for i, j in PAIRS},
                "dressing": [
                    {"d12": ns[0], "d13": ns[1], "d23": ns[2], "coeff": scalar_to_json(c)} for ns, c in ch.dressing
                ],
            }
            for ch in channels
        ],
    }
    for key, v in factors.items():
        source["constants"][_tuple_key(key)] = scalar_to_json(v)
    return IOASpec(name, tuple(colors), "e" if include_identity else None, h, ops, p_t, i_t, factors, source)


def synthetic_model(
    rng: random.Random,
    channels: int | None = None,
    max_degree: int = 3,
    cyclotomic: bool = True,
    name: str = "synthetic",
) -> IOASpec:
    """A random consistent synthetic model with up to five exponent classes.

    Each channel picks a denominator d | 12 and exponents e12, e13 in (1/d)Z,
    with e23 = -e12 - e13 mod 1 so the weight condition holds with h = 0 on
    the outer colors.  Channels with the same exponent classes are redrawn.
    """
    k = rng.randint(1, 5) if channels is None else channels
    if not 1 <= k <= 5:
        raise ModelError("synthetic models have between one and five channels")
    chans: list[Channel] = []
    used = set()
    while len(chans) < k:
        d = rng.choice((1, 2, 3, 4, 6, 12))
        e12 = Fraction(rng.randrange(d), d)
        e13 = Fraction(rng.randrange(d), d)
        e23 = (-e12 - e13) % 1
        if (e12, e13, e23) in used:
            continue
        used.add((e12, e13, e23))
        terms = {}
        for _ in range(rng.randint(1, 3)):
            while True:
                ns = tuple(rng.randint(-2, 2) for _ in range(3))
                if sum(abs(n) for n in ns) <= max_degree:
                    break
            terms[ns] = terms.get(ns, 0) + Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.choice((1, 1, 2, 3)))
        dressing = tuple((ns, c) for ns, c in sorted(terms.items()) if c != 0) or (((0, 0, 0), Fraction(1)),)
        chans.append(Channel(len(chans), {("1", "2"): e12, ("1", "3"): e13, ("2", "3"): e23}, dressing))

    consts: dict = {}
    skeleton = synthetic_from_channels(chans, {})
    for key in sorted(skeleton.operators, key=_sort_key):
        scale = Fraction(rng.choice((1, 1, 2, 3)), rng.choice((1, 1, 2)))
        value = root_of_unity(Fraction(rng.randrange(24), 24)) * scale if cyclotomic else scale
        consts[key] = simplify(value)
    return synthetic_from_channels(chans, consts, name=name)


def trivial_model() -> IOASpec:
    """A single color e: one class per side with constant correlators."""
    return abelian_model(1)


# ---------------------------------------------------------------- config files

_KEYS = {"colors", "weights", "form", "constants", "synthetic_correlators", "name"}
_TUPLE = re.compile(r"^\(\s*([^()]*)\)$")


def _parse_tuple(text: str, lookup: Callable[[str], Color]) -> tuple:
    m = _TUPLE.match(text.strip())
    if not m:
        raise ModelError(f"expected a key like '(a,b)', got {text!r}")
    return tuple(lookup(t.strip()) for t in m.group(1).split(","))


def model_from_json(data: Any) -> IOASpec:
    """Build a model from a parsed config; raises ModelError on schema violations."""
    if not isinstance(data, dict):
        raise ModelError("model config must be a JSON object")
    extra = set(data) - _KEYS
    if extra:
        raise ModelError(f"unknown model keys: {sorted(extra)}")
    if "colors" not in data:
        raise ModelError("model config needs 'colors'")
    colors = data["colors"]
    try:
        if isinstance(colors, int) and not isinstance(colors, bool):
            return _abelian_from_json(colors, data)
        if isinstance(colors, list) and all(isinstance(c, str) for c in colors):
            return _synthetic_from_json(colors, data)
    except (ScalarError, ValueError, TypeError, KeyError) as exc:
        if isinstance(exc, ModelError):
            raise
        raise ModelError(f"bad model config: {exc}") from exc
    raise ModelError("'colors' must be an integer N or a list of labels")


def _abelian_from_json(n: int, data: dict) -> IOASpec:
    if data.get("synthetic_correlators"):
        raise ModelError("abelian models take no synthetic_correlators")

    def lookup(tok: str) -> int:
        v = int(tok)
        if not 0 <= v < n:
            raise ModelError(f"color {v} is outside Z/{n}")
        return v

    kappa = None
    form = data.get("form") or {}
    for key, val in form.items():
        a, b = _parse_tuple(key, lookup)
        value = parse_rational(val)
        if a * b == 0:
            continue
        k = value / (a * b)
        if kappa is not None and k != kappa:
            raise ModelError("form entries are not a multiple of a*b")
        kappa = k
    consts, factors = {}, {}
    for key, val in (data.get("constants") or {}).items():
        t = _parse_tuple(key, lookup)
        if len(t) == 3:
            consts[t] = scalar_from_json(val)
        elif len(t) in (4, 5):
            factors[t] = scalar_from_json(val)
        else:
            raise ModelError(f"constant key {key!r} must name an operator or a class")
    weights = {lookup(k): parse_rational(v) for k, v in (data.get("weights") or {}).items()}
    spec = abelian_model(n, kappa, consts, factors, weights or None)
    if data.get("name"):
        spec.name = str(data["name"])
    return spec


def _synthetic_from_json(colors: list, data: dict) -> IOASpec:
    entries = data.get("synthetic_correlators")
    if not entries:
        raise ModelError("a labelled color list needs synthetic_correlators")
    known = set(colors)
    chans = []
    for entry in entries:
        ex = entry["exponents"]
        exps = {(p[0], p[1]): parse_rational(ex[p[0] + p[1]]) for p in PAIRS}
        if (sum(exps.values())).denominator != 1:
            raise ModelError(f"channel {entry.get('channel')}: exponents must sum to an integer")
        dressing = tuple(
            ((int(t["d12"]), int(t["d13"]), int(t["d23"])), scalar_from_json(t["coeff"]))
            for t in entry.get("dressing", [{"d12": 0, "d13": 0, "d23": 0, "coeff": "1"}])
        )
        chans.append(Channel(int(entry["channel"]), exps, dressing))

    def lookup(tok: str) -> str:
        if tok not in known:
            raise ModelError(f"unknown color {tok!r}")
        return tok

    consts, factors = {}, {}
    for key, val in (data.get("constants") or {}).items():
        t = _parse_tuple(key, lookup)
        (consts if len(t) == 3 else factors)[t] = scalar_from_json(val)
    spec = synthetic_from_channels(chans, consts, "e" in known, factors, name=str(data.get("name", "synthetic")))
    missing = set(spec.colors) - known
    if missing:
        raise ModelError(f"colors list is missing {sorted(missing)}")
    for c, w in (data.get("weights") or {}).items():
        spec.weights[lookup(c)] = parse_rational(w)
    return spec


def load_model(path: str | Path) -> IOASpec:
    p = Path(path)
    if not p.is_file():
        raise ModelError(f"model file {p} does not exist")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ModelError(f"{p}: invalid JSON: {exc}") from exc
    return model_from_json(data)


def save_model(spec: IOASpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec.to_json(), indent=2, sort_keys=True) + "\n")
