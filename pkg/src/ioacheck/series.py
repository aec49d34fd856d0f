"""Sparse formal series in named variables with rational exponents.

A :class:`Series` stores finitely many terms together with two pieces of
bookkeeping per variable:

* ``support``: bounds on the exponents the *true* (untruncated) series can
  have.  ``None`` means unbounded on that side.
* ``valid``: a box of exponents inside which the stored terms are exactly the
  true terms.  Outside the box terms were dropped by truncation.

Products and sums propagate both, so a comparison restricted to the common
valid box is exact no matter how the inputs were truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Optional

from .scalars import is_zero as scalar_is_zero
from .scalars import scalar_to_json, format_rational

Bound = Optional[int | Fraction]
Interval = tuple[Bound, Bound]

UNBOUNDED: Interval = (None, None)


class SeriesError(ValueError):
    pass


class DirectionError(SeriesError):
    pass


# ---------------------------------------------------------------- exponents


def _norm_exp(e) -> int | Fraction:
    if isinstance(e, Fraction):
        return e.numerator if e.denominator == 1 else e
    if isinstance(e, int):
        return e
    e = Fraction(e)
    return e.numerator if e.denominator == 1 else e


def exponents(mapping: Mapping[str, object] | None = None, **kw) -> tuple:
    """Canonical exponent vector: sorted (variable, exponent) pairs, zeros dropped."""
    items = dict(mapping or {})
    items.update(kw)
    return tuple(sorted((v, _norm_exp(e)) for v, e in items.items() if e != 0))


def ev_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for v, e in b:
        s = merged.get(v, 0) + e
        if s:
            merged[v] = s
        else:
            merged.pop(v, None)
    return tuple(sorted(merged.items()))


def ev_get(ev: tuple, var: str):
    for v, e in ev:
        if v == var:
            return e
    return 0


def ev_drop(ev: tuple, var: str) -> tuple:
    return tuple((v, e) for v, e in ev if v != var)


def ev_str(ev: tuple) -> str:
    if not ev:
        return "1"
    return "*".join(f"{v}^{e}" if e != 1 else v for v, e in ev)


@lru_cache(maxsize=None)
def binomial(n, m: int) -> Fraction:
    """Generalized binomial coefficient C(n, m) for rational n and integer m >= 0."""
    if m < 0:
        return Fraction(0)
    if m == 0:
        return Fraction(1)
    return binomial(n, m - 1) * (Fraction(n) - (m - 1)) / m


# ---------------------------------------------------------------- intervals


def _lo_add(a: Bound, b: Bound) -> Bound:
    return None if a is None or b is None else a + b


def _product_interval(valid_a: Interval, supp_a: Interval, valid_b: Interval, supp_b: Interval) -> Interval:
    """Exponents of a product that only receive contributions from valid terms."""
    vlo_a, vhi_a = valid_a
    vlo_b, vhi_b = valid_b
    slo_a, shi_a = supp_a
    slo_b, shi_b = supp_b
    his, los = [], []
    for vhi, slo in ((vhi_a, slo_b), (vhi_b, slo_a)):
        if vhi is None:
            continue
        if slo is None:
            return (0, -1)  # nothing is guaranteed
        his.append(vhi + slo)
    for vlo, shi in ((vlo_a, shi_b), (vlo_b, shi_a)):
        if vlo is None:
            continue
        if shi is None:
            return (0, -1)
        los.append(vlo + shi)
    return (max(los) if los else None, min(his) if his else None)


def _intersect(a: Interval, b: Interval) -> Interval:
    lo = a[0] if b[0] is None else (b[0] if a[0] is None else max(a[0], b[0]))
    hi = a[1] if b[1] is None else (b[1] if a[1] is None else min(a[1], b[1]))
    return (lo, hi)


def _hull(a: Interval, b: Interval) -> Interval:
    lo = None if a[0] is None or b[0] is None else min(a[0], b[0])
    hi = None if a[1] is None or b[1] is None else max(a[1], b[1])
    return (lo, hi)


def _inside(e, iv: Interval) -> bool:
    lo, hi = iv
    return (lo is None or e >= lo) and (hi is None or e <= hi)


def _empty(iv: Interval) -> bool:
    return iv[0] is not None and iv[1] is not None and iv[0] > iv[1]


# ---------------------------------------------------------------- series


@dataclass(frozen=True)
class Series:
    """A truncated formal series with exact validity bookkeeping.

    ``direction`` is a set of ``(small, large)`` variable pairs recording the
    expansion convention (e.g. ``("x2", "x1")`` for expansions in x2/x1).
    """

    terms: Mapping[tuple, object] = field(default_factory=dict)
    direction: frozenset = frozenset()
    support: Mapping[str, Interval] = field(default_factory=dict)
    valid: Mapping[str, Interval] = field(default_factory=dict)

    # -- construction

    @classmethod
    def polynomial(cls, terms: Mapping[tuple, object], direction: Iterable = ()) -> "Series":
        """An exact finite series; every exponent is valid."""
        clean = {ev: c for ev, c in terms.items() if not scalar_is_zero(c)}
        support: dict[str, Interval] = {}
        for ev in clean:
            for v, e in ev:
                lo, hi = support.get(v, (e, e))
                support[v] = (min(lo, e), max(hi, e))
        # variables missing from a term have exponent 0 there
        for v in list(support):
            if any(ev_get(ev, v) == 0 for ev in clean):
                lo, hi = support[v]
                support[v] = (min(lo, 0), max(hi, 0))
        return cls(clean, frozenset(direction), support, {})

    @classmethod
    def monomial(cls, coeff=1, **exps) -> "Series":
        return cls.polynomial({exponents(exps): coeff})

    @classmethod
    def zero(cls) -> "Series":
        return cls({}, frozenset(), {}, {})

    # -- bookkeeping helpers

    def variables(self) -> set[str]:
        out = set(self.support) | set(self.valid)
        for ev in self.terms:
            out.update(v for v, _ in ev)
        return out

    def support_of(self, var: str) -> Interval:
        return self.support.get(var, (0, 0))

    def valid_of(self, var: str) -> Interval:
        return self.valid.get(var, UNBOUNDED)

    def in_valid_box(self, ev: tuple, box: Mapping[str, Interval] | None = None) -> bool:
        box = self.valid if box is None else box
        for var, iv in box.items():
            if not _inside(ev_get(ev, var), iv):
                return False
        return True

    def is_exact(self) -> bool:
        return all(iv == UNBOUNDED for iv in self.valid.values())

    def box_is_empty(self) -> bool:
        return any(_empty(iv) for iv in self.valid.values())

    def coefficient(self, ev: tuple):
        if not self.in_valid_box(ev):
            raise SeriesError(f"monomial {ev_str(ev)} lies outside the valid range of this series")
        return self.terms.get(ev, 0)

    def __iter__(self) -> Iterator[tuple[tuple, object]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def _pruned(self, terms: dict, direction, support, valid) -> "Series":
        valid = {v: iv for v, iv in valid.items() if iv != UNBOUNDED}
        kept = {}
        for ev, c in terms.items():
            if scalar_is_zero(c):
                continue
            ok = True
            for var, iv in valid.items():
                if not _inside(ev_get(ev, var), iv):
                    ok = False
                    break
            if ok:
                kept[ev] = c
        return Series(kept, frozenset(direction), support, valid)

    # -- arithmetic

    def __add__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            other = Series.polynomial({(): other})
        terms = dict(self.terms)
        for ev, c in other.terms.items():
            terms[ev] = terms.get(ev, 0) + c
        vars_ = self.variables() | other.variables()
        support = {v: _hull(self.support_of(v), other.support_of(v)) for v in vars_}
        valid = {v: _intersect(self.valid_of(v), other.valid_of(v)) for v in vars_}
        # a sum of differently expanded series is a plain formal series
        direction = self.direction & other.direction
        return self._pruned(terms, direction, support, valid)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series({ev: -c for ev, c in self.terms.items()}, self.direction, self.support, self.valid)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, c) -> "Series":
        if scalar_is_zero(c):
            return Series({}, self.direction, self.support, self.valid)
        return Series({ev: c * v for ev, v in self.terms.items()}, self.direction, self.support, self.valid)

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            return self.scale(other)
        for small, large in self.direction:
            if (large, small) in other.direction:
                raise DirectionError(
                    f"cannot multiply an expansion in {small}/{large} by one in {large}/{small}"
                )
        vars_ = self.variables() | other.variables()
        support = {}
        valid = {}
        for v in vars_:
            sa, sb = self.support_of(v), other.support_of(v)
            support[v] = (_lo_add(sa[0], sb[0]), _lo_add(sa[1], sb[1]))
            valid[v] = _product_interval(self.valid_of(v), sa, other.valid_of(v), sb)
        terms: dict = {}
        box = {v: iv for v, iv in valid.items() if iv != UNBOUNDED}
        if any(_empty(iv) for iv in box.values()):
            raise SeriesError("product has no exactly known coefficients (ill-defined or over-truncated)")
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                ev = ev_mul(ea, eb)
                if box:
                    ok = True
                    for var, iv in box.items():
                        if not _inside(ev_get(ev, var), iv):
                            ok = False
                            break
                    if not ok:
                        continue
                terms[ev] = terms.get(ev, 0) + ca * cb
        return self._pruned(terms, self.direction | other.direction, support, valid)

    __rmul__ = __mul__

    def map_coefficients(self, fn: Callable) -> "Series":
        return self._pruned({ev: fn(c) for ev, c in self.terms.items()}, self.direction, self.support, self.valid)

    # -- comparison

    def compare(self, other: "Series", tol: float | None = None) -> "Comparison":
        """Compare on the common valid box; exact unless ``tol`` is given."""
        vars_ = self.variables() | other.variables()
        box = {v: _intersect(self.valid_of(v), other.valid_of(v)) for v in vars_}
        box = {v: iv for v, iv in box.items() if iv != UNBOUNDED}
        if any(_empty(iv) for iv in box.values()):
            return Comparison(True, 0, None, box)
        keys = sorted(set(self.terms) | set(other.terms), key=_ev_sort_key)
        compared = 0
        for ev in keys:
            if not self.in_valid_box(ev, box):
                continue
            compared += 1
            diff = self.terms.get(ev, 0) - other.terms.get(ev, 0)
            bad = (abs(complex(_to_c(diff))) >= tol) if tol is not None else not scalar_is_zero(diff)
            if bad:
                return Comparison(False, compared, ev, box, self.terms.get(ev, 0), other.terms.get(ev, 0))
        return Comparison(True, compared, None, box)

    def to_json(self) -> list:
        return [
            {"exponents": {v: format_rational(e) for v, e in ev}, "coeff": scalar_to_json(c)}
            for ev, c in sorted(self.terms.items(), key=lambda kv: _ev_sort_key(kv[0]))
        ]


def _to_c(x):
    from .scalars import to_complex

    return to_complex(x)


def _ev_sort_key(ev: tuple):
    return tuple((v, Fraction(e)) for v, e in ev)


@dataclass(frozen=True)
class Comparison:
    equal: bool
    compared: int
    first_difference: Optional[tuple]
    box: Mapping[str, Interval]
    left: object = None
    right: object = None

    def describe(self) -> str:
        if self.equal:
            return f"equal on {self.compared} monomials"
        return f"differ at {ev_str(self.first_difference)}: {self.left!r} != {self.right!r}"


# ---------------------------------------------------------------- expansions


def binom_expand(u: str, v: str, n, cutoff: int, sign: int = 1, coeff=1) -> Series:
    """coeff * (u + sign*v)**n expanded in nonnegative powers of v, v-order <= cutoff."""
    if cutoff < 0:
        raise SeriesError("cutoff must be nonnegative")
    n = _norm_exp(n)
    terminating = isinstance(n, int) and n >= 0
    top = min(cutoff, n) if terminating else cutoff
    terms = {}
    for m in range(top + 1):
        c = binomial(n, m) * (sign**m)
        if c:
            terms[exponents({u: n - m, v: m})] = coeff * c
    if terminating and top == n:
        return Series.polynomial(terms, direction=[(v, u)])
    support = {u: (None, n), v: (0, None)}
    valid = {v: (None, cutoff)}
    return Series(terms, frozenset([(v, u)]), support, valid)


def delta(var: str, cutoff: int) -> Series:
    """delta(x) = sum over all integers n of x^n, kept for |n| <= cutoff."""
    terms = {exponents({var: n}): Fraction(1) for n in range(-cutoff, cutoff + 1)}
    return Series(terms, frozenset(), {var: (None, None)}, {var: (-cutoff, cutoff)})


def delta_series(u: str, v: str, w: str, cutoff: int, v_sign: int = 1, w_sign: int = 1) -> Series:
    """w^-1 delta((u + v_sign*v) / (w_sign*w)), binomials expanded in powers of v.

    The coefficient of w^(-n-1) u^(n-m) v^m is w_sign^(-n) * v_sign^m * C(n, m).
    Terms are kept for |n| <= cutoff and m <= cutoff.
    """
    if cutoff < 0:
        raise SeriesError("cutoff must be nonnegative")
    terms = {}
    for n in range(-cutoff, cutoff + 1):
        for m in range(cutoff + 1):
            c = binomial(n, m)
            if not c:
                continue
            c = c * (v_sign**m) * (w_sign ** (-n) if n <= 0 else Fraction(1, w_sign**n))
            terms[exponents({w: -n - 1, u: n - m, v: m})] = c
    support = {w: (None, None), u: (None, None), v: (0, None)}
    valid = {w: (-cutoff - 1, cutoff - 1), v: (None, cutoff)}
    return Series(terms, frozenset([(v, u)]), support, valid)


def residue(var: str, s: Series) -> Series:
    """Coefficient of var^-1, as a series in the remaining variables."""
    iv = s.valid_of(var)
    if not _inside(-1, iv):
        raise SeriesError(f"the residue in {var} is not determined by this truncation")
    terms = {ev_drop(ev, var): c for ev, c in s.terms.items() if ev_get(ev, var) == -1}
    support = {v: b for v, b in s.support.items() if v != var}
    valid = {v: b for v, b in s.valid.items() if v != var}
    direction = frozenset(p for p in s.direction if var not in p)
    return Series(terms, direction, support, valid)


# ---------------------------------------------------------------- rational functions

LinearForm = tuple  # sorted ((var, int coeff), ...), first coefficient positive


def linear_form(mapping: Mapping[str, int]) -> tuple[int, LinearForm]:
    """Normalize a homogeneous linear polynomial; returns (sign, form)."""
    items = tuple(sorted((v, int(c)) for v, c in mapping.items() if c))
    if not items:
        raise SeriesError("zero linear factor")
    sign = 1 if items[0][1] > 0 else -1
    return sign, tuple((v, c * sign) for v, c in items)


@dataclass(frozen=True)
class RationalFn:
    """numerator / prod(linear_form ** multiplicity).

    The numerator maps exponent vectors (nonnegative integer exponents) to
    scalars.  Denominator factors are homogeneous linear forms in at most two
    variables, e.g. x0, or x1 - x2.
    """

    numerator: Mapping[tuple, object]
    denominator: Mapping[LinearForm, int] = field(default_factory=dict)

    @classmethod
    def prop_shape(cls, numerator: Mapping[tuple, object], r: int = 0, s: int = 0, t: int = 0, **linear) -> "RationalFn":
        den = {}
        for var, k in (("x0", r), ("x1", s), ("x2", t)):
            if k < 0:
                raise SeriesError("denominator exponents must be nonnegative")
            if k:
                den[(("x0" if var == "x0" else var, 1),)] = k
        return cls(dict(numerator), den)

    @classmethod
    def build(cls, numerator: Mapping[tuple, object], factors: Iterable[tuple[Mapping[str, int], int]] = ()) -> "RationalFn":
        den: dict = {}
        num = dict(numerator)
        for mapping, mult in factors:
            if mult < 0:
                raise SeriesError("multiplicities must be nonnegative")
            sign, form = linear_form(mapping)
            if mult:
                den[form] = den.get(form, 0) + mult
                if sign < 0 and mult % 2:
                    num = {ev: -c for ev, c in num.items()}
        return cls(num, den)

    def is_zero(self) -> bool:
        return all(scalar_is_zero(c) for c in self.numerator.values())

    def validate(self) -> None:
        for ev in self.numerator:
            for _, e in ev:
                if not isinstance(e, int) or e < 0:
                    raise SeriesError("numerator must be a polynomial")
        for form, mult in self.denominator.items():
            if len(form) > 2 or len(form) == 0 or mult < 0:
                raise SeriesError(f"malformed denominator factor {form}")

    def substitute(self, var: str, image: Mapping[str, int]) -> "RationalFn":
        """Replace var by the linear form ``image`` (integer coefficients)."""
        image_terms = [(exponents({v: 1}), Fraction(c)) for v, c in image.items() if c]
        num: dict = {}
        for ev, c in self.numerator.items():
            k = ev_get(ev, var)
            rest = ev_drop(ev, var)
            expanded = {rest: c}
            for _ in range(k):
                nxt: dict = {}
                for e1, c1 in expanded.items():
                    for e2, c2 in image_terms:
                        e = ev_mul(e1, e2)
                        nxt[e] = nxt.get(e, 0) + c1 * c2
                expanded = nxt
            for e, cc in expanded.items():
                num[e] = num.get(e, 0) + cc
        num = {e: c for e, c in num.items() if not scalar_is_zero(c)}
        den: dict = {}
        for form, mult in self.denominator.items():
            coeffs = dict(form)
            if var in coeffs:
                a = coeffs.pop(var)
                for v, c in image.items():
                    coeffs[v] = coeffs.get(v, 0) + a * c
            coeffs = {v: c for v, c in coeffs.items() if c}
            sign, new = linear_form(coeffs)
            den[new] = den.get(new, 0) + mult
            if sign < 0 and mult % 2:
                num = {e: -c for e, c in num.items()}
        return RationalFn(num, den)

    def evaluate(self, point: Mapping[str, complex]) -> complex:
        from .scalars import to_complex

        total = 0j
        for ev, c in self.numerator.items():
            term = to_complex(c)
            for v, e in ev:
                term *= point[v] ** e
            total += term
        for form, mult in self.denominator.items():
            total /= sum(c * point[v] for v, c in form) ** mult
        return total


IOTA_RULES = {
    # which: (substituted variable, its image, small variable, large variable)
    "12": ("x0", {"x1": 1, "x2": -1}, "x2", "x1"),
    "21": ("x0", {"x1": 1, "x2": -1}, "x1", "x2"),
    "20": ("x1", {"x0": 1, "x2": 1}, "x0", "x2"),
    "10": ("x2", {"x1": 1, "x0": -1}, "x0", "x1"),
}


def iota(which: str, f: RationalFn, cutoff: int) -> Series:
    """Expand f as a formal series per the iota convention ``which``.

    For 12/21 the substitution x0 = x1 - x2 is applied first, for 20 the
    substitution x1 = x0 + x2 and for 10 the substitution x2 = x1 - x0.
    """
    if which not in IOTA_RULES:
        raise SeriesError(f"unknown iota map {which!r}")
    f.validate()
    var, image, small, large = IOTA_RULES[which]
    g = f.substitute(var, image)
    result = Series.polynomial(g.numerator, direction=[(small, large)])
    for form, mult in g.denominator.items():
        coeffs = dict(form)
        if len(coeffs) == 1:
            (v, c), = coeffs.items()
            result = result * Series.polynomial({exponents({v: -mult}): Fraction(1, c) ** mult})
            continue
        if set(coeffs) != {small, large}:
            raise SeriesError(f"factor {form} cannot be expanded in {small}/{large}")
        a, b = coeffs[large], coeffs[small]
        # (a L + b S)^-k = a^-k L^-k (1 + (b/a) S/L)^-k
        piece = binom_expand(large, small, -mult, cutoff, sign=1)
        ratio = Fraction(b, a)
        piece = Series(
            {ev: c * ratio ** ev_get(ev, small) * Fraction(1, a) ** mult for ev, c in piece.terms.items()},
            piece.direction,
            piece.support,
            piece.valid,
        )
        result = result * piece
    return result


# ---------------------------------------------------------------- delta expressions

SLOTS = ("product", "reversed-product", "iterate")


@dataclass(frozen=True)
class DeltaAtom:
    """w^-1 delta((u + v_sign*v)/(w_sign*w)) occupying one Jacobi slot."""

    u: str
    v: str
    w: str
    v_sign: int = 1
    w_sign: int = 1
    slot: str = "product"

    def expand(self, cutoff: int) -> Series:
        return delta_series(self.u, self.v, self.w, cutoff, self.v_sign, self.w_sign)

    def __mul__(self, other):
        if isinstance(other, DeltaAtom):
            raise SeriesError("products of delta functions are not defined")
        return NotImplemented


PRODUCT_DELTA = DeltaAtom("x1", "x2", "x0", -1, 1, "product")  # x0^-1 d((x1-x2)/x0)
REVERSED_DELTA = DeltaAtom("x2", "x1", "x0", -1, -1, "reversed-product")  # x0^-1 d((x2-x1)/(-x0))
ITERATE_DELTA = DeltaAtom("x1", "x0", "x2", -1, 1, "iterate")  # x2^-1 d((x1-x0)/x2)
SHIFT_DELTA = DeltaAtom("x2", "x0", "x1", 1, 1, "iterate")  # x1^-1 d((x2+x0)/x1)


@dataclass(frozen=True)
class DeltaExpression:
    """A signed sum of delta atoms, each multiplied by a delta-free series."""

    parts: tuple = ()  # ((sign, DeltaAtom, Series), ...)

    def __add__(self, other: "DeltaExpression") -> "DeltaExpression":
        return DeltaExpression(self.parts + other.parts)

    def __neg__(self) -> "DeltaExpression":
        return DeltaExpression(tuple((-s, a, c) for s, a, c in self.parts))

    def __sub__(self, other: "DeltaExpression") -> "DeltaExpression":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (DeltaExpression, DeltaAtom)):
            raise SeriesError("products of delta functions are not defined")
        return NotImplemented

    @classmethod
    def term(cls, atom: DeltaAtom, coeff: Series, sign: int = 1) -> "DeltaExpression":
        return cls(((sign, atom, coeff),))

    def expand(self, cutoff: int) -> Series:
        total: Series | None = None
        for sign, atom, coeff in self.parts:
            piece = atom.expand(cutoff) * coeff
            if sign < 0:
                piece = -piece
            total = piece if total is None else total + piece
        return total if total is not None else Series.zero()


# ---------------------------------------------------------------- checks


@dataclass
class CheckReport:
    name: str
    passed: bool
    compared: int = 0
    counterexample: Optional[dict] = None
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "compared": self.compared}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.detail:
            out["detail"] = self.detail
        return out


def _report(name: str, cmp: Comparison, min_compared: int = 1) -> CheckReport:
    if not cmp.equal:
        return CheckReport(
            name,
            False,
            cmp.compared,
            {
                "monomial": {v: format_rational(e) for v, e in cmp.first_difference},
                "left": scalar_to_json(cmp.left),
                "right": scalar_to_json(cmp.right),
            },
            cmp.describe(),
        )
    if cmp.compared < min_compared:
        return CheckReport(name, False, cmp.compared, None, "comparison window is empty")
    return CheckReport(name, True, cmp.compared, None, cmp.describe())


def verify_delta_identities(cutoff: int) -> list[CheckReport]:
    """Both three-variable delta identities, coefficientwise on the valid window."""
    shift = SHIFT_DELTA.expand(cutoff)
    iterate = ITERATE_DELTA.expand(cutoff)
    first = _report("delta-shift", shift.compare(iterate))
    lhs = PRODUCT_DELTA.expand(cutoff) - REVERSED_DELTA.expand(cutoff)
    second = _report("delta-three-term", lhs.compare(iterate))
    return [first, second]


def verify_delta_substitution(f: Mapping[int, object], var: str, cutoff: int) -> CheckReport:
    """f(x) delta(x) == f(1) delta(x) for a Laurent polynomial f given as {exp: coeff}."""
    poly = Series.polynomial({exponents({var: e}): c for e, c in f.items()})
    at_one = sum(f.values(), Fraction(0))
    lhs = poly * delta(var, cutoff)
    rhs = delta(var, cutoff).scale(at_one)
    return _report("delta-substitution", lhs.compare(rhs))


def verify_prop_2_1(f: RationalFn, cutoff: int) -> list[CheckReport]:
    """The two-term and three-term delta/iota identities for a rational function."""
    f.validate()
    i20 = iota("20", f, cutoff)
    i10 = iota("10", f, cutoff)
    i12 = iota("12", f, cutoff)
    i21 = iota("21", f, cutoff)
    two_lhs = DeltaExpression.term(SHIFT_DELTA, i20).expand(cutoff)
    rhs = DeltaExpression.term(ITERATE_DELTA, i10).expand(cutoff)
    three_lhs = (
        DeltaExpression.term(PRODUCT_DELTA, i12) - DeltaExpression.term(REVERSED_DELTA, i21)
    ).expand(cutoff)
    if f.is_zero():
        return [
            _report("two-term", two_lhs.compare(rhs), 0),
            _report("three-term", three_lhs.compare(rhs), 0),
        ]
    return [_report("two-term", two_lhs.compare(rhs)), _report("three-term", three_lhs.compare(rhs))]


def random_rational_fn(rng, max_degree: int = 4, max_pole: int = 3, coeff_range: int = 5) -> RationalFn:
    """Random g(x0,x1,x2)/(x0^r x1^s x2^t) with integer coefficients."""
    num = {}
    n_terms = rng.randint(1, 5)
    for _ in range(n_terms):
        deg = rng.randint(0, max_degree)
        a = rng.randint(0, deg)
        b = rng.randint(0, deg - a)
        ev = exponents(x0=a, x1=b, x2=deg - a - b)
        c = rng.randint(-coeff_range, coeff_range) or 1
        num[ev] = num.get(ev, 0) + Fraction(c)
    r, s, t = (rng.randint(0, max_pole) for _ in range(3))
    return RationalFn.prop_shape(num, r, s, t)
