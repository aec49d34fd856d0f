"""Finite sums of branched monomials z1^a z2^b (z1-z2)^c with Laurent dressing.

Every element is stored in a canonical form: one entry per exponent class
(the exponent triple mod Z^3, represented in [0,1)^3), holding

    z1^i z2^j (z1-z2)^k * num(z1, z2)

with num a polynomial coprime to z1, z2 and z1-z2.  The ring
C[z1, z2][z1^-1, z2^-1, (z1-z2)^-1] is a UFD localization, so this form is
unique and equality of canonical forms is equality of functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import format_rational, is_zero, root_of_unity, scalar_from_json, scalar_to_json, to_complex

Exps = tuple  # (alpha, beta, gamma) as Fractions
Poly = dict  # {(a, b): coeff} for z1^a z2^b, a, b >= 0

Z1, Z2, Z12 = 0, 1, 2
FORM_COEFFS = ((1, 0), (0, 1), (1, -1))  # z1, z2, z1 - z2 as linear forms


class GFunctionError(ValueError):
    pass


# ---------------------------------------------------------------- polynomials


def _clean(p: Mapping) -> Poly:
    return {m: c for m, c in p.items() if not is_zero(c)}


def poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out[m] + c if m in out else c
    return _clean(out)


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: dict = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            m = (a1 + a2, b1 + b2)
            c = c1 * c2
            out[m] = out[m] + c if m in out else c
    return _clean(out)


def poly_shift(p: Poly, da: int, db: int) -> Poly:
    return {(a + da, b + db): c for (a, b), c in p.items()}


def poly_pow(p: Poly, n: int) -> Poly:
    out: Poly = {(0, 0): Fraction(1)}
    for _ in range(n):
        out = poly_mul(out, p)
    return out


LINEAR = {Z1: {(1, 0): Fraction(1)}, Z2: {(0, 1): Fraction(1)}, Z12: {(1, 0): Fraction(1), (0, 1): Fraction(-1)}}


def _divisible_by_difference(p: Poly) -> bool:
    sums: dict = {}
    for (a, b), c in p.items():
        d = a + b
        sums[d] = sums[d] + c if d in sums else c
    return all(is_zero(s) for s in sums.values())


def _divide_by_difference(p: Poly) -> Poly:
    """Exact quotient p / (z1 - z2), one homogeneous degree at a time."""
    by_degree: dict = {}
    for (a, b), c in p.items():
        by_degree.setdefault(a + b, {})[a] = c
    out: Poly = {}
    for d, comp in by_degree.items():
        # c_a = q_{a-1} - q_a  for q of degree d-1
        prev = 0
        for a in range(d):
            q = prev - comp.get(a, 0)
            if not is_zero(q):
                out[(a, d - 1 - a)] = q
            prev = q
    return out


def _normalize(i: int, j: int, k: int, num: Poly) -> tuple[int, int, int, Poly] | None:
    num = _clean(num)
    if not num:
        return None
    da = min(a for a, _ in num)
    db = min(b for _, b in num)
    if da or db:
        num = poly_shift(num, -da, -db)
        i, j = i + da, j + db
    while _divisible_by_difference(num):
        num = _divide_by_difference(num)
        k += 1
    return i, j, k, num


def _split(e) -> tuple[Fraction, int]:
    e = Fraction(e)
    n = e.numerator // e.denominator
    return e - n, n


# ---------------------------------------------------------------- GFunction


class GFunction:
    """An element of the free module spanned by branched monomials over the
    Laurent ring C[z1^+-1, z2^+-1, (z1-z2)^+-1].

    Values are taken with respect to a triple of logarithms (L1, L2, L12) of
    z1, z2 and z1 - z2 supplied by the caller.
    """

    __slots__ = ("_classes",)

    def __init__(self, classes: Mapping[Exps, tuple] | None = None):
        object.__setattr__(self, "_classes", dict(classes or {}))

    def __setattr__(self, name, value):
        raise AttributeError("GFunction is immutable")

    # -- construction

    @classmethod
    def zero(cls) -> "GFunction":
        return cls()

    @classmethod
    def term(cls, exps: Sequence, coeff=1, num: Mapping | None = None) -> "GFunction":
        """coeff * z1^a z2^b (z1-z2)^c * num(z1, z2)."""
        if len(exps) != 3:
            raise GFunctionError("exponent triple must have three entries")
        reps, ints = zip(*(_split(e) for e in exps))
        poly = {m: coeff * c for m, c in (num or {(0, 0): Fraction(1)}).items()}
        norm = _normalize(*ints, poly)
        if norm is None:
            return cls()
        return cls({tuple(reps): norm})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple]) -> "GFunction":
        """Sum of (alpha, beta, gamma, coeff) monomials."""
        out = cls()
        for *exps, coeff in terms:
            out = out + cls.term(exps, coeff)
        return out

    # -- inspection

    def is_zero(self) -> bool:
        return not self._classes

    def classes(self) -> list[tuple[Exps, tuple]]:
        """[(class representative, (i, j, k, num))] sorted by representative."""
        return sorted(self._classes.items())

    def class_reps(self) -> list[Exps]:
        return sorted(self._classes)

    def component(self, rep: Exps) -> "GFunction":
        rep = tuple(Fraction(x) for x in rep)
        return GFunction({rep: self._classes[rep]}) if rep in self._classes else GFunction()

    def monomials(self) -> list[tuple[Exps, object]]:
        """Expand into (full exponents, coeff) with (z1-z2) powers kept as a factor.

        The num polynomial is listed term by term, so the result is a
        redundant but faithful description for display and serialization.
        """
        out = []
        for rep, (i, j, k, num) in self.classes():
            for (a, b), c in sorted(num.items()):
                out.append(((rep[0] + i + a, rep[1] + j + b, rep[2] + k), c))
        return out

    # -- arithmetic

    def _combine(self, other: "GFunction", sign: int) -> "GFunction":
        out = dict(self._classes)
        for rep, (i2, j2, k2, n2) in other._classes.items():
            if sign < 0:
                n2 = {m: -c for m, c in n2.items()}
            if rep not in out:
                out[rep] = (i2, j2, k2, n2)
                continue
            i1, j1, k1, n1 = out[rep]
            i, j, k = min(i1, i2), min(j1, j2), min(k1, k2)
            a = _lift(n1, i1 - i, j1 - j, k1 - k)
            b = _lift(n2, i2 - i, j2 - j, k2 - k)
            norm = _normalize(i, j, k, poly_add(a, b))
            if norm is None:
                del out[rep]
            else:
                out[rep] = norm
        return GFunction(out)

    def __add__(self, other: "GFunction") -> "GFunction":
        return self._combine(other, 1)

    def __sub__(self, other: "GFunction") -> "GFunction":
        return self._combine(other, -1)

    def __neg__(self) -> "GFunction":
        return self.scale(-1)

    def scale(self, c) -> "GFunction":
        if is_zero(c):
            return GFunction()
        return GFunction(
            {rep: (i, j, k, {m: v * c for m, v in num.items()}) for rep, (i, j, k, num) in self._classes.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, GFunction):
            return self.scale(other)
        out = GFunction()
        for r1, (i1, j1, k1, n1) in self._classes.items():
            for r2, (i2, j2, k2, n2) in other._classes.items():
                exps = [x + y for x, y in zip(r1, r2)]
                reps, carry = zip(*(_split(e) for e in exps))
                norm = _normalize(i1 + i2 + carry[0], j1 + j2 + carry[1], k1 + k2 + carry[2], poly_mul(n1, n2))
                if norm is not None:
                    out = out + GFunction({tuple(reps): norm})
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GFunction):
            return NotImplemented
        if set(self._classes) != set(other._classes):
            return False
        for rep, (i, j, k, num) in self._classes.items():
            i2, j2, k2, num2 = other._classes[rep]
            if (i, j, k) != (i2, j2, k2) or set(num) != set(num2):
                return False
            if any(not is_zero(num[m] - num2[m]) for m in num):
                return False
        return True

    __hash__ = None

    def differs_from(self, other: "GFunction"):
        """First class representative where the two canonical forms disagree, or None."""
        for rep in sorted(set(self._classes) | set(other._classes)):
            if self.component(rep) != other.component(rep):
                return rep
        return None

    # -- branches

    def shift_branch(self, k1, k2, k12) -> "GFunction":
        """Multiply each class by exp(2 pi i (a k1 + b k2 + c k12)) for integer offsets."""
        for k in (k1, k2, k12):
            if Fraction(k).denominator != 1:
                raise GFunctionError("branch shifts must be integers; sign changes go through substitute")
        out = {}
        for rep, (i, j, k, num) in self._classes.items():
            ph = root_of_unity(rep[0] * k1 + rep[1] * k2 + rep[2] * k12)
            out[rep] = (i, j, k, {m: c * ph for m, c in num.items()})
        return GFunction(out)

    def substitute(self, matrix: Sequence[Sequence[int]], offsets: Sequence) -> "GFunction":
        """h(z) = g(u1, u2) with (u1, u2) = matrix applied to (z1, z2).

        The three forms u1, u2, u1-u2 must equal +-z1, +-z2, +-(z1-z2) in
        some order.  ``offsets`` (half-integers) say how the logs used for g
        relate to the logs used for h: log u = log(matching z-form) + 2 pi i k.
        """
        perm, signs = match_forms(matrix)
        offsets = tuple(Fraction(o) for o in offsets)
        for s, o in zip(signs, offsets):
            if (o * 2).denominator != 1 or ((s < 0) != ((o * 2).numerator % 2 == 1)):
                raise GFunctionError(f"offset {o} is incompatible with sign {s}")
        u1 = _linear_poly(matrix[0])
        u2 = _linear_poly(matrix[1])
        out = GFunction()
        for rep, (i, j, k, num) in self._classes.items():
            new_rep = [Fraction(0)] * 3
            ints = [0, 0, 0]
            for slot, (r, n) in enumerate(zip(rep, (i, j, k))):
                new_rep[perm[slot]] = r
                ints[perm[slot]] = n
            ph = root_of_unity(rep[0] * offsets[0] + rep[1] * offsets[1] + rep[2] * offsets[2])
            ph = ph * (signs[0] ** (i % 2)) * (signs[1] ** (j % 2)) * (signs[2] ** (k % 2))
            new_num: Poly = {}
            for (a, b), c in num.items():
                piece = poly_mul(poly_pow(u1, a), poly_pow(u2, b))
                new_num = poly_add(new_num, {m: v * c * ph for m, v in piece.items()})
            norm = _normalize(*_absorb(ints), new_num)
            if norm is not None:
                out = out + GFunction({tuple(new_rep): norm})
        return out

    # -- evaluation

    def evaluate(self, logs: Sequence[complex], point: Sequence[complex]) -> complex:
        """Value with log z1 = logs[0], log z2 = logs[1], log(z1-z2) = logs[2]."""
        import cmath

        z1, z2 = complex(point[0]), complex(point[1])
        z12 = z1 - z2
        total = 0j
        for rep, (i, j, k, num) in self._classes.items():
            branch = cmath.exp(float(rep[0]) * logs[0] + float(rep[1]) * logs[1] + float(rep[2]) * logs[2])
            poly = sum(to_complex(c) * z1**a * z2**b for (a, b), c in num.items())
            total += branch * z1**i * z2**j * z12**k * poly
        return total

    # -- serialization

    def to_json(self) -> list:
        out = []
        for rep, (i, j, k, num) in self.classes():
            out.append(
                {
                    "class": [format_rational(x) for x in rep],
                    "shift": [i, j, k],
                    "num": [{"z1": a, "z2": b, "coeff": scalar_to_json(c)} for (a, b), c in sorted(num.items())],
                }
            )
        return out

    @classmethod
    def from_json(cls, data: list) -> "GFunction":
        out = cls()
        for entry in data:
            rep = [Fraction(x) for x in entry["class"]]
            exps = [r + s for r, s in zip(rep, entry.get("shift", (0, 0, 0)))]
            num = {(int(t["z1"]), int(t["z2"])): scalar_from_json(t["coeff"]) for t in entry["num"]}
            out = out + cls.term(exps, 1, num)
        return out

    def __repr__(self) -> str:
        if not self._classes:
            return "GFunction(0)"
        parts = []
        for rep, (i, j, k, num) in self.classes():
            exps = ",".join(format_rational(r + n) for r, n in zip(rep, (i, j, k)))
            parts.append(f"[{exps}]*{_poly_str(num)}")
        return "GFunction(" + " + ".join(parts) + ")"


def _poly_str(num: Poly) -> str:
    terms = [f"{c}*z1^{a}*z2^{b}" for (a, b), c in sorted(num.items())]
    return "(" + " + ".join(terms) + ")"


def _lift(num: Poly, di: int, dj: int, dk: int) -> Poly:
    out = poly_shift(num, di, dj)
    if dk:
        out = poly_mul(out, poly_pow(LINEAR[Z12], dk))
    return out


def _absorb(ints: list[int]) -> tuple[int, int, int]:
    return ints[0], ints[1], ints[2]


def _linear_poly(row: Sequence[int]) -> Poly:
    a, b = row
    return _clean({(1, 0): Fraction(a), (0, 1): Fraction(b)})


def match_forms(matrix: Sequence[Sequence[int]]) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """For u = matrix z, find perm and signs with u_slot = sign * Z[perm[slot]].

    Slots are (u1, u2, u1 - u2); Z = (z1, z2, z1 - z2).
    """
    (a, b), (c, d) = matrix
    rows = ((a, b), (c, d), (a - c, b - d))
    perm, signs = [], []
    for row in rows:
        found = None
        for idx, form in enumerate(FORM_COEFFS):
            if row == form:
                found = (idx, 1)
            elif row == (-form[0], -form[1]):
                found = (idx, -1)
        if found is None:
            raise GFunctionError(f"substitution {matrix} does not permute the singular forms")
        perm.append(found[0])
        signs.append(found[1])
    if sorted(perm) != [0, 1, 2]:
        raise GFunctionError(f"substitution {matrix} does not permute the singular forms")
    return tuple(perm), tuple(signs)


SWAP = ((0, 1), (1, 0))  # (u1, u2) = (z2, z1)
SHIFT = ((1, -1), (0, -1))  # (u1, u2) = (z1 - z2, -z2)


def common_coordinates(functions: Sequence[GFunction]) -> list[dict]:
    """Write each function as {(class rep, (a, b)): coeff} over a shared frame.

    Within each class all functions are lifted to the smallest shifts that
    occur, so the numerators live in one polynomial space and linear
    relations among the functions become linear relations among the dicts.
    """
    floors: dict = {}
    for g in functions:
        for rep, (i, j, k, _) in g.classes():
            lo = floors.get(rep)
            floors[rep] = (i, j, k) if lo is None else tuple(min(x, y) for x, y in zip(lo, (i, j, k)))
    out = []
    for g in functions:
        vec = {}
        for rep, (i, j, k, num) in g.classes():
            fi, fj, fk = floors[rep]
            for m, c in _lift(num, i - fi, j - fj, k - fk).items():
                vec[(rep, m)] = c
        out.append(vec)
    return out
