"""Exact arithmetic in cyclotomic fields plus an approximate complex mode.

Rationals are plain :class:`fractions.Fraction`.  Elements of Q(zeta_N) are
:class:`Cyclotomic` and complex floats are wrapped in :class:`Approx`.  Exact
and approximate values never combine silently; doing so raises
:class:`ModeMixError`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

MAX_ORDER = 1024
DEFAULT_TOLERANCE = 1e-9


class ScalarError(ValueError):
    pass


class ModeMixError(TypeError):
    """Raised when exact and approximate values meet in one operation."""


class OrderTooLargeError(ScalarError):
    pass


def _poly_divmod_int(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    # den is monic; coefficients are low-to-high
    num = list(num)
    dlen = len(den)
    if len(num) < dlen:
        return [0], num
    quot = [0] * (len(num) - dlen + 1)
    for shift in range(len(num) - dlen, -1, -1):
        c = num[shift + dlen - 1]
        if c:
            quot[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    rem = num[: dlen - 1] or [0]
    return quot, rem


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ScalarError(f"cyclotomic order must be positive, got {n}")
    if n > MAX_ORDER:
        raise OrderTooLargeError(f"cyclotomic order {n} exceeds MAX_ORDER={MAX_ORDER}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly, rem = _poly_divmod_int(poly, cyclotomic_polynomial(d))
        if any(rem):
            raise AssertionError(f"Phi_{d} does not divide x^{n}-1")
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(coeffs: Sequence[Fraction], order: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    work = [Fraction(c) for c in coeffs]
    for top in range(len(work) - 1, deg - 1, -1):
        c = work[top]
        if c:
            base = top - deg
            for i in range(deg):
                if phi[i]:
                    work[base + i] -= c * phi[i]
            work[top] = Fraction(0)
    work = work[:deg] + [Fraction(0)] * (deg - len(work))
    return tuple(work)


class Cyclotomic:
    """An element of Q(zeta_N) stored as a polynomial in zeta reduced mod Phi_N."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = (0,)):
        if order < 1:
            raise ScalarError(f"order must be positive, got {order}")
        object.__setattr__(self, "order", int(order))
        object.__setattr__(self, "coeffs", _reduce(list(coeffs), order))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    @classmethod
    def rational(cls, value) -> "Cyclotomic":
        return cls(1, [Fraction(value)])

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyclotomic":
        power %= order
        coeffs = [0] * (power + 1)
        coeffs[power] = 1
        return cls(order, coeffs)

    def embed(self, order: int) -> "Cyclotomic":
        """Same number viewed inside Q(zeta_order); self.order must divide order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ScalarError(f"cannot embed order {self.order} into order {order}")
        step = order // self.order
        raw = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            raw[i * step] = c
        return Cyclotomic(order, raw)

    def _common(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.order == other.order:
            return self, other
        lcm = self.order * other.order // math.gcd(self.order, other.order)
        return self.embed(lcm), other.embed(lcm)

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other)
        if isinstance(other, (Approx, complex, float)):
            raise ModeMixError("cannot combine an exact cyclotomic with an approximate value")
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError("value is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return Cyclotomic(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self.is_rational():
            return Cyclotomic(self.order, [1 / self.coeffs[0]])
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        s = _trim(list(self.coeffs))
        inv = _poly_inverse_mod(s, modulus)
        return Cyclotomic(self.order, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.order, [c / other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.rational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ModeMixError:
            return False
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # equality crosses orders, so no cheap canonical hash

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        total = 0j
        power = 1 + 0j
        for c in self.coeffs:
            if c:
                total += float(c) * power
            power *= z
        return total

    def conjugate(self) -> "Cyclotomic":
        n = self.order
        raw = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            raw[(-i) % n] += c
        return Cyclotomic(n, raw)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        return cls(int(data["order"]), [parse_rational(c) for c in data["coeffs"]])

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.order}^{i}")
        return "Cyclotomic(" + (" + ".join(terms) or "0") + ")"


def _trim(p: list) -> list:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    b = _trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        c = a[shift + len(b) - 1] / lead
        q[shift] = c
        if c:
            for i, d in enumerate(b):
                a[shift + i] -= c * d
    return q, _trim(a[: len(b) - 1] or [Fraction(0)])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(s: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    # extended Euclid keeping s * t_i = r_i mod m
    r0, r1 = m, _trim(list(s))
    t0, t1 = [Fraction(0)], [Fraction(1)]
    while True:
        if len(r1) == 1:
            if not r1[0]:
                raise ZeroDivisionError("element is not invertible")
            inv = 1 / r1[0]
            return [c * inv for c in t1]
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))


class Approx:
    """A complex float scalar; only combines with other approximate or rational values."""

    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", complex(value))

    def __setattr__(self, name, value):
        raise AttributeError("Approx values are immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, Approx):
            return other.value
        if isinstance(other, (int, Fraction, float, complex)):
            return complex(other)
        if isinstance(other, Cyclotomic):
            raise ModeMixError("cannot combine an approximate value with an exact cyclotomic")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Approx(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Approx(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Approx(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Approx(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero")
        return Approx(self.value / o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Approx(o) / self

    def __neg__(self):
        return Approx(-self.value)

    def __pow__(self, exponent: int):
        return Approx(self.value**exponent)

    def inverse(self) -> "Approx":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return Approx(1 / self.value)

    def is_zero(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return abs(self.value) < tol

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ModeMixError:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.value == o

    __hash__ = None

    def to_complex(self) -> complex:
        return self.value

    def conjugate(self) -> "Approx":
        return Approx(self.value.conjugate())

    def to_json(self) -> dict:
        return {"re": repr(self.value.real), "im": repr(self.value.imag)}

    def __repr__(self) -> str:
        return f"Approx({self.value!r})"


Scalar = Union[int, Fraction, Cyclotomic, Approx]


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        raise ScalarError(f"refusing to parse float {text!r} as an exact rational")
    return Fraction(str(text).strip())


def root_of_unity(q) -> Cyclotomic:
    """exp(2 pi i q) as an exact element of Q(zeta_N), N the denominator of q mod 1."""
    q = Fraction(q) % 1
    if q == 0:
        return Cyclotomic.rational(1)
    return Cyclotomic.zeta(q.denominator, q.numerator)


def phase(q, exact: bool = True):
    """exp(2 pi i q) in the requested mode."""
    if exact:
        return root_of_unity(q)
    q = Fraction(q) % 1
    return Approx(cmath.exp(2j * math.pi * float(q)))


def is_zero(x, tol: float = DEFAULT_TOLERANCE) -> bool:
    if isinstance(x, Cyclotomic):
        return x.is_zero()
    if isinstance(x, Approx):
        return x.is_zero(tol)
    if isinstance(x, (int, Fraction)):
        return x == 0
    return abs(complex(x)) < tol


def to_complex(x) -> complex:
    if isinstance(x, (Cyclotomic, Approx)):
        return x.to_complex()
    return complex(x)


def inverse(x):
    if isinstance(x, (Cyclotomic, Approx)):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / Fraction(x) if isinstance(x, (int, Fraction)) else 1 / x


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Cyclotomic))


def scalar_to_json(x):
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, Cyclotomic):
        if x.is_rational():
            return format_rational(x.coeffs[0])
        return x.to_json()
    if isinstance(x, Approx):
        return x.to_json()
    raise ScalarError(f"cannot serialize {type(x).__name__}")


def scalar_from_json(data):
    if isinstance(data, (str, int)):
        return parse_rational(data)
    if isinstance(data, dict):
        if "order" in data:
            return Cyclotomic.from_json(data)
        if "re" in data:
            return Approx(complex(float(data["re"]), float(data["im"])))
        if "phase" in data:
            # shorthand: {"phase": "p/q", "scale": "r/s"} means scale * exp(2 pi i p/q)
            scale = parse_rational(data.get("scale", "1"))
            return root_of_unity(parse_rational(data["phase"])) * scale
    raise ScalarError(f"cannot parse scalar from {data!r}")


def approx_equal(x, y, tol: float = DEFAULT_TOLERANCE) -> bool:
    return abs(to_complex(x) - to_complex(y)) < tol


def simplify(x):
    """Collapse rational cyclotomic values to Fraction."""
    if isinstance(x, Cyclotomic) and x.is_rational():
        return x.coeffs[0]
    return x
