"""Exact scalars: rationals, univariate polynomials over Q and the field Q(x).

Rationals are plain :class:`fractions.Fraction` values (aliased as
``BigRational``); Python integers are already arbitrary precision, so the
invariants ``den > 0`` and ``gcd(num, den) == 1`` come for free.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

BigRational = Fraction

#: Returned by :func:`order_at_zero` for the zero function.
INFINITE_ORDER = math.inf


class DivergentLimitError(ArithmeticError):
    """Raised when a limit at zero is requested for a function with a pole there."""


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse rational from {type(text).__name__}")
    return Fraction(text.strip())


def format_rational(q: Union[int, Fraction]) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact rational: {value!r}")


# ---------------------------------------------------------------------------
# integer-coefficient helpers (lowest degree first, no trailing zeros)


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _content(c: Sequence[int]) -> int:
    g = 0
    for v in c:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                break
    return g


def _primitive(c: Sequence[int]) -> list[int]:
    g = _content(c)
    if g in (0, 1):
        return list(c)
    return [v // g for v in c]


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [v * lb for v in r]
        for i, bv in enumerate(b):
            r[i + k] -= lr * bv
        _trim(r)
        e -= 1
    if e > 0:
        f = lb**e
        r = [v * f for v in r]
    return r


def _int_subresultant_gcd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return _primitive(a)
    d = math.gcd(_content(a), _content(b))
    a, b = _primitive(a), _primitive(b)
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _int_prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return [d]
        a = b
        div = g * h**delta
        b = [v // div for v in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
    b = _primitive(b)
    return [d * v for v in b]


def _to_integer_coeffs(coeffs: Sequence[Fraction]) -> list[int]:
    den = reduce(math.lcm, (c.denominator for c in coeffs), 1)
    return [int(c * den) for c in coeffs]


# ---------------------------------------------------------------------------


class UniPoly:
    """Univariate polynomial over Q, coefficients stored lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(v) for v in coeffs]
        self.coeffs: tuple[Fraction, ...] = tuple(_trim(c))
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: list) -> "UniPoly":
        p = cls.__new__(cls)
        p.coeffs = tuple(_trim(coeffs))
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = [Fraction(1)]
        for r in roots:
            r = as_rational(r)
            q = [Fraction(0)] * (len(p) + 1)
            for i, c in enumerate(p):
                q[i + 1] += c
                q[i] -= r * c
            p = q
        return cls._raw(p)

    # -- basic structure
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def low_order(self) -> int:
        """Exponent of the lowest nonzero term (``math.inf`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INFINITE_ORDER

    def monic(self) -> "UniPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        lc = self.coeffs[-1]
        return UniPoly._raw([c / lc for c in self.coeffs])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return Fraction(acc) if isinstance(acc, int) else acc

    evaluate = __call__

    def shift_down(self, k: int) -> "UniPoly":
        """Divide by x**k, assuming the low k coefficients vanish."""
        return UniPoly._raw(list(self.coeffs[k:]))

    # -- arithmetic
    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return UniPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly._raw([Fraction(1)])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(r) - 1 < db:
            return UniPoly._raw([]), self
        q = [Fraction(0)] * (len(r) - db)
        lb = b[-1]
        for k in range(len(r) - 1 - db, -1, -1):
            f = r[k + db] / lb
            q[k] = f
            if f:
                for i, bv in enumerate(b):
                    r[i + k] -= f * bv
        return UniPoly._raw(q), UniPoly._raw(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- comparison / hashing
    def __eq__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("UniPoly", self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"UniPoly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                s = format_rational(c)
                if mono and "/" in s:
                    s = f"({s})"
                terms.append(s + ("*" + mono if mono else ""))
        return " + ".join(reversed(terms)).replace("+ -", "- ")

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "UniPoly":
        return cls(parse_rational(s) for s in data)


def _coerce_poly(value):
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return UniPoly._raw([Fraction(value)])
    return NotImplemented


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd via the subresultant PRS over Z[x]; ``gcd(0, 0) == 0``."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.degree == 0 or q.degree == 0:
        return UniPoly._raw([Fraction(1)])
    g = _int_subresultant_gcd(_to_integer_coeffs(p.coeffs), _to_integer_coeffs(q.coeffs))
    lc = g[-1]
    return UniPoly._raw([Fraction(v, lc) for v in g])


class RatFunc:
    """Element of Q(x) kept as ``num/den`` with ``den`` monic and coprime to ``num``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _normalized: bool = False):
        num = _coerce_poly(num) if not isinstance(num, UniPoly) else num
        if num is NotImplemented:
            raise TypeError("numerator must be a polynomial or rational")
        if den is None:
            den = UniPoly._raw([Fraction(1)])
        elif not isinstance(den, UniPoly):
            den = _coerce_poly(den)
            if den is NotImplemented:
                raise TypeError("denominator must be a polynomial or rational")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if num.is_zero():
                den = UniPoly._raw([Fraction(1)])
            else:
                if den.degree > 0:
                    g = poly_gcd(num, den)
                    if g.degree > 0:
                        num = num.exact_div(g)
                        den = den.exact_div(g)
                lc = den.coeffs[-1]
                if lc != 1:
                    num = UniPoly._raw([c / lc for c in num.coeffs])
                    den = UniPoly._raw([c / lc for c in den.coeffs])
        self.num: UniPoly = num
        self.den: UniPoly = den
        self._hash = None

    @classmethod
    def x(cls) -> "RatFunc":
        return cls(UniPoly.x(), _normalized=True)

    @classmethod
    def constant(cls, c) -> "RatFunc":
        return cls(UniPoly.constant(c), _normalized=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    # -- arithmetic
    def __add__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        d1 = self.den.exact_div(g)
        d2 = other.den.exact_div(g)
        return RatFunc(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc(UniPoly._raw([]), _normalized=True)
        g1 = poly_gcd(self.num, other.den) if other.den.degree > 0 else None
        g2 = poly_gcd(other.num, self.den) if self.den.degree > 0 else None
        n1, d2 = self.num, other.den
        if g1 is not None and g1.degree > 0:
            n1, d2 = n1.exact_div(g1), d2.exact_div(g1)
        n2, d1 = other.num, self.den
        if g2 is not None and g2.degree > 0:
            n2, d1 = n2.exact_div(g2), d1.exact_div(g2)
        num = n1 * n2
        den = d1 * d2
        lc = den.coeffs[-1]
        if lc != 1:
            num = UniPoly._raw([c / lc for c in num.coeffs])
            den = UniPoly._raw([c / lc for c in den.coeffs])
        return RatFunc(num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        lc = self.num.coeffs[-1]
        return RatFunc(
            UniPoly._raw([c / lc for c in self.den.coeffs]),
            UniPoly._raw([c / lc for c in self.num.coeffs]),
            _normalized=True,
        )

    def __truediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, _normalized=True)

    # -- evaluation
    def __call__(self, c):
        c = as_rational(c)
        d = self.den(c)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at x = {format_rational(c)}")
        return Fraction(self.num(c)) / d

    evaluate = __call__

    # -- comparison
    def __eq__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.den.degree == 0 and self.num.degree <= 0:
                self._hash = hash(self.num.coeffs[0] if self.num.coeffs else Fraction(0))
            else:
                self._hash = hash(("RatFunc", self.num.coeffs, self.den.coeffs))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFunc":
        if isinstance(data, dict):
            return cls(UniPoly.from_json(data["num"]), UniPoly.from_json(data.get("den", ["1"])))
        return cls.constant(parse_rational(data))


def _coerce_ratfunc(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (int, Fraction)):
        return RatFunc(UniPoly._raw([Fraction(value)]), _normalized=True)
    if isinstance(value, UniPoly):
        return RatFunc(value, _normalized=True)
    return NotImplemented


def order_at_zero(f: RatFunc):
    """Valuation of ``f`` at x = 0; :data:`INFINITE_ORDER` for the zero function.

    >>> order_at_zero(RatFunc.x().inverse())
    -1
    """
    if isinstance(f, (int, Fraction)):
        return INFINITE_ORDER if f == 0 else 0
    if f.num.is_zero():
        return INFINITE_ORDER
    return f.num.low_order() - f.den.low_order()


def limit_at_zero(f) -> Fraction:
    """Value of ``f`` at 0 after cancellation; raises :class:`DivergentLimitError` on a pole."""
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    v = order_at_zero(f)
    if v == INFINITE_ORDER or v > 0:
        return Fraction(0)
    if v < 0:
        raise DivergentLimitError(f"{f} has a pole of order {-v} at 0")
    k = f.den.low_order()
    return f.num.coeffs[k] / f.den.coeffs[k]


def leading_coefficient_at_zero(f) -> Fraction:
    """Coefficient of x**order_at_zero(f) in the Laurent expansion of ``f``."""
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    if f.num.is_zero():
        return Fraction(0)
    return f.num.coeffs[f.num.low_order()] / f.den.coeffs[f.den.low_order()]


def scale_by_x_power(f: RatFunc, k: int) -> RatFunc:
    """Return ``x**k * f``."""
    if f.num.is_zero() or k == 0:
        return f
    if k > 0:
        return RatFunc(UniPoly._raw([Fraction(0)] * k + list(f.num.coeffs)), f.den)
    return RatFunc(f.num, UniPoly._raw([Fraction(0)] * (-k) + list(f.den.coeffs)))


def field_of(value) -> str:
    """``"Q"`` for rationals/ints, ``"Q(x)"`` for rational functions."""
    if isinstance(value, RatFunc):
        return "Q(x)"
    if isinstance(value, (int, Fraction)):
        return "Q"
    raise TypeError(f"not an exact field element: {value!r}")
