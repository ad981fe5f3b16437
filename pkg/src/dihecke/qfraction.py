"""Exact arithmetic in the field of rational functions of one parameter q.

Values are fractions of integer polynomials, kept gcd-reduced with a
positive-leading-coefficient denominator, so equal values have equal
representations and can be hashed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd


def _trim(coeffs):
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class QPoly:
    """Dense integer polynomial in q; coeffs[k] multiplies q**k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(tuple(int(c) for c in coeffs))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def gen(cls):
        return cls((0, 1))

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def content(self):
        c = 0
        for a in self.coeffs:
            c = _igcd(c, abs(a))
        return c

    def scale(self, k):
        return QPoly(a * k for a in self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return QPoly(a)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QPoly(-a for a in self.coeffs)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    def __pow__(self, k):
        assert k >= 0
        r = QPoly((1,))
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPoly({list(self.coeffs)})"

    def __str__(self):
        return qpoly_str(self)


def qpoly_str(p: QPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree(), -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            body = f"{mag}q" if k == 1 else f"{mag}q^{k}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


def _primitive(p: QPoly) -> QPoly:
    c = p.content()
    if c <= 1:
        return p
    return QPoly(a // c for a in p.coeffs)


def _prem(a: QPoly, b: QPoly) -> QPoly:
    """Pseudo-remainder of a by b (b nonzero), up to units."""
    db = b.degree()
    lb = b.lc()
    r = a
    while not r.is_zero() and r.degree() >= db:
        shift = r.degree() - db
        lr = r.lc()
        shifted = QPoly((0,) * shift + b.coeffs)
        r = r.scale(lb) - shifted.scale(lr)
    return r


def qpoly_gcd(a: QPoly, b: QPoly) -> QPoly:
    if a.is_zero() and b.is_zero():
        return QPoly()
    if a.is_zero():
        a, b = b, a
    if b.is_zero():
        return a if a.lc() > 0 else -a
    ca, cb = a.content(), b.content()
    a, b = _primitive(a), _primitive(b)
    while not b.is_zero():
        r = _primitive(_prem(a, b))
        a, b = b, r
    if a.lc() < 0:
        a = -a
    return a.scale(_igcd(ca, cb))


def qpoly_divexact(a: QPoly, b: QPoly) -> QPoly:
    """Exact quotient a/b; raises ArithmeticError when the division is not exact."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return QPoly()
    rem = [Fraction(c) for c in a.coeffs]
    db = b.degree()
    quot = [Fraction(0)] * (len(rem) - db)
    lb = b.coeffs[-1]
    for k in range(len(quot) - 1, -1, -1):
        q = rem[k + db] / lb
        quot[k] = q
        if q:
            for j, c in enumerate(b.coeffs):
                rem[k + j] -= q * c
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    if any(q.denominator != 1 for q in quot):
        raise ArithmeticError("quotient not integral")
    return QPoly(int(q) for q in quot)


class QFraction:
    """Reduced fraction of integer polynomials in q."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = QPoly.const(num)
        if den is None:
            den = QPoly.const(1)
        elif isinstance(den, int):
            den = QPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in q-fraction")
        if num.is_zero():
            self.num = QPoly()
            self.den = QPoly.const(1)
            return
        g = qpoly_gcd(num, den)
        if g.degree() > 0 or g.lc() not in (0, 1):
            num = qpoly_divexact(num, g)
            den = qpoly_divexact(den, g)
        c = _igcd(num.content(), den.content())
        if c > 1:
            num = QPoly(a // c for a in num.coeffs)
            den = QPoly(a // c for a in den.coeffs)
        if den.lc() < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c):
        return cls(QPoly.const(c))

    @classmethod
    def q(cls):
        return cls(QPoly.gen())

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_one(self):
        return self.num.coeffs == (1,) and self.den.coeffs == (1,)

    def __add__(self, other):
        other = _coerce(other)
        return QFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return QFraction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return QFraction(-self.num, self.den)

    def __mul__(self, other):
        other = _coerce(other)
        return QFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        return QFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def inverse(self):
        return QFraction(self.den, self.num)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return QFraction(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QFraction.const(other)
        return isinstance(other, QFraction) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def sort_key(self):
        return (self.num.coeffs, self.den.coeffs)

    def is_negative_leading(self):
        return self.num.lc() < 0

    def __repr__(self):
        return f"QFraction({self})"

    def __str__(self):
        if self.den.coeffs == (1,):
            return qpoly_str(self.num)
        return f"({qpoly_str(self.num)})/({qpoly_str(self.den)})"

    def is_constant_term_only(self):
        return self.den.coeffs == (1,) and self.num.degree() <= 0


def _coerce(x):
    if isinstance(x, QFraction):
        return x
    if isinstance(x, int):
        return QFraction.const(x)
    raise TypeError(f"cannot mix {type(x)!r} with QFraction")


ZERO = QFraction.const(0)
ONE = QFraction.const(1)
Q = QFraction.q()
