"""Exact arithmetic in F_p(t1)(t2) and SL2 double-coset reduction.

Scalars are fractions of bivariate polynomials over a prime field, with a
rank-two valuation v = (t2-order, t1-order of the leading t2-coefficient)
ordered lexicographically.  The integer ring of the iterated field is the
valuation ring of v, and the three triangular subgroups are cut out by
valuation inequalities on matrix entries.  Double cosets are computed by
valuation-guided row and column operations drawn from the subgroups; each
elementary move is checked for membership, so the emitted monomial
representative is in the same double coset by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass


class ZeroValuation(ValueError):
    """Valuation of the zero element is undefined."""


class ZeroArgument(ValueError):
    """Tame symbol arguments must be nonzero."""


class NotUnimodular(ValueError):
    """Matrix is not in SL2."""


class ParseError(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ----- univariate polynomials over F_p: dict {exponent: coeff} --------------------


def _u_trim(a):
    return {e: c for e, c in a.items() if c}


def _u_add(p, a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = (out.get(e, 0) + c) % p
    return _u_trim(out)


def _u_scale(p, a, k):
    k %= p
    if k == 0:
        return {}
    return {e: (c * k) % p for e, c in a.items()}


def _u_mul(p, a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return _u_trim(out)


def _u_deg(a):
    return max(a) if a else None


def _u_divmod(p, a, b):
    assert b, "univariate division by zero"
    db = _u_deg(b)
    inv = pow(b[db], p - 2, p)
    q = {}
    r = dict(a)
    while r:
        dr = _u_deg(r)
        if dr < db:
            break
        k = (r[dr] * inv) % p
        q[dr - db] = k
        for e, c in b.items():
            ee = e + dr - db
            r[ee] = (r.get(ee, 0) - k * c) % p
            if not r[ee]:
                del r[ee]
    return _u_trim(q), _u_trim(r)


def _u_gcd(p, a, b):
    a, b = _u_trim(a), _u_trim(b)
    while b:
        _, r = _u_divmod(p, a, b)
        a, b = b, r
    if a:
        inv = pow(a[_u_deg(a)], p - 2, p)
        a = _u_scale(p, a, inv)
    return a


def _u_divexact(p, a, b):
    q, r = _u_divmod(p, a, b)
    assert not r, "inexact univariate division"
    return q


# ----- bivariate polynomials over F_p: dict {(e1, e2): coeff} ---------------------


def _b_trim(P):
    return {e: c for e, c in P.items() if c}


def _b_add(p, A, B):
    out = dict(A)
    for e, c in B.items():
        out[e] = (out.get(e, 0) + c) % p
    return _b_trim(out)


def _b_neg(p, A):
    return {e: (-c) % p for e, c in A.items()}


def _b_mul(p, A, B):
    out = {}
    for (a1, a2), c1 in A.items():
        for (b1, b2), c2 in B.items():
            e = (a1 + b1, a2 + b2)
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return _b_trim(out)


def _b_slices(A):
    out = {}
    for (e1, e2), c in A.items():
        out.setdefault(e2, {})[e1] = c
    return out


def _b_from_slices(slices):
    out = {}
    for e2, u in slices.items():
        for e1, c in u.items():
            if c:
                out[(e1, e2)] = c
    return out


def _b_deg2(A):
    return max(e2 for (_e1, e2) in A) if A else None


def _b_ord2(A):
    return min(e2 for (_e1, e2) in A) if A else None


def _b_mul_u(p, A, u):
    """Multiply by a polynomial in t1 alone."""
    out = {}
    for (a1, a2), c1 in A.items():
        for e1, c2 in u.items():
            e = (a1 + e1, a2)
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return _b_trim(out)


def _b_shift2(A, k):
    return {(e1, e2 + k): c for (e1, e2), c in A.items()}


def _b_content2(p, A):
    g = {}
    for u in _b_slices(A).values():
        g = _u_gcd(p, g, u)
    return g


def _b_primitive2(p, A):
    g = _b_content2(p, A)
    if not g or (_u_deg(g) == 0 and g.get(0) == 1):
        return A
    slices = {e2: _u_divexact(p, u, g) for e2, u in _b_slices(A).items()}
    return _b_from_slices(slices)


def _b_prem2(p, A, B):
    """Pseudo-remainder of A by B with respect to t2."""
    dB = _b_deg2(B)
    lB = _b_slices(B)[dB]
    R = dict(A)
    while R:
        dR = _b_deg2(R)
        if dR < dB:
            break
        lR = _b_slices(R)[dR]
        R = _b_add(p, _b_mul_u(p, R, lB),
                   _b_neg(p, _b_mul_u(p, _b_shift2(B, dR - dB), lR)))
    return R


def _b_gcd(p, A, B):
    A, B = _b_trim(A), _b_trim(B)
    if not A:
        return B
    if not B:
        return A
    cA, cB = _b_content2(p, A), _b_content2(p, B)
    A, B = _b_primitive2(p, A), _b_primitive2(p, B)
    if _b_deg2(A) < _b_deg2(B):
        A, B = B, A
    while B:
        R = _b_primitive2(p, _b_prem2(p, A, B))
        A, B = B, R
        if A and B and _b_deg2(A) < _b_deg2(B):
            A, B = B, A
    g = _b_mul_u(p, A, _u_gcd(p, cA, cB))
    lead = max(g, key=lambda e: (e[1], e[0]))
    inv = pow(g[lead], p - 2, p)
    return {e: (c * inv) % p for e, c in g.items()}


def _b_divexact(p, A, B):
    """Exact quotient A/B using lex (t2, t1) leading terms."""
    assert B, "bivariate division by zero"
    key = lambda e: (e[1], e[0])
    lB = max(B, key=key)
    invB = pow(B[lB], p - 2, p)
    R = dict(A)
    Q = {}
    while R:
        lR = max(R, key=key)
        e = (lR[0] - lB[0], lR[1] - lB[1])
        assert e[0] >= 0 and e[1] >= 0, "inexact bivariate division"
        c = (R[lR] * invB) % p
        Q[e] = c
        for eB, cB in B.items():
            ee = (e[0] + eB[0], e[1] + eB[1])
            R[ee] = (R.get(ee, 0) - c * cB) % p
            if not R[ee]:
                del R[ee]
    return _b_trim(Q)


# ----- scalars of the iterated Laurent field --------------------------------------


class Scalar2D:
    """Fraction of bivariate polynomials over F_p, gcd-reduced, monic denominator."""

    __slots__ = ("p", "num", "den")

    def __init__(self, p, num, den=None):
        if den is None:
            den = {(0, 0): 1}
        num = _b_trim({e: c % p for e, c in num.items()})
        den = _b_trim({e: c % p for e, c in den.items()})
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = {(0, 0): 1}
        else:
            g = _b_gcd(p, num, den)
            if g != {(0, 0): 1}:
                num = _b_divexact(p, num, g)
                den = _b_divexact(p, den, g)
            lead = max(den, key=lambda e: (e[1], e[0]))
            inv = pow(den[lead], p - 2, p)
            if inv != 1:
                num = {e: (c * inv) % p for e, c in num.items()}
                den = {e: (c * inv) % p for e, c in den.items()}
        self.p = p
        self.num = num
        self.den = den

    # construction -------------------------------------------------------------

    @classmethod
    def const(cls, p, c):
        return cls(p, {(0, 0): c % p})

    @classmethod
    def t1(cls, p):
        return cls(p, {(1, 0): 1})

    @classmethod
    def t2(cls, p):
        return cls(p, {(0, 1): 1})

    @classmethod
    def monomial(cls, p, i, j, coeff=1):
        num = {(max(i, 0), max(j, 0)): coeff}
        den = {(max(-i, 0), max(-j, 0)): 1}
        return cls(p, num, den)

    # predicates ---------------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return not self.is_zero()

    # arithmetic ---------------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return Scalar2D.const(self.p, other)
        assert self.p == other.p, "mixed characteristics"
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.p
        num = _b_add(p, _b_mul(p, self.num, other.den), _b_mul(p, other.num, self.den))
        return Scalar2D(p, num, _b_mul(p, self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return self + (-other)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Scalar2D(self.p, _b_neg(self.p, self.num), self.den)

    def __mul__(self, other):
        other = self._check(other)
        p = self.p
        return Scalar2D(p, _b_mul(p, self.num, other.num), _b_mul(p, self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return Scalar2D(self.p, self.den, self.num)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar2D.const(self.p, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar2D.const(self.p, other)
        if not isinstance(other, Scalar2D):
            return NotImplemented
        # equality decided by cross-multiplication
        return _b_mul(self.p, self.num, other.den) == _b_mul(self.p, other.num, self.den)

    __hash__ = None

    def __repr__(self):
        return f"Scalar2D({scalar_to_str(self)!r}, p={self.p})"


# ----- valuations, residues, tame symbol ------------------------------------------


def _lc2(A):
    """Leading t2-coefficient: the slice at the lowest t2-order."""
    return _b_slices(A)[_b_ord2(A)]


def valuations(f: Scalar2D):
    """(v2, v1): t2-adic order, then t1-adic order of the leading t2-coefficient."""
    if f.is_zero():
        raise ZeroValuation("valuation of zero")
    v2 = _b_ord2(f.num) - _b_ord2(f.den)
    v1 = min(_lc2(f.num)) - min(_lc2(f.den))
    return (v2, v1)


def residue2(f: Scalar2D) -> Scalar2D:
    """Image in F_p(t1) of an element with nonnegative t2-valuation."""
    if f.is_zero():
        return f
    v2, _ = valuations(f)
    if v2 < 0:
        raise ValueError("residue undefined: negative t2-valuation")
    if v2 > 0:
        return Scalar2D.const(f.p, 0)
    num = {(e1, 0): c for e1, c in _lc2(f.num).items()}
    den = {(e1, 0): c for e1, c in _lc2(f.den).items()}
    return Scalar2D(f.p, num, den)


def in_OK(f: Scalar2D) -> bool:
    """Membership in the rank-two ring of integers."""
    if f.is_zero():
        return True
    return valuations(f) >= (0, 0)


def tame_symbol(f: Scalar2D, g: Scalar2D) -> Scalar2D:
    if f.is_zero() or g.is_zero():
        raise ZeroArgument("tame symbol of zero")
    v2f, _ = valuations(f)
    v2g, _ = valuations(g)
    t = (f ** v2g) / (g ** v2f)
    r = residue2(t)
    if (v2f * v2g) % 2:
        r = -r
    return r


def pairing_via_valuation(f: Scalar2D, g: Scalar2D) -> int:
    return valuations(tame_symbol(f, g))[1]


# ----- expression parser -----------------------------------------------------------


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens = []
        self._scan()
        self.index = 0

    def _error(self, msg, line, col):
        raise ParseError(msg, line, col)

    def _scan(self):
        text = self.text
        i = 0
        line, col = 1, 1
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                i += 1
                line += 1
                col = 1
                continue
            if ch.isspace():
                i += 1
                col += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", int(text[i:j]), line, col))
                col += j - i
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                name = text[i:j]
                if name not in ("t1", "t2"):
                    self._error(f"unknown name {name!r}", line, col)
                self.tokens.append(("name", name, line, col))
                col += j - i
                i = j
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, ch, line, col))
                i += 1
                col += 1
                continue
            self._error(f"unexpected character {ch!r}", line, col)
        self.tokens.append(("end", None, line, col))

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        return tok


def parse_scalar(text: str, p: int) -> Scalar2D:
    """Parse an expression in t1, t2 over F_p.

    Grammar: expr := ['-'] term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
    factor := coeff | 't1' | 't2' | '(' expr ')' | factor '^' int.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    tz = _Tokenizer(text)
    result = _parse_expr(tz, p)
    tok = tz.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected trailing token {tok[1]!r}", tok[2], tok[3])
    return result


def _parse_expr(tz, p):
    negate = False
    if tz.peek()[0] == "-":
        tz.next()
        negate = True
    value = _parse_term(tz, p)
    if negate:
        value = -value
    while tz.peek()[0] in ("+", "-"):
        op = tz.next()[0]
        rhs = _parse_term(tz, p)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_term(tz, p):
    value = _parse_factor(tz, p)
    while tz.peek()[0] in ("*", "/"):
        op = tz.next()[0]
        rhs = _parse_factor(tz, p)
        if op == "*":
            value = value * rhs
        else:
            if rhs.is_zero():
                tok = tz.peek()
                raise ParseError("division by zero", tok[2], tok[3])
            value = value / rhs
    return value


def _parse_factor(tz, p):
    value = _parse_primary(tz, p)
    while tz.peek()[0] == "^":
        tz.next()
        sign = 1
        if tz.peek()[0] == "-":
            tz.next()
            sign = -1
        tok = tz.expect("int")
        value = value ** (sign * tok[1])
    return value


def _parse_primary(tz, p):
    tok = tz.next()
    if tok[0] == "int":
        return Scalar2D.const(p, tok[1])
    if tok[0] == "name":
        return Scalar2D.t1(p) if tok[1] == "t1" else Scalar2D.t2(p)
    if tok[0] == "(":
        value = _parse_expr(tz, p)
        tz.expect(")")
        return value
    raise ParseError(f"unexpected token {tok[1]!r}", tok[2], tok[3])


def _poly_to_str(P):
    if not P:
        return "0"
    parts = []
    for (e1, e2) in sorted(P):
        c = P[(e1, e2)]
        atoms = []
        if c != 1 or (e1 == 0 and e2 == 0):
            atoms.append(str(c))
        if e1:
            atoms.append("t1" if e1 == 1 else f"t1^{e1}")
        if e2:
            atoms.append("t2" if e2 == 1 else f"t2^{e2}")
        parts.append("*".join(atoms))
    return " + ".join(parts)


def scalar_to_str(f: Scalar2D) -> str:
    if f.den == {(0, 0): 1}:
        return _poly_to_str(f.num)
    return f"({_poly_to_str(f.num)})/({_poly_to_str(f.den)})"


# ----- 2x2 matrices and the triangular subgroups -----------------------------------


class Matrix2D:
    """2x2 matrix over F_p(t1)(t2) with cached determinant."""

    __slots__ = ("p", "entries", "_det")

    def __init__(self, entries):
        rows = tuple(tuple(row) for row in entries)
        assert len(rows) == 2 and all(len(r) == 2 for r in rows)
        self.p = rows[0][0].p
        self.entries = rows
        self._det = None

    @property
    def det(self):
        if self._det is None:
            (a, b), (c, d) = self.entries
            self._det = a * d - b * c
        return self._det

    def __mul__(self, other):
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return Matrix2D(((a * e + b * g, a * f + b * h),
                         (c * e + d * g, c * f + d * h)))

    def __eq__(self, other):
        return all(self.entries[i][j] == other.entries[i][j]
                   for i in range(2) for j in range(2))

    __hash__ = None

    def __repr__(self):
        return f"Matrix2D({[[scalar_to_str(x) for x in row] for row in self.entries]})"

    @classmethod
    def identity(cls, p):
        one, zero = Scalar2D.const(p, 1), Scalar2D.const(p, 0)
        return cls(((one, zero), (zero, one)))

    @classmethod
    def lower(cls, m):
        p = m.p
        one, zero = Scalar2D.const(p, 1), Scalar2D.const(p, 0)
        return cls(((one, zero), (m, one)))

    @classmethod
    def upper(cls, y):
        p = y.p
        one, zero = Scalar2D.const(p, 1), Scalar2D.const(p, 0)
        return cls(((one, y), (zero, one)))

    @classmethod
    def torus(cls, u):
        p = u.p
        zero = Scalar2D.const(p, 0)
        return cls(((u, zero), (zero, u.inverse())))

    @classmethod
    def weyl(cls, p):
        one, zero = Scalar2D.const(p, 1), Scalar2D.const(p, 0)
        return cls(((zero, one), (-one, zero)))


_SUBGROUPS = ("D0", "D1", "D2")


def _which_name(which):
    if isinstance(which, int):
        which = f"D{which}"
    if which not in _SUBGROUPS:
        raise ValueError(f"unknown subgroup {which!r}")
    return which


def _val_or_none(x):
    return None if x.is_zero() else valuations(x)


def in_subgroup(g: Matrix2D, which) -> bool:
    which = _which_name(which)
    if g.det != 1:
        raise NotUnimodular("determinant must be 1")
    (a, b), (c, d) = g.entries
    va, vb, vc, vd = map(_val_or_none, (a, b, c, d))
    if which == "D2":
        return vc is None and va == (0, 0)
    if which == "D1":
        entries_ok = all(v is None or v[0] >= 0 for v in (va, vb, vc, vd))
        return (entries_ok and (vc is None or vc[0] >= 1)
                and va == (0, 0) and vd == (0, 0))
    # D0: the Iwahori of the rank-two valuation
    entries_ok = all(v is None or v >= (0, 0) for v in (va, vb, vc, vd))
    return entries_ok and (vc is None or vc >= (0, 1))


def _legal_lower(side, v):
    if side == 0:
        return v >= (0, 1)
    if side == 1:
        return v[0] >= 1
    return False


def _legal_upper(side, v):
    if side == 0:
        return v >= (0, 0)
    if side == 1:
        return v[0] >= 0
    return True


@dataclass(frozen=True)
class DoubleWeylIndex:
    """Translation exponents (t1, t2) and finite Weyl part 'e' or 's'."""

    translation: tuple
    finite: str


def representative(p, index: DoubleWeylIndex) -> Matrix2D:
    i, j = index.translation
    pi = Scalar2D.monomial(p, i, j)
    zero = Scalar2D.const(p, 0)
    if index.finite == "e":
        return Matrix2D(((pi, zero), (zero, pi.inverse())))
    return Matrix2D(((zero, pi), (-pi.inverse(), zero)))


def coset_invariant(g: Matrix2D, i, j) -> DoubleWeylIndex:
    """Double-coset label of g for the pair of subgroups (D_i, D_j)."""
    if g.det != 1:
        raise NotUnimodular("determinant must be 1")
    i = int(_which_name(i)[1])
    j = int(_which_name(j)[1])
    p = g.p

    def left(move):
        nonlocal g
        assert in_subgroup(move, f"D{i}"), "illegal left move"
        g = move * g

    def right(move):
        nonlocal g
        assert in_subgroup(move, f"D{j}"), "illegal right move"
        g = g * move

    def vsub(u, v):
        return (u[0] - v[0], u[1] - v[1])

    def vadd(u, v):
        return (u[0] + v[0], u[1] + v[1])

    steps = 0
    while True:
        (a, b), (c, d) = g.entries
        diag = b.is_zero() and c.is_zero()
        anti = a.is_zero() and d.is_zero()
        if diag or anti:
            break
        steps += 1
        assert steps <= 16, "coset reduction failed to terminate"
        va, vb, vc, vd = map(_val_or_none, (a, b, c, d))
        if vc is None:
            # upper triangular, b nonzero
            if _legal_upper(j, vsub(vb, va)):
                right(Matrix2D.upper(-b / a))
            elif _legal_upper(i, vadd(va, vb)):
                left(Matrix2D.upper(-a * b))
            else:
                right(Matrix2D.lower(-a / b))
        elif vb is None:
            # lower triangular
            if _legal_lower(i, vsub(vc, va)):
                left(Matrix2D.lower(-c / a))
            elif _legal_lower(j, vadd(vc, va)):
                right(Matrix2D.lower(-c * a))
            else:
                left(Matrix2D.upper(-a / c))
        elif va is None:
            # [[0, b], [c, d]] with d nonzero
            if _legal_lower(i, vsub(vd, vb)):
                left(Matrix2D.lower(-d / b))
            elif _legal_upper(j, vsub(vd, vc)):
                right(Matrix2D.upper(-d / c))
            else:
                left(Matrix2D.upper(-b / d))
        elif vd is None:
            # [[a, b], [c, 0]] with a nonzero
            if _legal_upper(i, vsub(va, vc)):
                left(Matrix2D.upper(-a / c))
            elif _legal_lower(j, vsub(va, vb)):
                right(Matrix2D.lower(-a / b))
            else:
                left(Matrix2D.lower(-c / a))
        else:
            # all entries nonzero
            if _legal_lower(i, vsub(vc, va)):
                left(Matrix2D.lower(-c / a))
            elif _legal_lower(j, vsub(vc, vd)):
                right(Matrix2D.lower(-c / d))
            else:
                left(Matrix2D.upper(-a / c))

    (a, b), (c, d) = g.entries
    if b.is_zero() and c.is_zero():
        v2, v1 = valuations(a)
        pi = Scalar2D.monomial(p, v1, v2)
        left(Matrix2D.torus(pi / a))
        index = DoubleWeylIndex((v1, v2), "e")
    else:
        v2, v1 = valuations(b)
        pi = Scalar2D.monomial(p, v1, v2)
        left(Matrix2D.torus(pi / b))
        index = DoubleWeylIndex((v1, v2), "s")
    assert g == representative(p, index), "normalization failed"
    return index


# ----- pseudorandom subgroup elements ----------------------------------------------


def _rand_unit(rng, p):
    num = {(0, 0): 1}
    for _ in range(rng.randrange(0, 3)):
        e1 = rng.randrange(0, 3)
        e2 = rng.randrange(0, 3)
        if (e2, e1) == (0, 0):
            e2 = 1
        num[(e1, e2)] = rng.randrange(1, p)
    u = Scalar2D(p, num)
    if rng.random() < 0.3:
        den = {(0, 0): 1}
        for _ in range(rng.randrange(1, 3)):
            e1 = rng.randrange(0, 3)
            e2 = rng.randrange(0, 3)
            if (e2, e1) == (0, 0):
                e1 = 1
            den[(e1, e2)] = rng.randrange(1, p)
        u = u / Scalar2D(p, den)
    return u


def _rand_in(rng, p, kind):
    if kind == "unit":
        return _rand_unit(rng, p)
    if kind == "OK":
        e2 = rng.randrange(0, 3)
        e1 = rng.randrange(0, 3) if e2 == 0 else rng.randrange(-1, 3)
    elif kind == "mK":
        e2 = rng.randrange(0, 3)
        e1 = rng.randrange(1, 3) if e2 == 0 else rng.randrange(-1, 3)
    elif kind == "v2pos":
        e2 = rng.randrange(1, 3)
        e1 = rng.randrange(-2, 3)
    elif kind == "v2nonneg":
        e2 = rng.randrange(0, 3)
        e1 = rng.randrange(-2, 3)
    elif kind == "any":
        e2 = rng.randrange(-2, 3)
        e1 = rng.randrange(-2, 3)
    else:
        raise AssertionError(kind)
    coeff = rng.randrange(1, p)
    return Scalar2D.monomial(p, e1, e2, coeff) * _rand_unit(rng, p)


_GENERATOR_KINDS = {
    "D0": (("lower", "mK"), ("upper", "OK"), ("torus", "unit")),
    "D1": (("lower", "v2pos"), ("upper", "v2nonneg"), ("torus", "unit")),
    "D2": (("upper", "any"), ("torus", "unit")),
}


def sample_subgroup(p, which, seed, complexity) -> Matrix2D:
    """Deterministic pseudorandom product of `complexity` elementary generators."""
    which = _which_name(which)
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    rng = random.Random(f"{which}:{p}:{seed}")
    g = Matrix2D.identity(p)
    for _ in range(complexity):
        shape, kind = rng.choice(_GENERATOR_KINDS[which])
        x = _rand_in(rng, p, kind)
        if shape == "lower":
            factor = Matrix2D.lower(x)
        elif shape == "upper":
            factor = Matrix2D.upper(x)
        else:
            factor = Matrix2D.torus(x)
        assert in_subgroup(factor, which)
        g = g * factor
    assert in_subgroup(g, which)
    return g


def sample_sl2(p, seed, complexity) -> Matrix2D:
    """Deterministic pseudorandom unimodular matrix (no subgroup constraint)."""
    rng = random.Random(f"SL2:{p}:{seed}")
    g = Matrix2D.identity(p)
    for _ in range(complexity):
        roll = rng.random()
        if roll < 0.3:
            g = g * Matrix2D.weyl(p)
        elif roll < 0.65:
            g = g * Matrix2D.lower(_rand_in(rng, p, "any"))
        else:
            g = g * Matrix2D.upper(_rand_in(rng, p, "any"))
    assert g.det == 1
    return g


def matrix_from_strings(rows, p) -> Matrix2D:
    return Matrix2D(tuple(tuple(parse_scalar(s, p) for s in row) for row in rows))


def matrix_to_strings(g: Matrix2D):
    return [[scalar_to_str(x) for x in row] for row in g.entries]
