"""Cone-supported Laurent series and certified rational re-expansion.

A rational function is a Laurent polynomial over Q(q) divided by a formal
product of binomials 1 - c*t^beta.  Expanding in a strictly convex cone
picks, factor by factor, the geometric direction whose support stays in
the cone (rewriting 1 - c*t^beta as -c*t^beta*(1 - t^-beta/c) when needed),
and multiplies everything out by truncated convolution.  Every expansion
can be certified by multiplying back by the denominator and comparing with
the numerator through the truncation order.
"""

from __future__ import annotations

from math import comb

from .cones import RationalCone, _dot
from .qfraction import ONE, QFraction


class ConeMismatch(ValueError):
    """Convolution operands live in incomparable cones."""


class InsufficientTruncation(ValueError):
    """Operand is not complete far enough for the requested order."""


class NotExpandableInCone(ValueError):
    """A denominator direction (or the numerator support) does not fit the cone."""


class DegenerateFactor(ValueError):
    """A denominator factor vanishes identically."""


def _vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _vsub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _vneg(x):
    return tuple(-a for a in x)


def _vscale(k, x):
    return tuple(k * a for a in x)


def _lexpos(beta):
    for x in beta:
        if x > 0:
            return True
        if x < 0:
            return False
    return False


def _as_qfraction(c):
    return c if isinstance(c, QFraction) else QFraction.const(c)


# ----- rational functions -----------------------------------------------------------


class RationalFn:
    """Laurent numerator over Q(q) divided by a product of binomials 1 - c*t^beta.

    Denominator factors are canonicalized to lexicographically positive
    directions, constants are absorbed into the numerator, and factors that
    divide the numerator exactly are cancelled, so a value is a Laurent
    polynomial exactly when no factors remain.
    """

    __slots__ = ("dim", "num", "factors")

    def __init__(self, dim, num, factors=(), simplify=True):
        num = {tuple(e): _as_qfraction(c) for e, c in num.items() if _as_qfraction(c)}
        merged = {}
        scale = ONE
        shift = (0,) * dim if dim is not None else None

        def add_factor(c, beta, m):
            nonlocal scale, shift
            c = _as_qfraction(c)
            beta = tuple(beta)
            if m == 0 or c.is_zero():
                return
            if not any(beta):
                if c.is_one():
                    raise DegenerateFactor("factor 1 - t^0 vanishes identically")
                scale = scale * (ONE - c) ** m
                return
            if not _lexpos(beta):
                # 1 - c t^beta = (-c) t^beta (1 - c^-1 t^-beta)
                scale = scale * (-c) ** m
                shift = _vadd(shift, _vscale(m, beta))
                c = c.inverse()
                beta = _vneg(beta)
            key = (beta, c)
            merged[key] = merged.get(key, 0) + m

        for c, beta, m in factors:
            add_factor(c, beta, m)
        if shift is not None and (any(shift) or not scale.is_one()):
            inv = scale.inverse()
            num = {_vsub(e, shift): v * inv for e, v in num.items()}
        self.dim = dim
        self.num = num
        self.factors = tuple(sorted(((c, beta, m) for (beta, c), m in merged.items() if m),
                                    key=lambda f: (f[1], f[0].sort_key(), f[2])))
        if simplify and self.factors and self.num:
            self._simplify()

    def _simplify(self):
        factors = list(self.factors)
        num = self.num
        changed = True
        while changed and num:
            changed = False
            for idx, (c, beta, m) in enumerate(factors):
                quotient = _div_binomial(num, c, beta)
                if quotient is not None:
                    num = quotient
                    if m == 1:
                        factors.pop(idx)
                    else:
                        factors[idx] = (c, beta, m - 1)
                    changed = True
                    break
        self.num = num
        self.factors = tuple(factors) if num else ()
        if not num:
            self.num = {}

    # construction -------------------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim, {})

    @classmethod
    def one(cls, dim):
        return cls(dim, {(0,) * dim: ONE})

    @classmethod
    def from_scalar(cls, dim, c):
        return cls(dim, {(0,) * dim: _as_qfraction(c)})

    @classmethod
    def monomial(cls, dim, exp, coeff=ONE):
        return cls(dim, {tuple(exp): _as_qfraction(coeff)})

    @classmethod
    def from_laurent(cls, dim, num):
        return cls(dim, num)

    # predicates ---------------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return not self.is_zero()

    def is_laurent(self):
        return not self.factors

    def laurent_coefficients(self):
        if self.factors:
            raise ValueError("value is not a Laurent polynomial")
        return dict(self.num)

    # arithmetic ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, QFraction)):
            other = RationalFn.from_scalar(self.dim, other)
        assert self.dim == other.dim, "mixed exponent dimensions"
        return other

    def den_poly(self):
        """The denominator expanded as a Laurent polynomial."""
        out = {(0,) * self.dim: ONE}
        for c, beta, m in self.factors:
            for _ in range(m):
                nxt = {}
                for e, v in out.items():
                    nxt[e] = nxt.get(e, ONE - ONE) + v
                    shifted = _vadd(e, beta)
                    nxt[shifted] = nxt.get(shifted, ONE - ONE) - v * c
                out = {e: v for e, v in nxt.items() if v}
        return out

    def _extra_factors(self, target):
        """Laurent polynomial for the factors of `target` missing from self."""
        mine = {(beta, c): m for c, beta, m in self.factors}
        out = {(0,) * self.dim: ONE}
        for c, beta, m in target:
            deficit = m - mine.get((beta, c), 0)
            for _ in range(max(deficit, 0)):
                nxt = {}
                for e, v in out.items():
                    nxt[e] = nxt.get(e, ONE - ONE) + v
                    shifted = _vadd(e, beta)
                    nxt[shifted] = nxt.get(shifted, ONE - ONE) - v * c
                out = {e: v for e, v in nxt.items() if v}
        return out

    def __add__(self, other):
        other = self._coerce(other)
        union = {}
        for c, beta, m in self.factors:
            union[(beta, c)] = max(union.get((beta, c), 0), m)
        for c, beta, m in other.factors:
            union[(beta, c)] = max(union.get((beta, c), 0), m)
        target = tuple((c, beta, m) for (beta, c), m in union.items())
        n1 = _laurent_mul(self.num, self._extra_factors(target))
        n2 = _laurent_mul(other.num, other._extra_factors(target))
        num = dict(n1)
        for e, v in n2.items():
            s = num.get(e, ONE - ONE) + v
            if s:
                num[e] = s
            elif e in num:
                del num[e]
        return RationalFn(self.dim, num, target)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return RationalFn(self.dim, {e: -v for e, v in self.num.items()},
                          self.factors, simplify=False)

    def __mul__(self, other):
        other = self._coerce(other)
        factors = list(self.factors) + list(other.factors)
        return RationalFn(self.dim, _laurent_mul(self.num, other.num), factors)

    __rmul__ = __mul__

    def scale(self, c):
        c = _as_qfraction(c)
        if c.is_zero():
            return RationalFn.zero(self.dim)
        return RationalFn(self.dim, {e: v * c for e, v in self.num.items()},
                          self.factors, simplify=False)

    def divide_by_binomial(self, c, beta, m=1):
        return RationalFn(self.dim, self.num, list(self.factors) + [(c, beta, m)])

    def substitute(self, matrix):
        """Apply an integer exponent substitution t^mu -> t^(M mu)."""
        num = {}
        for e, v in self.num.items():
            me = tuple(sum(row[k] * e[k] for k in range(self.dim)) for row in matrix)
            num[me] = num.get(me, ONE - ONE) + v
        num = {e: v for e, v in num.items() if v}
        factors = [(c, tuple(sum(row[k] * beta[k] for k in range(self.dim)) for row in matrix), m)
                   for c, beta, m in self.factors]
        return RationalFn(self.dim, num, factors)

    def __eq__(self, other):
        if isinstance(other, (int, QFraction)):
            other = RationalFn.from_scalar(self.dim, other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        lhs = _laurent_mul(self.num, other.den_poly())
        rhs = _laurent_mul(other.num, self.den_poly())
        return lhs == rhs

    __hash__ = None

    def __repr__(self):
        return f"RationalFn({rational_fn_to_str(self)!r})"


def _laurent_mul(a, b):
    out = {}
    for e1, v1 in a.items():
        for e2, v2 in b.items():
            e = _vadd(e1, e2)
            s = out.get(e, ONE - ONE) + v1 * v2
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _div_binomial(num, c, beta):
    """Exact quotient num / (1 - c t^beta), or None when not divisible."""
    if not num:
        return {}
    phi = beta
    step = _dot(phi, beta)
    assert step > 0
    bound = max(_dot(phi, e) for e in num)
    rem = dict(num)
    quot = {}
    while rem:
        key = min(rem, key=lambda e: (_dot(phi, e), e))
        if _dot(phi, key) + step > bound:
            return None
        v = rem.pop(key)
        quot[key] = v
        up = _vadd(key, beta)
        s = rem.get(up, ONE - ONE) + v * c
        if s:
            rem[up] = s
        elif up in rem:
            del rem[up]
    return quot


# ----- cone-supported truncated series ----------------------------------------------


class ConeSeries:
    """Coefficients supported in shift + cone, complete through a grading order.

    order None means the series is exact (a Laurent polynomial known in full).
    """

    __slots__ = ("cone", "shift", "coeffs", "h", "order")

    def __init__(self, cone, shift, coeffs, order):
        self.cone = cone
        self.shift = tuple(shift)
        self.h = cone.positive_functional()
        clean = {}
        for e, v in coeffs.items():
            v = _as_qfraction(v)
            if not v:
                continue
            e = tuple(e)
            rel = _vsub(e, self.shift)
            assert cone.member(rel), "series key outside its cone"
            if order is not None:
                assert _dot(self.h, rel) <= order, "series key beyond truncation"
            clean[e] = v
        self.coeffs = clean
        self.order = order

    def grade(self, e):
        return _dot(self.h, _vsub(e, self.shift))

    @classmethod
    def zero(cls, cone):
        return cls(cone, (0,) * cone.dim, {}, None)

    @classmethod
    def delta(cls, cone, exp=None, coeff=ONE):
        exp = tuple(exp) if exp is not None else (0,) * cone.dim
        return cls(cone, exp, {exp: coeff}, None)

    @classmethod
    def from_laurent(cls, cone, coeffs):
        """Exact series from a Laurent polynomial supported in a cone translate."""
        coeffs = {tuple(e): _as_qfraction(v) for e, v in coeffs.items() if _as_qfraction(v)}
        if not coeffs:
            return cls.zero(cone)
        shift = _laurent_shift(cone, coeffs)
        return cls(cone, shift, coeffs, None)

    def truncate(self, order):
        coeffs = {e: v for e, v in self.coeffs.items() if self.grade(e) <= order}
        eff = order if self.order is None else min(order, self.order)
        return ConeSeries(self.cone, self.shift, coeffs, eff)

    def convolve(self, other, order):
        f, g = self, other
        if f.cone.contains(g.cone):
            cone = f.cone
        elif g.cone.contains(f.cone):
            cone = g.cone
        else:
            raise ConeMismatch("cones are not nested")
        for s in (f, g):
            if order is not None and s.order is not None and s.order < order:
                raise InsufficientTruncation(
                    f"operand complete to {s.order}, requested {order}")
            if order is None and s.order is not None:
                raise InsufficientTruncation("exact convolution needs exact operands")
        shift = _vadd(f.shift, g.shift)
        h = cone.positive_functional()
        out = {}
        for e1, v1 in f.coeffs.items():
            g1 = _dot(h, _vsub(e1, f.shift))
            for e2, v2 in g.coeffs.items():
                if order is not None and g1 + _dot(h, _vsub(e2, g.shift)) > order:
                    continue
                e = _vadd(e1, e2)
                s = out.get(e, ONE - ONE) + v1 * v2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        eff = order
        if order is None:
            eff = None
        return ConeSeries(cone, shift, out, eff)

    def support(self):
        return sorted(self.coeffs)

    def to_json(self):
        terms = [{"exponent": list(e), "coeff": str(v)}
                 for e, v in sorted(self.coeffs.items())]
        return {
            "cone": self.cone.to_json(),
            "shift": list(self.shift),
            "h": list(self.h),
            "order": self.order,
            "terms": terms,
        }

    def __repr__(self):
        inner = ", ".join(f"t^{list(e)}: {v}" for e, v in sorted(self.coeffs.items()))
        return f"ConeSeries({{{inner}}}, order={self.order})"


def cone_series_from_json(doc):
    cone = RationalCone(doc["cone"])
    coeffs = {tuple(t["exponent"]): parse_qfraction(t["coeff"]) for t in doc["terms"]}
    return ConeSeries(cone, tuple(doc["shift"]), coeffs, doc["order"])


def _laurent_shift(cone, coeffs):
    """Integer translate placing a finite support inside the cone."""
    supp = sorted(coeffs)
    s0 = supp[0]
    for phi in cone.facets:
        if not any(_dot(phi, g) for g in cone.generators):
            # orthogonal-to-span direction: support must stay in the span
            for s in supp:
                if _dot(phi, _vsub(s, s0)):
                    raise NotExpandableInCone(
                        "numerator support leaves the span of the cone")
    z = (0,) * cone.dim
    for g in cone.generators:
        z = _vadd(z, g)
    k = 0
    for phi in cone.facets:
        pz = _dot(phi, z)
        if pz <= 0:
            continue
        for s in supp:
            val = _dot(phi, _vsub(s, s0))
            if val < 0:
                k = max(k, (-val + pz - 1) // pz)
    shift = _vsub(s0, _vscale(k, z))
    for s in supp:
        if not cone.member(_vsub(s, shift)):
            raise NotExpandableInCone("numerator support does not fit a cone translate")
    return shift


# ----- expansion of rational functions ----------------------------------------------


def _factor_series(c, beta, m, cone, order):
    """(1 - c t^beta)^{-m} expanded in the cone, complete through `order`."""
    h = cone.positive_functional()
    if cone.member(beta):
        step = _dot(h, beta)
        assert step > 0
        coeffs = {}
        k = 0
        while k * step <= order:
            coeffs[_vscale(k, beta)] = QFraction.const(comb(k + m - 1, m - 1)) * c ** k
            k += 1
        return ConeSeries(cone, (0,) * cone.dim, coeffs, order)
    if cone.member(_vneg(beta)):
        nb = _vneg(beta)
        step = _dot(h, nb)
        assert step > 0
        shift = _vscale(-m, beta)
        sign = QFraction.const(-1) ** m
        coeffs = {}
        k = 0
        while k * step <= order:
            exp = _vscale(-(k + m), beta)
            coeffs[exp] = sign * QFraction.const(comb(k + m - 1, m - 1)) * c ** (-(k + m))
            k += 1
        return ConeSeries(cone, shift, coeffs, order)
    raise NotExpandableInCone(f"direction {beta} incompatible with the cone")


def expand(fn: RationalFn, cone: RationalCone, order: int, verify: bool = True) -> ConeSeries:
    """Expand a rational function as a cone-supported series through `order`.

    With verify=True the result is multiplied back by the denominator and
    compared with the numerator through `order` before being returned.
    """
    if not cone.is_strictly_convex():
        raise NotExpandableInCone("cone is not strictly convex")
    if fn.is_zero():
        return ConeSeries.zero(cone)
    result = ConeSeries.from_laurent(cone, fn.num)
    for c, beta, m in fn.factors:
        result = result.convolve(_factor_series(c, beta, m, cone, order), order)
    if verify:
        _verify_expansion(fn, cone, result, order)
    return result


def _verify_expansion(fn, cone, series, order):
    den = ConeSeries.delta(cone)
    for c, beta, m in fn.factors:
        poly = {}
        for k in range(m + 1):
            poly[_vscale(k, beta)] = QFraction.const(comb(m, k)) * (-c) ** k
        den = den.convolve(ConeSeries.from_laurent(cone, poly), None)
    product = series.convolve(den, order)
    numerator = ConeSeries.from_laurent(cone, fn.num)
    h = product.h
    keys = set(product.coeffs) | set(numerator.coeffs)
    zero = ONE - ONE
    for e in keys:
        if _dot(h, _vsub(e, product.shift)) <= order:
            got = product.coeffs.get(e, zero)
            want = numerator.coeffs.get(e, zero)
            if got != want:
                raise AssertionError(
                    f"expansion check failed at t^{list(e)}: {got} != {want}")


def reexpand_check(fn: RationalFn, cone1: RationalCone, cone2: RationalCone, order: int):
    """Expand in two cones, certify both, and compare the supports."""
    s1 = expand(fn, cone1, order, verify=True)
    s2 = expand(fn, cone2, order, verify=True)
    sup1, sup2 = s1.support(), s2.support()
    return {
        "verified": True,
        "support_1": sup1,
        "support_2": sup2,
        "supports_differ": sup1 != sup2,
        "series_1": s1,
        "series_2": s2,
    }


# ----- text form and parser ----------------------------------------------------------


def _coeff_str(c: QFraction):
    s = str(c)
    if c.is_constant_term_only() and not c.is_negative_leading():
        return s, False
    return s, True


def rational_fn_to_str(fn: RationalFn) -> str:
    if fn.is_zero():
        return "0"
    parts = []
    for e, v in sorted(fn.num.items()):
        txt, parens = _coeff_str(v)
        mono = f"t[{','.join(str(x) for x in e)}]" if any(e) else ""
        if mono and v.is_one():
            term = mono
        elif mono:
            term = f"({txt})*{mono}" if parens else f"{txt}*{mono}"
        else:
            term = f"({txt})" if parens else txt
        parts.append(term)
    num = " + ".join(parts)
    if not fn.factors:
        return num
    dens = []
    for c, beta, m in fn.factors:
        ctxt, cparens = _coeff_str(c)
        cpart = "" if c.is_one() else (f"({ctxt})*" if cparens else f"{ctxt}*")
        base = f"(1 - {cpart}t[{','.join(str(x) for x in beta)}])"
        dens.append(base if m == 1 else f"{base}^{m}")
    if len(fn.num) > 1:
        num = f"({num})"
    return f"{num} / " + "*".join(dens)


class _FnTokenizer:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i, line, col = 0, 1, 1
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                i, line, col = i + 1, line + 1, 1
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
            if ch == "q":
                self.tokens.append(("q", "q", line, col))
                i += 1
                col += 1
                continue
            if ch == "t":
                self.tokens.append(("t", "t", line, col))
                i += 1
                col += 1
                continue
            if ch in "+-*/^()[],":
                self.tokens.append((ch, ch, line, col))
                i += 1
                col += 1
                continue
            raise ParseErrorFn(f"unexpected character {ch!r}", line, col)
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
            raise ParseErrorFn(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        return tok


class ParseErrorFn(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def parse_rational_fn(text: str, dim: int) -> RationalFn:
    """Parse 'num / (1 - c*t[beta])^m ...' expressions over Q(q)."""
    tz = _FnTokenizer(text)
    value = _fn_expr(tz, dim)
    tok = tz.peek()
    if tok[0] != "end":
        raise ParseErrorFn(f"unexpected trailing token {tok[1]!r}", tok[2], tok[3])
    return value


def parse_qfraction(text: str) -> QFraction:
    """Parse a plain rational expression in q."""
    fn = parse_rational_fn(text, 1)
    if fn.factors:
        raise ParseErrorFn("expected a pure q-expression", 1, 1)
    if not fn.num:
        return ONE - ONE
    zero_key = (0,)
    if set(fn.num) != {zero_key}:
        raise ParseErrorFn("expected a pure q-expression", 1, 1)
    return fn.num[zero_key]


def _fn_expr(tz, dim):
    negate = False
    if tz.peek()[0] == "-":
        tz.next()
        negate = True
    value = _fn_term(tz, dim)
    if negate:
        value = -value
    while tz.peek()[0] in ("+", "-"):
        op = tz.next()[0]
        rhs = _fn_term(tz, dim)
        value = value + rhs if op == "+" else value - rhs
    return value


def _fn_term(tz, dim):
    value = _fn_power(tz, dim)
    while tz.peek()[0] in ("*", "/"):
        op, _v, line, col = tz.next()
        rhs = _fn_power(tz, dim)
        if op == "*":
            value = value * rhs
        else:
            value = _fn_divide(value, rhs, line, col)
    return value


def _fn_divide(value, divisor, line, col):
    if divisor.is_zero():
        raise ParseErrorFn("division by zero", line, col)
    if not divisor.is_laurent():
        raise ParseErrorFn("nested fractions are not supported", line, col)
    num = divisor.num
    zero = (0,) * divisor.dim
    if len(num) == 1:
        [(e, c)] = num.items()
        shifted = {_vsub(k, e): v / c for k, v in value.num.items()}
        return RationalFn(value.dim, shifted, value.factors, simplify=False)
    if len(num) == 2:
        # c0 t^lo + c1 t^hi = c0 t^lo (1 - (-c1/c0) t^(hi-lo))
        lo, hi = sorted(num)
        c0, c1 = num[lo], num[hi]
        beta = _vsub(hi, lo)
        scaled = {_vsub(k, lo): v / c0 for k, v in value.num.items()}
        return RationalFn(value.dim, scaled,
                          list(value.factors) + [(-c1 / c0, beta, 1)])
    raise ParseErrorFn("denominators must be monomials or binomials", line, col)


def _fn_power(tz, dim):
    value = _fn_atom(tz, dim)
    while tz.peek()[0] == "^":
        tz.next()
        sign = 1
        if tz.peek()[0] == "-":
            tz.next()
            sign = -1
        tok = tz.expect("int")
        k = sign * tok[1]
        if k >= 0:
            out = RationalFn.one(dim)
            for _ in range(k):
                out = out * value
            value = out
        else:
            out = RationalFn.one(dim)
            for _ in range(-k):
                out = _fn_divide(out, value, tok[2], tok[3])
            value = out
    return value


def _fn_atom(tz, dim):
    tok = tz.next()
    if tok[0] == "int":
        return RationalFn.from_scalar(dim, QFraction.const(tok[1]))
    if tok[0] == "q":
        return RationalFn.from_scalar(dim, QFraction.q())
    if tok[0] == "t":
        tz.expect("[")
        exps = []
        while True:
            sign = 1
            if tz.peek()[0] == "-":
                tz.next()
                sign = -1
            exps.append(sign * tz.expect("int")[1])
            nxt = tz.next()
            if nxt[0] == "]":
                break
            if nxt[0] != ",":
                raise ParseErrorFn(f"expected ',' or ']', found {nxt[1]!r}", nxt[2], nxt[3])
        if len(exps) != dim:
            raise ParseErrorFn(f"exponent vector of length {len(exps)}, expected {dim}",
                               tok[2], tok[3])
        return RationalFn.monomial(dim, tuple(exps))
    if tok[0] == "(":
        value = _fn_expr(tz, dim)
        tz.expect(")")
        return value
    raise ParseErrorFn(f"unexpected token {tok[1]!r}", tok[2], tok[3])
