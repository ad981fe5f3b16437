"""Rational polyhedral cones with exact integer facet descriptions.

A cone is given by integer generators; facet functionals are recovered by
enumerating supporting hyperplanes spanned by generators, plus a pair of
opposite functionals for every direction orthogonal to the linear span.
Membership, strict convexity, and unimodular images are all exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _primitive(vec):
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = 1
    for x in vec:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _independent_subset(rows):
    """Indices of a maximal linearly independent subset of integer vectors."""
    reduced = []  # list of (pivot_col, row as Fractions)
    chosen = []
    for idx, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        for pc, pr in reduced:
            if r[pc]:
                f = r[pc] / pr[pc]
                r = [a - f * b for a, b in zip(r, pr)]
        pivot = next((k for k, x in enumerate(r) if x), None)
        if pivot is not None:
            reduced.append((pivot, r))
            chosen.append(idx)
    return chosen


def _nullspace(rows, dim):
    """Primitive integer basis of {y : row . y = 0 for every row}."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = {}  # col -> reduced row
    for row in mat:
        r = list(row)
        for pc, pr in pivots.items():
            if r[pc]:
                f = r[pc] / pr[pc]
                r = [a - f * b for a, b in zip(r, pr)]
        pivot = next((k for k, x in enumerate(r) if x), None)
        if pivot is not None:
            pivots[pivot] = r
    free_cols = [k for k in range(dim) if k not in pivots]
    basis = []
    for fc in free_cols:
        y = [Fraction(0)] * dim
        y[fc] = Fraction(1)
        for pc in sorted(pivots, reverse=True):
            pr = pivots[pc]
            s = sum(pr[k] * y[k] for k in range(dim) if k != pc)
            y[pc] = -s / pr[pc]
        basis.append(_primitive(y))
    return basis


def _solve_combination(cols, target):
    """Solve sum c_k * cols[k] = target exactly; None when inconsistent."""
    d = len(target)
    m = len(cols)
    aug = [[Fraction(cols[k][i]) for k in range(m)] + [Fraction(target[i])] for i in range(d)]
    pivot_cols = []
    row = 0
    for col in range(m):
        sel = next((r for r in range(row, d) if aug[r][col]), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(d):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivot_cols.append(col)
        row += 1
        if row == d:
            break
    sol = [Fraction(0)] * m
    for r, col in enumerate(pivot_cols):
        sol[col] = aug[r][m]
    for r in range(d):
        lhs = sum(Fraction(cols[k][r]) * sol[k] for k in range(m))
        if lhs != target[r]:
            return None
    return sol


class RationalCone:
    """Finitely generated cone in Z^d with cached facet functionals."""

    def __init__(self, generators):
        gens = []
        seen = set()
        dim = None
        for g in generators:
            t = tuple(int(x) for x in g)
            if dim is None:
                dim = len(t)
            elif len(t) != dim:
                raise ValueError("generators of mixed dimension")
            if any(t):
                t = _primitive(t)
                if t not in seen:
                    seen.add(t)
                    gens.append(t)
        if dim is None:
            raise ValueError("at least one generator (possibly zero) is required")
        self.dim = dim
        self.generators = tuple(sorted(gens))
        self.facets = self._compute_facets()
        for g in self.generators:
            assert all(_dot(phi, g) >= 0 for phi in self.facets)

    def _compute_facets(self):
        d = self.dim
        gens = self.generators
        if not gens:
            out = []
            for k in range(d):
                e = tuple(1 if i == k else 0 for i in range(d))
                out.append(e)
                out.append(tuple(-x for x in e))
            return tuple(out)
        facets = []
        # directions orthogonal to the span pin the series support to the span
        for phi in _nullspace(gens, d):
            facets.append(phi)
            facets.append(tuple(-x for x in phi))
        basis_idx = _independent_subset(gens)
        r = len(basis_idx)
        if r == 1:
            g0 = gens[basis_idx[0]]
            opposite = False
            for g in gens:
                c = _solve_combination([g0], g)
                assert c is not None
                if c[0] < 0:
                    opposite = True
            if not opposite:
                facets.append(g0)
            return tuple(dict.fromkeys(facets))
        basis = [gens[i] for i in basis_idx]
        coords = []
        for g in gens:
            c = _solve_combination(basis, g)
            assert c is not None, "generator outside its own span"
            coords.append(c)
        # candidate facets: hyperplanes through r-1 independent generators
        inner = set()
        for subset in combinations(range(len(gens)), r - 1):
            sub = [coords[i] for i in subset]
            null = _nullspace(sub, r)
            if len(null) != 1:
                continue
            y = null[0]
            vals = [_dot(y, c) for c in coords]
            if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                inner.add(y)
            elif all(v <= 0 for v in vals) and any(v < 0 for v in vals):
                inner.add(tuple(-x for x in y))
        # lift span-coordinate functionals back to the ambient lattice:
        # phi(x) = y . coords(x) where coords solves basis-combination
        bt_b = [[_dot(basis[i], basis[j]) for j in range(r)] for i in range(r)]
        for y in sorted(inner):
            rhs = list(y)
            lift_coeffs = _solve_combination(
                [tuple(bt_b[i][j] for i in range(r)) for j in range(r)], rhs
            )
            assert lift_coeffs is not None
            phi = [sum(Fraction(lift_coeffs[k]) * basis[k][i] for k in range(r)) for i in range(d)]
            facets.append(_primitive(phi))
        return tuple(dict.fromkeys(facets))

    def member(self, x):
        x = tuple(x)
        return all(_dot(phi, x) >= 0 for phi in self.facets)

    def is_strictly_convex(self):
        return all(not self.member(tuple(-c for c in g)) for g in self.generators)

    def image(self, matrix):
        return RationalCone(
            [tuple(_dot(row, g) for row in matrix) for g in self.generators]
            or [(0,) * len(matrix)]
        )

    def contains(self, other):
        return all(self.member(g) for g in other.generators)

    def positive_functional(self):
        """Integer functional strictly positive on the cone away from 0."""
        h = [0] * self.dim
        for phi in self.facets:
            h = [a + b for a, b in zip(h, phi)]
        return tuple(h)

    def member_by_generators(self, x):
        """Independent oracle: x is a nonnegative combination of generators."""
        x = tuple(int(v) for v in x)
        if not any(x):
            return True
        gens = self.generators
        idx = _independent_subset(gens)
        r = len(idx)
        for size in range(1, r + 1):
            for subset in combinations(range(len(gens)), size):
                sub = [gens[i] for i in subset]
                if len(_independent_subset(sub)) != size:
                    continue
                c = _solve_combination(sub, x)
                if c is not None and all(v >= 0 for v in c):
                    return True
        return False

    def __eq__(self, other):
        if not isinstance(other, RationalCone):
            return NotImplemented
        return self.dim == other.dim and self.contains(other) and other.contains(self)

    __hash__ = None

    def __repr__(self):
        return f"RationalCone({list(self.generators)})"

    def to_json(self):
        return [list(g) for g in self.generators] or [[0] * self.dim]


def from_generators(vectors):
    return RationalCone(vectors)
