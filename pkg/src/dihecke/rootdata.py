"""Root systems, finite and affine Weyl groups, and dominant affine cones.

The coweight lattice of a split simple simply connected group is its
coroot lattice Z^n; finite Weyl elements are stored as exact integer
matrices acting on coroot coordinates together with the lexicographically
least reduced word.  Affine elements are pairs (translation, finite), and
the extended lattice Z + L carries the level-shear action derived from the
invariant form: translations fix the finite part and shift the level by
the pairing, while finite elements fix the level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cones import RationalCone


class NotFiniteType(ValueError):
    """The matrix is not a finite-type Cartan matrix."""


class NotIrreducible(ValueError):
    """The Cartan matrix splits into several components (the group is not simple)."""


PRESETS = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "G2": ((2, -1), (-3, 2)),
}


def mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a, b):
    n = len(a)
    k = len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(k))
        for i in range(n)
    )


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_det(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return int(det) if det.denominator == 1 else det


def mat_inv_integer(m):
    """Inverse of an integer matrix with determinant +-1."""
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = tuple(tuple(aug[i][n + j] for j in range(n)) for i in range(n))
    assert all(x.denominator == 1 for row in inv for x in row), "matrix is not unimodular"
    return tuple(tuple(int(x) for x in row) for row in inv)


@dataclass(frozen=True)
class AffineWeylElement:
    """t_lambda * w with lambda in coroot coordinates and w a coroot-action matrix."""

    translation: tuple
    finite: tuple

    def is_identity(self):
        return not any(self.translation) and self.finite == identity_matrix(len(self.translation))


def _validate_cartan(cartan):
    n = len(cartan)
    for row in cartan:
        if len(row) != n:
            raise NotFiniteType("Cartan matrix must be square")
        for x in row:
            if not isinstance(x, int):
                raise NotFiniteType("Cartan entries must be integers")
    for i in range(n):
        if cartan[i][i] != 2:
            raise NotFiniteType("Cartan diagonal entries must equal 2")
        for j in range(n):
            if i != j:
                if cartan[i][j] > 0:
                    raise NotFiniteType("off-diagonal Cartan entries must be nonpositive")
                if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise NotFiniteType("zero pattern must be symmetric")


def _symmetrizer(cartan):
    """Positive rationals d with d_i * c[j][i] = d_j * c[i][j]; None if none exist."""
    n = len(cartan)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and cartan[i][j] != 0:
                    ratio = Fraction(cartan[j][i], cartan[i][j])
                    val = d[i] * ratio
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        return None
    return d


def _is_positive_definite(sym):
    n = len(sym)
    for k in range(1, n + 1):
        minor = [row[:k] for row in sym[:k]]
        if mat_det(minor) <= 0:
            return False
    return True


def _components(cartan):
    n = len(cartan)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and cartan[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


class RootData:
    """Cartan data plus enumerated roots, Weyl group, and affine scaffolding."""

    def __init__(self, cartan, form="basic"):
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        _validate_cartan(cartan)
        n = len(cartan)
        d = _symmetrizer(cartan)
        if d is None:
            raise NotFiniteType("Cartan matrix is not symmetrizable")
        sym = tuple(tuple(d[i] * cartan[i][j] for j in range(n)) for i in range(n))
        if not _is_positive_definite(sym):
            raise NotFiniteType("symmetrized Cartan matrix is not positive definite")
        if len(_components(cartan)) != 1:
            raise NotIrreducible("Cartan matrix is reducible; only simple types are supported")
        self.cartan = cartan
        self.n = n
        self.form = form
        self.psi = self._invariant_form(form)
        self._act_matrix_cache = {}

        # simple reflections: on coroot coordinates and on root coordinates
        self.simple_coroot_matrices = []
        self.simple_root_matrices = []
        for i in range(n):
            co = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
            ro = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
            for j in range(n):
                co[i][j] -= cartan[j][i]   # s_i(l) = l - <alpha_i, l> alpha_i^vee
                ro[i][j] -= cartan[i][j]   # s_i(alpha_j) = alpha_j - c[i][j] alpha_i
            self.simple_coroot_matrices.append(tuple(tuple(r) for r in co))
            self.simple_root_matrices.append(tuple(tuple(r) for r in ro))
        self.simple_coroot_matrices = tuple(self.simple_coroot_matrices)
        self.simple_root_matrices = tuple(self.simple_root_matrices)

        self._enumerate_roots()
        self._enumerate_weyl()
        self._affine_setup()

    # ----- construction helpers -------------------------------------------------

    def _invariant_form(self, form):
        n = self.n
        d = _symmetrizer(self.cartan)
        scale = min(d)
        d = [x / scale for x in d]
        psi = [[d[i] * self.cartan[j][i] for j in range(n)] for i in range(n)]
        if any(x.denominator != 1 for row in psi for x in row):
            raise NotFiniteType("invariant form is not integral")
        psi = [[int(x) for x in row] for row in psi]
        if form == "minimal":
            g = 0
            for row in psi:
                for x in row:
                    g = gcd(g, abs(x))
            if g > 1:
                psi = [[x // g for x in row] for row in psi]
        elif form != "basic":
            raise ValueError(f"unknown form convention {form!r}")
        return tuple(tuple(row) for row in psi)

    def _enumerate_roots(self):
        n = self.n
        start = {}
        for i in range(n):
            e = tuple(1 if j == i else 0 for j in range(n))
            start[e] = e  # root coords -> coroot coords; alpha_i pairs with alpha_i^vee
        roots = dict(start)
        frontier = list(start.items())
        while frontier:
            new = []
            for root, coroot in frontier:
                for i in range(n):
                    r2 = mat_vec(self.simple_root_matrices[i], root)
                    c2 = mat_vec(self.simple_coroot_matrices[i], coroot)
                    if r2 not in roots:
                        roots[r2] = c2
                        new.append((r2, c2))
            frontier = new
        self.roots = roots
        self.positive_roots = sorted(r for r in roots if all(x >= 0 for x in r))
        heights = {r: sum(r) for r in self.positive_roots}
        top = max(heights.values())
        candidates = [r for r, h in heights.items() if h == top]
        assert len(candidates) == 1, "highest root is not unique"
        theta = candidates[0]
        for i in range(self.n):
            up = tuple(theta[j] + (1 if j == i else 0) for j in range(self.n))
            assert up not in roots, "theta is not the highest root"
        self.highest_root = theta
        self.theta_coroot = roots[theta]

    def _enumerate_weyl(self):
        n = self.n
        ident = identity_matrix(n)
        info = {ident: ((), identity_matrix(n))}  # coroot matrix -> (word, root matrix)
        queue = [ident]
        while queue:
            nxt = []
            for mat in queue:
                word, rmat = info[mat]
                for i in range(n):
                    child = mat_mul(mat, self.simple_coroot_matrices[i])
                    if child not in info:
                        info[child] = (word + (i,), mat_mul(rmat, self.simple_root_matrices[i]))
                        nxt.append(child)
            queue = nxt
        self._weyl = info
        self.weyl_elements = sorted(info, key=lambda m: (len(info[m][0]), info[m][0]))

    def _affine_setup(self):
        # s_theta on coroot coordinates: l - <theta, l> theta^vee
        n = self.n
        theta, tcv = self.highest_root, self.theta_coroot
        cols = []
        for j in range(n):
            e = tuple(1 if k == j else 0 for k in range(n))
            pairing = self.root_coweight_pairing(theta, e)
            cols.append(tuple(e[k] - pairing * tcv[k] for k in range(n)))
        self.s_theta_matrix = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
        assert self.s_theta_matrix in self._weyl

        a0_row = [2] + [-self.root_coweight_pairing(self.highest_root,
                                                    tuple(1 if k == j else 0 for k in range(n)))
                        for j in range(n)]
        a_cols = [2] + [-sum(self.theta_coroot[i] * self.cartan[i][j] for i in range(n))
                        for j in range(n)]
        # affine Cartan pairings <alpha_j, alpha_0^vee> and <alpha_0, alpha_j^vee>
        self._affine_cartan_row0 = tuple(a0_row)   # <alpha_0, alpha_j^vee> for j = 0..n
        self._affine_cartan_col0 = tuple(a_cols)   # <alpha_j, alpha_0^vee> for j = 0..n

    # ----- basic pairings ---------------------------------------------------------

    def psi_pairing(self, l1, l2):
        return sum(l1[i] * self.psi[i][j] * l2[j] for i in range(self.n) for j in range(self.n))

    def root_coweight_pairing(self, root, coweight):
        """<alpha, lambda> for alpha in simple-root and lambda in coroot coordinates."""
        return sum(coweight[i] * self.cartan[i][j] * root[j]
                   for i in range(self.n) for j in range(self.n))

    # ----- finite Weyl operations --------------------------------------------------

    def weyl_act(self, w, l):
        return mat_vec(w, l)

    def weyl_simple(self, i):
        return self.simple_coroot_matrices[i]

    def weyl_word(self, w):
        return self._weyl[w][0]

    def weyl_root_matrix(self, w):
        return self._weyl[w][1]

    def weyl_mul(self, w, v):
        return mat_mul(w, v)

    def weyl_inv(self, w):
        return mat_inv_integer(w)

    def weyl_from_word(self, word):
        m = identity_matrix(self.n)
        for i in word:
            m = mat_mul(m, self.simple_coroot_matrices[i])
        return m

    # ----- affine Weyl group --------------------------------------------------------

    def waff_identity(self):
        return AffineWeylElement((0,) * self.n, identity_matrix(self.n))

    def waff_from_translation(self, l):
        return AffineWeylElement(tuple(l), identity_matrix(self.n))

    def waff_from_finite(self, w):
        return AffineWeylElement((0,) * self.n, w)

    def waff_mul(self, x, y):
        lam = tuple(a + b for a, b in zip(x.translation, mat_vec(x.finite, y.translation)))
        return AffineWeylElement(lam, mat_mul(x.finite, y.finite))

    def waff_inv(self, x):
        winv = mat_inv_integer(x.finite)
        return AffineWeylElement(tuple(-v for v in mat_vec(winv, x.translation)), winv)

    def affine_simple(self, i):
        if i == 0:
            return AffineWeylElement(self.theta_coroot, self.s_theta_matrix)
        return AffineWeylElement((0,) * self.n, self.simple_coroot_matrices[i - 1])

    def waff_from_word(self, word):
        x = self.waff_identity()
        for i in word:
            x = self.waff_mul(x, self.affine_simple(i))
        return x

    def waff_length(self, x):
        winv_root = mat_inv_integer(self.weyl_root_matrix(x.finite))
        total = 0
        for alpha in self.positive_roots:
            pairing = self.root_coweight_pairing(alpha, x.translation)
            pre = mat_vec(winv_root, alpha)
            if all(v >= 0 for v in pre):
                total += abs(pairing)
            else:
                total += abs(pairing - 1)
        return total

    def waff_descents(self, x):
        lx = self.waff_length(x)
        out = []
        for i in range(self.n + 1):
            if self.waff_length(self.waff_mul(self.affine_simple(i), x)) < lx:
                out.append(i)
        return out

    def reduced_word(self, x):
        """Lexicographically least reduced word in the affine generators s_0..s_n."""
        word = []
        cur = x
        length = self.waff_length(cur)
        while length > 0:
            for i in range(self.n + 1):
                nxt = self.waff_mul(self.affine_simple(i), cur)
                ln = self.waff_length(nxt)
                if ln < length:
                    word.append(i)
                    cur, length = nxt, ln
                    break
            else:
                raise AssertionError("nonidentity element with no descent")
        assert cur.is_identity()
        return tuple(word)

    # ----- level-shear action on the extended lattice -------------------------------

    def waff_act_matrix(self, x):
        """Integer matrix of the action on (level, finite) column vectors."""
        cached = self._act_matrix_cache.get(x)
        if cached is not None:
            return cached
        n = self.n
        psi_lam = [sum(x.translation[i] * self.psi[i][j] for i in range(n)) for j in range(n)]
        wcols = [mat_vec(x.finite, tuple(1 if k == j else 0 for k in range(n))) for j in range(n)]
        top = [1] + [sum(psi_lam[k] * wcols[j][k] for k in range(n)) for j in range(n)]
        body = [[0] + [wcols[j][i] for j in range(n)] for i in range(n)]
        m = tuple(tuple(r) for r in [top] + body)
        self._act_matrix_cache[x] = m
        return m

    def waff_act_laff(self, x, v):
        return mat_vec(self.waff_act_matrix(x), tuple(v))

    # ----- dominant affine cones ------------------------------------------------------

    def dominant_affine_cone(self, convention="level"):
        n = self.n
        facets = []
        if convention == "level":
            facets.append(tuple([1] + [0] * n))
            for i in range(n):
                facets.append(tuple([0] + [self.cartan[j][i] for j in range(n)]))
        elif convention == "theta":
            for i in range(n):
                facets.append(tuple([0] + [self.cartan[j][i] for j in range(n)]))
            theta_pair = [self.root_coweight_pairing(self.highest_root,
                                                     tuple(1 if k == j else 0 for k in range(n)))
                          for j in range(n)]
            facets.append(tuple([1] + [-u for u in theta_pair]))
        else:
            raise ValueError(f"unknown cone convention {convention!r}")
        from .cones import _primitive, _solve_combination

        gens = []
        d = n + 1
        cols = [tuple(facets[i][j] for i in range(d)) for j in range(d)]
        for k in range(d):
            rhs = tuple(Fraction(1 if i == k else 0) for i in range(d))
            sol = _solve_combination(cols, rhs)
            assert sol is not None, "dominant cone is not simplicial"
            gens.append(_primitive(sol))
        cone = RationalCone(gens)
        assert cone.is_strictly_convex()
        return cone

    def cone_Q(self, x, convention="level"):
        return self.dominant_affine_cone(convention).image(self.waff_act_matrix(x))

    # ----- affine Coxeter data ---------------------------------------------------------

    def affine_coxeter_m(self, i, j):
        """Coxeter exponent m_ij for the affine generators (None for infinity)."""
        if i == j:
            return 1
        def pairing(a, b):
            # <alpha_b, alpha_a^vee> over indices 0..n
            if a == 0 and b == 0:
                return 2
            if a == 0:
                return self._affine_cartan_col0[b]
            if b == 0:
                return self._affine_cartan_row0[a]
            return self.cartan[a - 1][b - 1]
        prod = pairing(i, j) * pairing(j, i)
        return {0: 2, 1: 3, 2: 4, 3: 6}.get(prod)


def build_root_data(cartan, form="basic"):
    """Construct root data from a Cartan matrix or preset name."""
    if isinstance(cartan, str):
        if cartan not in PRESETS:
            raise NotFiniteType(f"unknown preset {cartan!r}")
        cartan = PRESETS[cartan]
    return RootData(cartan, form=form)
