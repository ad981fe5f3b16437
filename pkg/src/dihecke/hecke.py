"""Smash-product realization of rational-coefficient Hecke operators.

Elements are finite sums f_w [w] over the affine Weyl group with
rational-function coefficients; group elements act on coefficients by
substituting exponents through the level-shear action, and multiplication
twists coefficients past group elements.  The divided-difference
generators are built from the affine reflection data and satisfy the
quadratic and braid relations, which are verified symbolically rather
than assumed.
"""

from __future__ import annotations

import random

from .qfraction import ONE, QFraction
from .rootdata import AffineWeylElement, RootData
from .series import NotExpandableInCone, RationalFn, expand


class HeckeElement:
    """Finite map from affine Weyl elements to rational-function coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {w: f for w, f in terms.items() if not f.is_zero()}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for w in keys:
            a = self.terms.get(w)
            b = other.terms.get(w)
            if a is None or b is None:
                if (a or b) and not (a or b).is_zero():
                    return False
            elif a != b:
                return False
        return True

    __hash__ = None

    def __repr__(self):
        return f"HeckeElement({len(self.terms)} terms)"


def he_unit(rd: RootData) -> HeckeElement:
    dim = rd.n + 1
    return HeckeElement({rd.waff_identity(): RationalFn.one(dim)})


def he_from_element(rd: RootData, x: AffineWeylElement, coeff=None) -> HeckeElement:
    dim = rd.n + 1
    if coeff is None:
        coeff = RationalFn.one(dim)
    return HeckeElement({x: coeff})


def he_shift(rd: RootData, l) -> HeckeElement:
    """The monomial-shift element t^l [e]."""
    dim = rd.n + 1
    return HeckeElement({rd.waff_identity(): RationalFn.monomial(dim, tuple(l))})


def he_add(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    out = dict(a.terms)
    for w, f in b.terms.items():
        if w in out:
            out[w] = out[w] + f
        else:
            out[w] = f
    return HeckeElement(out)


def he_scale(a: HeckeElement, c) -> HeckeElement:
    return HeckeElement({w: f.scale(c) for w, f in a.terms.items()})


def he_neg(a: HeckeElement) -> HeckeElement:
    return HeckeElement({w: -f for w, f in a.terms.items()})


def he_sub(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return he_add(a, he_neg(b))


def smash_mul(rd: RootData, a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """(f [w]) (g [v]) = f * (w.g) [w v]."""
    out = {}
    for w, f in a.terms.items():
        mw = rd.waff_act_matrix(w)
        for v, g in b.terms.items():
            key = rd.waff_mul(w, v)
            term = f * g.substitute(mw)
            if key in out:
                out[key] = out[key] + term
            else:
                out[key] = term
    return HeckeElement(out)


def hecke_apply(rd: RootData, a: HeckeElement, f: RationalFn) -> RationalFn:
    """(sum f_w [w]) . f = sum f_w * (w . f)."""
    dim = rd.n + 1
    out = RationalFn.zero(dim)
    for w, coeff in a.terms.items():
        out = out + coeff * f.substitute(rd.waff_act_matrix(w))
    return out


# ----- affine reflection data and divided-difference generators ---------------------


def affine_root_vector(rd: RootData, i, flip_level=False):
    """Lattice vector a_i with s_i(a_i) = -a_i under the level-shear action."""
    n = rd.n
    if i >= 1:
        vec = (0,) + tuple(1 if k == i - 1 else 0 for k in range(n))
        if flip_level:
            raise ValueError("level flip only applies to the affine node")
        return vec
    psi_theta = rd.psi_pairing(rd.theta_coroot, rd.theta_coroot)
    assert psi_theta % 2 == 0, "affine node needs the basic form normalization"
    half = psi_theta // 2
    s0 = rd.affine_simple(0)
    # prefer the dominant-negative finite part: together with a_1..a_n it is a
    # simple system for the reflection action, which the braid relations need
    candidates = [
        (-half,) + tuple(-v for v in rd.theta_coroot),
        (half,) + tuple(-v for v in rd.theta_coroot),
        (half,) + tuple(v for v in rd.theta_coroot),
        (-half,) + tuple(v for v in rd.theta_coroot),
    ]
    for cand in candidates:
        image = rd.waff_act_laff(s0, cand)
        if image == tuple(-v for v in cand):
            if flip_level:
                return (-cand[0],) + cand[1:]
            return cand
    raise AssertionError("no affine reflection vector found")


def dl_generator(rd: RootData, i, flip_level=False) -> HeckeElement:
    """T_i = q [s_i] + (q - 1) (1 - t^{-a_i})^{-1} ([e] - [s_i])."""
    dim = rd.n + 1
    a = affine_root_vector(rd, i, flip_level=flip_level)
    neg_a = tuple(-v for v in a)
    q = QFraction.q()
    g = RationalFn(dim, {(0,) * dim: q - 1}, [(ONE, neg_a, 1)])
    si = rd.affine_simple(i)
    ident = rd.waff_identity()
    q_fn = RationalFn.from_scalar(dim, q)
    return HeckeElement({ident: g, si: q_fn - g})


def tau(rd: RootData, w: AffineWeylElement, l=None) -> HeckeElement:
    """tau_{w,l}: the product of generators over a reduced word, then the shift."""
    out = he_unit(rd)
    for i in rd.reduced_word(w):
        out = smash_mul(rd, out, dl_generator(rd, i))
    if l is not None and any(l):
        out = smash_mul(rd, out, he_shift(rd, l))
    return out


def tau_from_word(rd: RootData, word, l=None) -> HeckeElement:
    out = he_unit(rd)
    for i in word:
        out = smash_mul(rd, out, dl_generator(rd, i))
    if l is not None and any(l):
        out = smash_mul(rd, out, he_shift(rd, l))
    return out


# ----- structural probes --------------------------------------------------------------


def preserves_polynomials(rd: RootData, a: HeckeElement, degree_bound: int):
    """Apply to every monomial in the box and report Laurent-ness (a semi-decision)."""
    dim = rd.n + 1
    box = [()]
    for _ in range(dim):
        box = [e + (k,) for e in box for k in range(-degree_bound, degree_bound + 1)]
    for exp in box:
        image = hecke_apply(rd, a, RationalFn.monomial(dim, exp))
        if not image.is_laurent():
            return {"preserves": False, "witness": list(exp), "bound": degree_bound}
    return {"preserves": True, "witness": None, "bound": degree_bound}


def support_cone_check(rd: RootData, w: AffineWeylElement, l, order: int,
                       convention="level"):
    """Try to expand every coefficient of tau_{w,l} in the cone of w."""
    element = tau(rd, w, l)
    cone = rd.cone_Q(w, convention)
    results = []
    all_ok = True
    for v in sorted(element.terms, key=lambda x: (x.translation, rd.weyl_word(x.finite))):
        f = element.terms[v]
        entry = {
            "translation": list(v.translation),
            "word": list(rd.weyl_word(v.finite)),
        }
        try:
            series = expand(f, cone, order, verify=True)
            entry["status"] = "ok"
            entry["support_size"] = len(series.coeffs)
        except NotExpandableInCone as err:
            entry["status"] = "not_expandable"
            entry["error"] = str(err)
            all_ok = False
        results.append(entry)
    return {"all_ok": all_ok, "cone": cone.to_json(), "terms": results}


def _all_reduced_words(rd: RootData, x: AffineWeylElement):
    if x.is_identity():
        return [()]
    out = []
    lx = rd.waff_length(x)
    for i in range(rd.n + 1):
        y = rd.waff_mul(rd.affine_simple(i), x)
        if rd.waff_length(y) < lx:
            out.extend((i,) + rest for rest in _all_reduced_words(rd, y))
    return out


def _ball(rd: RootData, radius: int):
    seen = {rd.waff_identity()}
    frontier = list(seen)
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for i in range(rd.n + 1):
                y = rd.waff_mul(x, rd.affine_simple(i))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def verify_relations(rd: RootData, max_length: int = 3, samples: int = 20,
                     seed: int = 0, mutate_a0: bool = False):
    """Symbolic pass/fail ledger for the defining relations.

    mutate_a0 flips the level coordinate of the affine reflection vector,
    a deliberate corruption that must make the affine quadratic fail.
    """
    report = {"failures": []}
    q = QFraction.q()
    gens = {}
    for i in range(rd.n + 1):
        gens[i] = dl_generator(rd, i, flip_level=(mutate_a0 and i == 0))
    unit = he_unit(rd)

    ok = True
    for i, t in gens.items():
        z = smash_mul(rd, he_sub(t, he_scale(unit, q)), he_add(t, unit))
        if not z.is_zero():
            ok = False
            report["failures"].append(f"quadratic relation fails for generator {i}")
    report["quadratic"] = "pass" if ok else "fail"

    ok = True
    checked = 0
    for i in range(rd.n + 1):
        for j in range(i + 1, rd.n + 1):
            m = rd.affine_coxeter_m(i, j)
            if m is None:
                continue
            checked += 1
            lhs, rhs = unit, unit
            for k in range(m):
                lhs = smash_mul(rd, lhs, gens[i if k % 2 == 0 else j])
                rhs = smash_mul(rd, rhs, gens[j if k % 2 == 0 else i])
            if lhs != rhs:
                ok = False
                report["failures"].append(f"braid relation fails for pair ({i},{j})")
    report["braid"] = "pass" if ok else "fail"
    report["braid_relations_checked"] = checked

    ok = True
    for x in sorted(_ball(rd, max_length),
                    key=lambda e: (e.translation, rd.weyl_word(e.finite))):
        if rd.waff_length(x) > max_length:
            continue
        words = _all_reduced_words(rd, x)
        if len(words) <= 1:
            continue
        first = tau_from_word(rd, words[0])
        for word in words[1:]:
            if tau_from_word(rd, word) != first:
                ok = False
                report["failures"].append(
                    f"reduced words {words[0]} and {word} disagree")
                break
    report["reduced_word"] = "pass" if ok else "fail"

    ok = True
    rng = random.Random(seed)
    dim = rd.n + 1
    elements = sorted(_ball(rd, 2), key=lambda e: (e.translation, rd.weyl_word(e.finite)))
    for _ in range(samples):
        w = rng.choice(elements)
        l = tuple(rng.randrange(-2, 3) for _ in range(dim))
        lp = tuple(rng.randrange(-2, 3) for _ in range(dim))
        lhs = tau(rd, w, tuple(a + b for a, b in zip(l, lp)))
        rhs = smash_mul(rd, tau(rd, w, lp), tau(rd, rd.waff_identity(), l))
        if lhs != rhs:
            ok = False
            report["failures"].append(f"shift law fails for w={w}, l={l}, l'={lp}")
            break
    report["shift_law"] = "pass" if ok else "fail"

    report["ok"] = all(report[k] == "pass"
                       for k in ("quadratic", "braid", "reduced_word", "shift_law"))
    return report


# ----- serialization -------------------------------------------------------------------


def hecke_to_json(rd: RootData, a: HeckeElement):
    from .series import rational_fn_to_str

    terms = []
    for w in sorted(a.terms, key=lambda x: (x.translation, rd.weyl_word(x.finite))):
        terms.append({
            "translation": list(w.translation),
            "word": list(rd.weyl_word(w.finite)),
            "coeff": rational_fn_to_str(a.terms[w]),
        })
    return {"terms": terms}


def hecke_from_json(rd: RootData, doc) -> HeckeElement:
    from .series import parse_rational_fn

    dim = rd.n + 1
    out = {}
    for entry in doc["terms"]:
        w = AffineWeylElement(tuple(int(x) for x in entry["translation"]),
                              rd.weyl_from_word(entry["word"]))
        f = parse_rational_fn(entry["coeff"], dim)
        out[w] = out[w] + f if w in out else f
    return HeckeElement(out)
