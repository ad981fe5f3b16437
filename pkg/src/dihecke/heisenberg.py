"""Heisenberg–Weyl group of a double coweight lattice.

Elements carry a central integer, two coweights (the components along the
two local parameters), and a finite Weyl part.  The central extension is
built from the polarized cocycle c((l1,l2),(l1',l2')) = Psi(l1,l2'), whose
commutator pairing is the skew form Psi(l1,l2') - Psi(l2,l1'); conjugating
everything into (level, coweight) pairs acted on by the affine Weyl group
gives an exact isomorphism, exercised by the tests rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootdata import AffineWeylElement, RootData, mat_vec


@dataclass(frozen=True)
class HWElement:
    """(center; l1, l2; w) with w a coroot-action matrix."""

    center: int
    l1: tuple
    l2: tuple
    finite: tuple

    def heisenberg_part(self):
        return (self.center, self.l1, self.l2)


def hw_identity(rd: RootData) -> HWElement:
    zero = (0,) * rd.n
    return HWElement(0, zero, zero, rd.waff_identity().finite)


def skew_pairing(rd: RootData, x, y) -> int:
    """Skew form on pairs of coweights: Psi(l1, l2') - Psi(l2, l1')."""
    (l1, l2), (m1, m2) = x, y
    return rd.psi_pairing(l1, m2) - rd.psi_pairing(l2, m1)


def _cocycle(rd: RootData, x, y) -> int:
    (l1, _l2), (_m1, m2) = x, y
    return rd.psi_pairing(l1, m2)


def heis_mul(rd: RootData, h, hp):
    """(a; x) * (a'; x') = (a + a' + c(x, x'); x + x')."""
    a, l1, l2 = h
    b, m1, m2 = hp
    c = _cocycle(rd, (l1, l2), (m1, m2))
    return (a + b + c,
            tuple(u + v for u, v in zip(l1, m1)),
            tuple(u + v for u, v in zip(l2, m2)))


def heis_inv(rd: RootData, h):
    a, l1, l2 = h
    neg = (tuple(-v for v in l1), tuple(-v for v in l2))
    c = _cocycle(rd, (l1, l2), neg)
    return (-a + c, neg[0], neg[1])


def heis_commutator(rd: RootData, h, hp):
    x = heis_mul(rd, heis_mul(rd, h, hp), heis_inv(rd, heis_mul(rd, hp, h)))
    return x


def hw_mul(rd: RootData, g: HWElement, gp: HWElement) -> HWElement:
    """Semidirect product, the finite part acting componentwise on coweights."""
    moved = (gp.center, mat_vec(g.finite, gp.l1), mat_vec(g.finite, gp.l2))
    a, l1, l2 = heis_mul(rd, g.heisenberg_part(), moved)
    return HWElement(a, l1, l2, rd.weyl_mul(g.finite, gp.finite))


def hw_inv(rd: RootData, g: HWElement) -> HWElement:
    winv = rd.weyl_inv(g.finite)
    a, l1, l2 = heis_inv(rd, g.heisenberg_part())
    return HWElement(a, mat_vec(winv, l1), mat_vec(winv, l2), winv)


def laffsemi_mul(rd: RootData, p, pp):
    """Multiplication in the target group: pairs (level vector, affine element)."""
    (v, x), (vp, xp) = p, pp
    moved = rd.waff_act_laff(x, vp)
    return (tuple(a + b for a, b in zip(v, moved)), rd.waff_mul(x, xp))


def iso_to_semidirect(rd: RootData, g: HWElement):
    """(a; l1, l2; w)  ->  ((a, l2), t_{l1} w)."""
    laff = (g.center,) + g.l2
    return (laff, AffineWeylElement(g.l1, g.finite))


def iso_from_semidirect(rd: RootData, pair) -> HWElement:
    laff, aff = pair
    return HWElement(laff[0], aff.translation, tuple(laff[1:]), aff.finite)


def hw_to_json(rd: RootData, g: HWElement):
    return {
        "center": g.center,
        "l1": list(g.l1),
        "l2": list(g.l2),
        "word": list(rd.weyl_word(g.finite)),
    }


def hw_from_json(rd: RootData, doc) -> HWElement:
    finite = rd.weyl_from_word(doc.get("word", []))
    n = rd.n
    return HWElement(
        int(doc.get("center", 0)),
        tuple(int(v) for v in doc.get("l1", [0] * n)),
        tuple(int(v) for v in doc.get("l2", [0] * n)),
        finite,
    )


def hw_to_text(rd: RootData, g: HWElement) -> str:
    word = rd.weyl_word(g.finite)
    wtxt = "e" if not word else " ".join(f"s{i + 1}" for i in word)
    return f"z^{g.center} t1{list(g.l1)} t2{list(g.l2)} {wtxt}"
