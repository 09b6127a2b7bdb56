"""Named constructions: the Fano arrangement, the 13-element odd arrangement,
ε-perturbation, direct sums, and the glued 20-element polymatroid.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError, SizeLimitError
from .gf import FieldSpec, field_make
from .inequality import ingleton_score
from .lattice import MAX_ELEMENTS, GroundSet, RankVector, _as_fraction, common_denominator, restrict
from .represent import Arrangement, rank_vector

X1_LABELS = ("Y1", "Y2", "Y3", "W1", "W2", "W3", "W4")
X2_LABELS = ("Z1", "Z2", "Z3", "Z4", "Z5", "V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8")

# which basis vectors u_i are summed to span each element
_X1_SUPPORT = ((0,), (1,), (2,), (0, 1), (1, 2), (0, 1, 2), (0, 2))
_X2_SUPPORT = (
    (0,), (1,), (2,), (3,), (4,),
    (0, 1, 2), (2, 3, 4), (0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4),
)


def _lines(field: FieldSpec, d: int, supports, labels) -> Arrangement:
    blocks = []
    for sup in supports:
        row = np.zeros((1, d), dtype=np.int64)
        row[0, list(sup)] = 1
        blocks.append(row)
    return Arrangement.from_rows(field, d, blocks, labels)


def fano_x1(field: FieldSpec | None = None) -> Arrangement:
    """Y_i = <u_i>, W1 = <u1+u2>, W2 = <u2+u3>, W3 = <u1+u2+u3>, W4 = <u1+u3>.

    Over characteristic 2 this is the Fano matroid.
    """
    return _lines(field or field_make(2), 3, _X1_SUPPORT, X1_LABELS)


def dfz_x2(field: FieldSpec | None = None) -> Arrangement:
    """Z_i = <u_i> (i = 1..5) and eight sums V1..V8 in GF(q)^5; intended for odd q."""
    return _lines(field or field_make(3), 5, _X2_SUPPORT, X2_LABELS)


def epsilon_perturb(h: RankVector, eps) -> RankVector:
    """``g(A) = min(h(A), h(full) - eps)``."""
    eps = _as_fraction(eps)
    top = h.full
    if not 0 <= eps <= top:
        raise InputError(f"epsilon must lie in [0, {top}], got {eps}")
    den = common_denominator(h) * eps.denominator
    cap = (top - eps) * den
    assert cap.denominator == 1
    num = np.minimum(h.over(den), int(cap))
    return RankVector(h.ground, num, den)


def direct_sum(h1: RankVector, h2: RankVector) -> RankVector:
    """Rank function on X1 then X2: ``h1(A ∩ X1) + h2(A ∩ X2)``."""
    n = h1.n + h2.n
    if n > MAX_ELEMENTS:
        raise SizeLimitError(f"direct sum would have {n} > {MAX_ELEMENTS} elements")
    den = common_denominator(h1, h2)
    a, b = h1.over(den), h2.over(den)
    # mask = high bits (X2 part) * 2^n1 + low bits (X1 part)
    num = np.add.outer(b, a).reshape(-1)
    labels = None
    if h1.ground.labels or h2.ground.labels:
        labels = tuple(h1.ground.label(i) for i in range(h1.n)) + tuple(h2.ground.label(i) for i in range(h2.n))
        if len(set(labels)) != n:
            labels = None
    return RankVector(GroundSet(n, labels), num, den)


def phi(field_x1: FieldSpec | None = None, field_x2: FieldSpec | None = None) -> RankVector:
    return direct_sum(rank_vector(fano_x1(field_x1)), rank_vector(dfz_x2(field_x2)))


def phi_eps(eps, field_x1: FieldSpec | None = None, field_x2: FieldSpec | None = None) -> RankVector:
    """ε-perturbation of the direct sum; restrictions to X1 and X2 are checked."""
    eps = _as_fraction(eps)
    h1 = rank_vector(fano_x1(field_x1))
    h2 = rank_vector(dfz_x2(field_x2))
    bound = min(h1.full, h2.full)
    if not 0 < eps <= bound:
        raise InputError(f"epsilon must lie in (0, {bound}], got {eps}")
    g = epsilon_perturb(direct_sum(h1, h2), eps)
    if restrict(g, range(7)) != h1 or restrict(g, range(7, 20)) != h2:
        raise AssertionError("perturbation changed a restriction")
    return g


# -- equality predicates ------------------------------------------------------

@dataclass(frozen=True)
class Predicate:
    """``H(target | given) = 0`` or, for kind ``additive``, ``H(parts) = sum H(part)``."""

    kind: str
    target: tuple
    given: tuple = ()

    def masks(self, ground: GroundSet):
        return [ground.mask([x]) for x in self.target], ground.mask(self.given)

    def residual(self, h: RankVector) -> Fraction:
        singles, given = self.masks(h.ground)
        if self.kind == "additive":
            joint = 0
            for s in singles:
                joint |= s
            return sum((h[s] for s in singles), Fraction(0)) - h[joint]
        target = 0
        for s in singles:
            target |= s
        return h[target | given] - h[given]

    def holds(self, h: RankVector) -> bool:
        return self.residual(h) == 0

    def __str__(self):
        if self.kind == "additive":
            return f"H({','.join(self.target)}) = " + " + ".join(f"H({t})" for t in self.target)
        return f"H({','.join(self.target)} | {','.join(self.given)}) = 0"


def _cond(target, *given):
    return Predicate("conditional", (target,), tuple(given))


def equalities_x1() -> list:
    return [
        Predicate("additive", ("Y1", "Y2", "Y3")),
        _cond("W1", "Y1", "Y2"),
        _cond("W2", "Y2", "Y3"),
        _cond("W3", "Y1", "W2"),
        _cond("W4", "W1", "W2"),
        _cond("Y1", "Y3", "W4"),
        _cond("Y2", "W3", "W4"),
        _cond("Y3", "W1", "W3"),
    ]


def equalities_x2() -> list:
    return [
        Predicate("additive", ("Z1", "Z2", "Z3", "Z4", "Z5")),
        _cond("V1", "Z1", "Z2", "Z3"),
        _cond("V2", "Z3", "Z4", "Z5"),
        _cond("V3", "Z1", "Z2"),
        _cond("V4", "Z1", "Z3"),
        _cond("V5", "Z2", "Z3"),
        _cond("V6", "Z3", "Z4"),
        _cond("V7", "Z3", "Z5"),
        _cond("V8", "Z4", "Z5"),
        _cond("Z1", "V1", "V5"),
        _cond("Z2", "V1", "V4"),
        _cond("Z3", "V1", "V3"),
        _cond("Z3", "V3", "V4", "V5", "V6", "V7", "V8"),
        _cond("Z3", "V2", "V8"),
        _cond("Z4", "V2", "V7"),
        _cond("Z5", "V2", "V6"),
    ]


def evaluate_equalities(preds: Sequence[Predicate], h: RankVector) -> list:
    """``(predicate, holds)`` for each predicate against a labelled rank vector."""
    if h.ground.labels is None:
        raise InputError("rank vector needs element labels to evaluate named equalities")
    return [(p, p.holds(h)) for p in preds]


# -- case analysis behind Ingleton preservation -------------------------------

PAIRS = ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3))  # U as 0-based index pairs


@dataclass(frozen=True)
class CaseReport:
    case: int
    hits: tuple  # Q ∩ U as 1-based pairs
    facts: tuple  # (description, lhs, rhs) with lhs >= rhs (or == for equalities)
    score: Fraction

    @property
    def verified(self) -> bool:
        return all(ok for _, ok in self.facts) and self.score >= 0


def _label(pair):
    return f"({pair[0] + 1},{pair[1] + 1})"


def classify_hits(hits: frozenset) -> int:
    """Case number for the set of pairs where the cap bites."""
    S = {tuple(p) for p in hits}
    k = len(S)
    if k == 0:
        return 1
    if k == 1:
        return 2
    if k >= 3:
        return 7
    if S in ({(0, 2), (1, 2)}, {(0, 3), (1, 3)}):
        return 3
    if (0, 1) in S:
        return 4
    if S in ({(0, 2), (1, 3)}, {(0, 3), (1, 2)}):
        return 5
    if S in ({(0, 2), (0, 3)}, {(1, 2), (1, 3)}):
        return 6
    raise AssertionError(f"unclassifiable pattern {sorted(S)}")


def perturbation_case(h: RankVector, eps, quad: Sequence[int], g: RankVector | None = None) -> CaseReport:
    """Classify a quadruple by which pair-terms hit the cap and re-derive J_g >= 0.

    The facts recorded are the chain of polymatroid inequalities used for the
    case; each is evaluated exactly on ``h`` and ``g``.  Pass the perturbed
    vector ``g`` when classifying many quadruples of the same ``h``.
    """
    eps = _as_fraction(eps)
    if not 0 <= eps <= h.full:
        raise InputError(f"epsilon must lie in [0, {h.full}]")
    V = [h.ground.check(a) for a in quad]
    if len(V) != 4:
        raise InputError("need four subsets")
    t = h.full - eps

    def U(*idx):
        m = 0
        for i in idx:
            m |= V[i]
        return m

    def hv(*idx):
        return h[U(*idx)]

    def gv(*idx):
        return min(hv(*idx), t)

    hits = frozenset(p for p in PAIRS if hv(*p) >= t)
    case = classify_hits(hits)
    facts = []

    def ge(desc, lhs, rhs):
        facts.append((desc, lhs >= rhs))

    def eq(desc, lhs, rhs):
        facts.append((desc, lhs == rhs))

    jp_h = sum(hv(*p) for p in PAIRS)
    jm_h = hv(0) + hv(1) + hv(2, 3) + hv(0, 1, 2) + hv(0, 1, 3)
    jp_g = sum(gv(*p) for p in PAIRS)
    jm_g = gv(0) + gv(1) + gv(2, 3) + gv(0, 1, 2) + gv(0, 1, 3)

    if case == 1:
        eq("J+_g = J+_h", jp_g, jp_h)
        ge("J-_h >= J-_g", jm_h, jm_g)
        ge("J_h >= 0", jp_h - jm_h, 0)
    elif case == 2:
        (p,) = hits
        sup = (0, 1, 2) if 2 in p or p == (0, 1) else (0, 1, 3)
        eq("J+_g = J+_h - h(pair) + t", jp_g, jp_h - hv(*p) + t)
        ge("J-_h - h(superset) + t >= J-_g", jm_h - hv(*sup) + t, jm_g)
        ge("h(superset) >= h(pair)", hv(*sup), hv(*p))
        ge("J_h >= 0", jp_h - jm_h, 0)
    elif case == 3:
        if (0, 2) in hits:
            ge("g12 + g14 + g24 >= g1 + g2 + g124", gv(0, 1) + gv(0, 3) + gv(1, 3), gv(0) + gv(1) + gv(0, 1, 3))
            ge("g13 + g23 >= g34 + g123", gv(0, 2) + gv(1, 2), gv(2, 3) + gv(0, 1, 2))
        else:
            ge("g12 + g13 + g23 >= g1 + g2 + g123", gv(0, 1) + gv(0, 2) + gv(1, 2), gv(0) + gv(1) + gv(0, 1, 2))
            ge("g14 + g24 >= g34 + g124", gv(0, 3) + gv(1, 3), gv(2, 3) + gv(0, 1, 3))
    elif case == 4:
        (other,) = hits - {(0, 1)}
        rest = [p for p in PAIRS if p not in ((0, 1), other)]
        ge(
            "remaining pair terms >= g1 + g2 + g34",
            sum(gv(*p) for p in rest),
            gv(0) + gv(1) + gv(2, 3),
        )
        ge("g12 + g(other) >= g123 + g124", gv(0, 1) + gv(*other), gv(0, 1, 2) + gv(0, 1, 3))
    elif case == 5:
        if (0, 2) in hits:
            ge("g12 + g23 + g14 >= g1 + g2 + g123", gv(0, 1) + gv(1, 2) + gv(0, 3), gv(0) + gv(1) + gv(0, 1, 2))
            ge("g13 + g24 >= g34 + g124", gv(0, 2) + gv(1, 3), gv(2, 3) + gv(0, 1, 3))
        else:
            ge("g12 + g24 + g13 >= g1 + g2 + g124", gv(0, 1) + gv(1, 3) + gv(0, 2), gv(0) + gv(1) + gv(0, 1, 3))
            ge("g14 + g23 >= g34 + g123", gv(0, 3) + gv(1, 2), gv(2, 3) + gv(0, 1, 2))
    elif case == 6:
        a = 0 if (0, 2) in hits else 1
        b = 1 - a
        ge(
            "pair terms without the capped element >= g1 + g2 + g(b34)",
            gv(0, 1) + gv(b, 2) + gv(b, 3),
            gv(0) + gv(1) + gv(b, 2, 3),
        )
        ge("g(b34) >= g34", gv(b, 2, 3), gv(2, 3))
        ge("t >= g123", t, gv(0, 1, 2))
        ge("t >= g124", t, gv(0, 1, 3))
    else:
        free = [p for p in PAIRS if p not in hits]
        k = len(hits)
        ge("every J- term is at most t", 5 * t - jm_g, 0)
        if k == 5:
            pass
        elif k == 4:
            (p,) = free
            ge("free pair term >= g(element 1 or 2)", gv(*p), gv(p[0]))
            ge("4t >= remaining J- terms", 4 * t, jm_g - gv(p[0]))
        else:
            f1, f2 = free
            a_, b_ = _cover_two(f1, f2)
            ge("free pair terms cover two J- terms", gv(*f1) + gv(*f2), sum(gv(*x) for x in (a_, b_)))
            ge("3t >= remaining J- terms", 3 * t, jm_g - sum(gv(*x) for x in (a_, b_)))
    if g is None:
        g = epsilon_perturb(h, eps)
    score = ingleton_score(g, *V)
    facts.append(("J_g matches direct evaluation", score == jp_g - jm_g))
    return CaseReport(case, tuple(tuple(i + 1 for i in p) for p in sorted(hits)), tuple(facts), score)


def _cover_two(f1, f2):
    """Two J- terms bounded by the two uncapped pair terms via one submodular step."""
    S = {f1, f2}
    if S == {(0, 2), (0, 3)}:
        return (0,), (2, 3)
    if S == {(1, 2), (1, 3)}:
        return (1,), (2, 3)
    return (0,), (1,)
