"""Matroid recognition, circuits, connectivity, and the equality set I(M)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError, PreconditionError
from .inequality import is_polymatroid
from .lattice import RankVector, popcounts, scale


def is_matroid(h: RankVector) -> bool:
    """Integral ranks bounded by cardinality (on top of the polymatroid axioms)."""
    chk = is_polymatroid(h)
    if not chk:
        raise PreconditionError(f"not a polymatroid ({chk.axiom} fails)")
    if h.denominator != 1:
        return False
    return bool(np.all(h.numerators <= popcounts(h.n)))


def _require_matroid(h: RankVector) -> None:
    if not is_matroid(h):
        raise PreconditionError("rank vector is not a matroid")


def circuits(h: RankVector) -> list:
    """Minimal dependent sets, ordered by cardinality and then by mask."""
    _require_matroid(h)
    n = h.n
    size = popcounts(n)
    indep = h.numerators == size
    masks = np.arange(1 << n, dtype=np.int64)
    # dependent sets all of whose one-smaller subsets are independent
    cand = ~indep
    for i in range(n):
        has = (masks >> i & 1).astype(bool)
        cand &= ~has | indep[masks & ~(1 << i)]
    found = masks[cand]
    order = np.lexsort((found, size[found]))
    return [int(c) for c in found[order]]


def circuits_bruteforce(h: RankVector) -> list:
    """Reference enumeration: dependent sets with every proper subset independent."""
    n = h.n
    dep = [h[A] < bin(A).count("1") for A in range(1 << n)]
    out = []
    for C in range(1, 1 << n):
        if not dep[C]:
            continue
        S = (C - 1) & C
        minimal = True
        while S:
            if dep[S]:
                minimal = False
                break
            S = (S - 1) & C
        if minimal:
            out.append(C)
    return sorted(out, key=lambda c: (bin(c).count("1"), c))


def is_connected(h: RankVector) -> bool:
    """Every pair of elements lies in a common circuit."""
    n = h.n
    cs = circuits(h)
    covered = set()
    for C in cs:
        members = [i for i in range(n) if C >> i & 1]
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                covered.add((members[a], members[b]))
    return all((i, j) in covered for i in range(n) for j in range(i + 1, n))


def has_separator(h: RankVector) -> bool:
    """Some proper non-empty ``A`` with ``h(A) + h(X - A) = h(X)``."""
    v = h.numerators
    full = (1 << h.n) - 1
    masks = np.arange(1, full, dtype=np.int64)
    return bool(np.any(v[masks] + v[full ^ masks] == v[full]))


@dataclass(frozen=True)
class EqualityViolation:
    kind: str  # "H" for H(A|B)=0, "I" for I(A;B)=0
    A: int
    B: int

    def describe(self, ground) -> str:
        a, b = ground.describe(self.A), ground.describe(self.B)
        return f"H({a} | {b}) = 0" if self.kind == "H" else f"I({a} ; {b}) = 0"


@dataclass(frozen=True)
class EqualityCheck:
    ok: bool
    violation: EqualityViolation | None = None

    def __bool__(self):
        return self.ok


class EqualitySet:
    """The equalities ``H(A|B) = 0`` and ``I(A;B) = 0`` that hold in a matroid.

    Never materialised: membership is read off the source rank vector and
    :meth:`check` streams over conditioning sets ``B``.
    """

    def __init__(self, source: RankVector):
        _require_matroid(source)
        self.source = source

    def holds_H(self, A: int, B: int) -> bool:
        M = self.source
        return M[A | B] == M[B]

    def holds_I(self, A: int, B: int) -> bool:
        M = self.source
        return M[A] + M[B] == M[A | B]

    def check(self, g: RankVector) -> EqualityCheck:
        """First violated equality in order ``B`` ascending, then ``A``, ``H`` before ``I``."""
        M = self.source
        if g.n != M.n:
            raise InputError(f"ground-set mismatch: {M.n} vs {g.n}")
        m, v = M.numerators, g.numerators
        masks = np.arange(1 << M.n, dtype=np.int64)
        for B in range(1 << M.n):
            AB = masks | B
            zero_H_M = m[AB] == m[B]
            bad_H = zero_H_M & (v[AB] != v[B])
            zero_I_M = m[masks] + m[B] == m[AB]
            bad_I = zero_I_M & (v[masks] + v[B] != v[AB])
            iH = np.flatnonzero(bad_H)
            iI = np.flatnonzero(bad_I)
            if iH.size or iI.size:
                aH = int(iH[0]) if iH.size else None
                aI = int(iI[0]) if iI.size else None
                if aI is None or (aH is not None and aH <= aI):
                    return EqualityCheck(False, EqualityViolation("H", aH, B))
                return EqualityCheck(False, EqualityViolation("I", aI, B))
        return EqualityCheck(True)


def equality_set_check(M: RankVector, g: RankVector) -> EqualityCheck:
    return EqualitySet(M).check(g)


def proportionality(M: RankVector, g: RankVector) -> Fraction:
    """Constant ``c`` with ``g = c * M`` for a connected matroid ``M``.

    Raises ``AssertionError`` naming the first subset where ``g`` departs
    from ``c * M``; that would mean the inputs violate the hypotheses.
    """
    if not is_connected(M):
        raise PreconditionError("matroid is not connected")
    chk = equality_set_check(M, g)
    if not chk:
        raise PreconditionError(f"g violates {chk.violation.describe(M.ground)}")
    ref = next((1 << i for i in range(M.n) if M[1 << i] != 0), None)
    if ref is None:
        c = Fraction(0)
    else:
        c = g[ref] / M[ref]
    expected = scale(M, c) if c >= 0 else None
    if expected is None or expected != g:
        diff = [A for A in range(1 << M.n) if g[A] != c * M[A]]
        raise AssertionError(f"g != {c} * M at subset {M.ground.describe(diff[0])}")
    return c
