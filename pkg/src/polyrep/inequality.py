"""Polymatroid axioms, the Ingleton expression, and linear rank expressions."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError, PreconditionError, SizeLimitError, UndefinedRatioError
from .lattice import RankVector, _as_fraction

MAX_EXHAUSTIVE_N = 7
MAX_FULL_CHECK_N = 12


@dataclass(frozen=True)
class AxiomCheck:
    """Verdict of :func:`is_polymatroid`; truthy iff every axiom holds."""

    ok: bool
    axiom: str | None = None
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def _axes_view(h: RankVector) -> np.ndarray:
    # C-order reshape: bit i of the mask is axis n-1-i
    return h.numerators.reshape((2,) * h.n)


def _elemental(h: RankVector) -> AxiomCheck:
    n = h.n
    v = h.numerators
    if v[0] != 0:
        return AxiomCheck(False, "R1", (0,))
    full = (1 << n) - 1
    for i in range(n):
        if v[full] < v[full ^ (1 << i)]:
            return AxiomCheck(False, "R2", (full ^ (1 << i), full))
    if n < 2:
        return AxiomCheck(True)
    t = _axes_view(h)
    for i in range(n):
        ai = n - 1 - i
        for j in range(i + 1, n):
            aj = n - 1 - j

            def pick(bi, bj):
                sl = [slice(None)] * n
                sl[ai] = bi
                sl[aj] = bj
                return t[tuple(sl)]

            s = pick(1, 0) + pick(0, 1) - pick(0, 0) - pick(1, 1)
            bad = np.flatnonzero(s.ravel() < 0)
            if bad.size:
                rest = [b for b in range(n) if b not in (i, j)]
                # ravel index -> mask over the remaining bits (highest bit first)
                pos = int(bad[0])
                K = 0
                for r, b in enumerate(sorted(rest, reverse=True)):
                    if pos >> (len(rest) - 1 - r) & 1:
                        K |= 1 << b
                return AxiomCheck(False, "R3", (K | 1 << i, K | 1 << j))
    return AxiomCheck(True)


def _full_definition(h: RankVector) -> AxiomCheck:
    n = h.n
    if n > MAX_FULL_CHECK_N:
        raise SizeLimitError(f"full-definition check limited to n <= {MAX_FULL_CHECK_N}")
    v = h.numerators
    if v[0] != 0:
        return AxiomCheck(False, "R1", (0,))
    masks = np.arange(1 << n, dtype=np.int64)
    for A in range(1 << n):
        B = masks
        sub = (A & ~B) == 0
        bad = np.flatnonzero(sub & (v[A] > v[B]))
        if bad.size:
            return AxiomCheck(False, "R2", (A, int(bad[0])))
    for A in range(1 << n):
        B = masks
        lhs = v[A | B] + v[A & B]
        bad = np.flatnonzero(lhs > v[A] + v[B])
        if bad.size:
            return AxiomCheck(False, "R3", (A, int(bad[0])))
    return AxiomCheck(True)


def is_polymatroid(h: RankVector, mode: str = "elemental") -> AxiomCheck:
    """Check R1 (normalisation), R2 (monotonicity), R3 (submodularity).

    ``elemental`` checks ``h(∅) = 0``, ``h(X) >= h(X - i)`` and
    ``h(Ki) + h(Kj) >= h(K) + h(Kij)`` for all pairs ``i < j`` and
    ``K`` avoiding both; these imply the axioms for every pair of subsets.
    ``full`` checks the axioms literally over all pairs of subsets.
    """
    if mode == "elemental":
        return _elemental(h)
    if mode == "full":
        return _full_definition(h)
    raise InputError(f"unknown mode {mode!r}")


# -- Ingleton ----------------------------------------------------------------

def ingleton_score(h: RankVector, A1: int, A2: int, A3: int, A4: int) -> Fraction:
    g = h.ground
    A1, A2, A3, A4 = (g.check(a) for a in (A1, A2, A3, A4))
    return (
        h[A1 | A2] + h[A1 | A3] + h[A1 | A4] + h[A2 | A3] + h[A2 | A4]
        - h[A1] - h[A2] - h[A3 | A4] - h[A1 | A2 | A3] - h[A1 | A2 | A4]
    )


def ingleton_values(v: np.ndarray, A1, A2, A3, A4) -> np.ndarray:
    """Vectorised Ingleton expression on raw numerators ``v`` indexed by mask."""
    return (
        v[A1 | A2] + v[A1 | A3] + v[A1 | A4] + v[A2 | A3] + v[A2 | A4]
        - v[A1] - v[A2] - v[A3 | A4] - v[A1 | A2 | A3] - v[A1 | A2 | A4]
    )


@dataclass(frozen=True)
class IngletonReport:
    min_score: Fraction
    argmin: tuple
    quadruples_checked: int
    mode: str

    def record(self) -> dict:
        return {
            "min_score": str(self.min_score),
            "argmin": [format(a, "x") for a in self.argmin],
            "checked": self.quadruples_checked,
            "mode": self.mode,
        }


def _scan_block(v, A1_values, N, i3, i4, h34):
    """Best (value, A1, A2, A3, A4) over A1 in the block, A2 >= A1, A3 <= A4."""
    masks = np.arange(N, dtype=np.int64)
    best = None
    for A1 in A1_values:
        A2 = masks[A1:]
        # f(S) = h(A1 S) + h(A2 S) - h(A1 A2 S), one row per A2
        A12 = A1 | A2
        f = v[A1 | masks][None, :] + v[A2[:, None] | masks[None, :]] - v[A12[:, None] | masks[None, :]]
        c = v[A12] - v[A1] - v[A2]
        vals = c[:, None] + f[:, i3] + f[:, i4] - h34[None, :]
        k = int(np.argmin(vals))
        r, col = divmod(k, vals.shape[1])
        cand = (vals[r, col], A1, int(A2[r]), int(i3[col]), int(i4[col]))
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def ingleton_scan(
    h: RankVector,
    mode: str = "exhaustive",
    trials: int = 1_000_000,
    seed: int = 0,
    threads: int = 1,
) -> IngletonReport:
    """Minimum Ingleton score over quadruples of subsets.

    Exhaustive mode covers every quadruple up to the swaps ``A1 <-> A2`` and
    ``A3 <-> A4`` (``A1 <= A2``, ``A3 <= A4`` as masks); ties resolve to the
    lexicographically first quadruple.  Sampled mode draws ``trials``
    uniform quadruples from ``numpy.random.default_rng(seed)``.
    """
    n = h.n
    N = 1 << n
    v = h.numerators
    if mode == "exhaustive":
        if n > MAX_EXHAUSTIVE_N:
            raise SizeLimitError(f"exhaustive Ingleton scan limited to n <= {MAX_EXHAUSTIVE_N}; use sampled mode")
        i3, i4 = np.triu_indices(N)
        i3 = i3.astype(np.int64)
        i4 = i4.astype(np.int64)
        h34 = v[i3 | i4]
        threads = max(1, int(threads))
        blocks = [list(range(t, N, threads)) for t in range(threads)]
        if threads == 1:
            results = [_scan_block(v, blocks[0], N, i3, i4, h34)]
        else:
            with ThreadPoolExecutor(threads) as ex:
                results = list(ex.map(lambda b: _scan_block(v, b, N, i3, i4, h34), blocks))
        best = min((r for r in results if r is not None), key=lambda r: (r[0], r[1:]))
        pairs = N * (N + 1) // 2
        return IngletonReport(Fraction(int(best[0]), h.denominator), best[1:], pairs * pairs, "exhaustive")
    if mode == "sampled":
        trials = int(trials)
        if trials < 1:
            raise InputError("trials must be positive")
        rng = np.random.default_rng(seed)
        best = None
        chunk = 1 << 18
        done = 0
        while done < trials:
            t = min(chunk, trials - done)
            Q = rng.integers(0, N, size=(4, t), dtype=np.int64)
            vals = ingleton_values(v, *Q)
            k = int(np.argmin(vals))
            if best is None or vals[k] < best[0]:
                best = (vals[k],) + tuple(int(x) for x in Q[:, k])
            done += t
        return IngletonReport(Fraction(int(best[0]), h.denominator), best[1:], trials, "sampled")
    raise InputError(f"unknown mode {mode!r}")


def is_ingletonian(h: RankVector) -> bool:
    return ingleton_scan(h).min_score >= 0


# -- linear rank expressions -------------------------------------------------

@dataclass(frozen=True)
class LinearRankExpr:
    """``sum(c * h(union of masks))`` over its terms."""

    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(
            self, "terms", tuple((_as_fraction(c), tuple(int(a) for a in masks)) for c, masks in self.terms)
        )

    def __add__(self, other):
        return LinearRankExpr(self.terms + other.terms)

    def __neg__(self):
        return LinearRankExpr(tuple((-c, m) for c, m in self.terms))

    def __sub__(self, other):
        return self + (-other)


def ingleton_expr(A1, A2, A3, A4) -> LinearRankExpr:
    plus = [(A1, A2), (A1, A3), (A1, A4), (A2, A3), (A2, A4)]
    minus = [(A1,), (A2,), (A3, A4), (A1, A2, A3), (A1, A2, A4)]
    return LinearRankExpr(tuple((1, t) for t in plus) + tuple((-1, t) for t in minus))


def submodularity_expr(A, B) -> LinearRankExpr:
    return LinearRankExpr(((1, (A,)), (1, (B,)), (-1, (A | B,)), (-1, (A & B,))))


def eval_expr(h: RankVector, e: LinearRankExpr) -> Fraction:
    total = Fraction(0)
    for c, masks in e.terms:
        U = 0
        for a in masks:
            U |= h.ground.check(a)
        total += c * h[U]
    return total


def dfz_ratio(h: RankVector, numerators: Sequence[int], denominators: Sequence[int]) -> Fraction:
    """``min h(numerator singles) / max h(denominator singles)``."""
    if not numerators or not denominators:
        raise InputError("need at least one numerator and one denominator subset")
    top = max(h[a] for a in denominators)
    if any(h[a] <= 0 for a in denominators) or top <= 0:
        raise UndefinedRatioError("a denominator subset has zero rank")
    return min(h[a] for a in numerators) / top


def require_polymatroid(h: RankVector) -> None:
    chk = is_polymatroid(h)
    if not chk:
        raise PreconditionError(f"not a polymatroid: {chk.axiom} fails at {[hex(a) for a in chk.witness]}")
