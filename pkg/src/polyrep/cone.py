"""Representable generators at small n and exact conic membership.

Membership of ``h`` in the cone spanned by finitely many generators is a
linear feasibility problem ``F c = h, c >= 0``.  It is solved by a phase-one
revised simplex in exact rational arithmetic with Bland's rule; an
infeasible instance yields a Farkas functional ``lam`` with
``lam . f_j >= 0`` for every generator and ``lam . h < 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InputError, SizeLimitError
from .gf import FieldSpec
from .lattice import GroundSet, RankVector
from .linalg import Subspace, subspace_sum
from .represent import Arrangement

MAX_TUPLES = 60_000_000


def all_subspaces(field: FieldSpec, d: int) -> list:
    """Every subspace of GF(q)^d, ordered by dimension then by basis."""
    q = field.order
    if q ** d > 1 << 16:
        raise SizeLimitError(f"{field}^{d} has too many vectors to enumerate subspaces")
    vectors = [np.array([(c // q ** i) % q for i in range(d)], dtype=np.int64) for c in range(1, q ** d)]
    found = {}
    frontier = [Subspace.zero(field, d)]
    found[frontier[0].key()] = frontier[0]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vectors:
                if S.contains(v):
                    continue
                T = Subspace(field, d, np.vstack([S.basis, v[None, :]]))
                k = T.key()
                if k not in found:
                    found[k] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.dim, S.basis.tobytes()))


def gaussian_binomial_total(q: int, d: int) -> int:
    """Number of subspaces of a d-dimensional space over GF(q)."""
    total = 0
    for k in range(d + 1):
        num = den = 1
        for i in range(k):
            num *= q ** (d - i) - 1
            den *= q ** (i + 1) - 1
        total += num // den
    return total


@dataclass
class GeneratorSet:
    ground: GroundSet
    generators: list = field(default_factory=list)
    sources: list = field(default_factory=list)
    tuples_enumerated: int = 0
    complete: bool = False

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def source_arrangement(self, j: int) -> Arrangement | None:
        src = self.sources[j]
        if src is None:
            return None
        S0 = src[0]
        return Arrangement(S0.field, S0.ambient_dim, src)

    def merge(self, other: "GeneratorSet") -> "GeneratorSet":
        if other.ground.n != self.ground.n:
            raise InputError("generator sets over different ground sets")
        out = GeneratorSet(self.ground, list(self.generators), list(self.sources),
                           self.tuples_enumerated + other.tuples_enumerated)
        seen = set(self.generators)
        for g, s in zip(other.generators, other.sources):
            if g not in seen:
                seen.add(g)
                out.generators.append(g)
                out.sources.append(s)
        return out

    @classmethod
    def from_vectors(cls, vectors) -> "GeneratorSet":
        vectors = list(vectors)
        if not vectors:
            raise InputError("empty generator list")
        out = cls(vectors[0].ground)
        seen = set()
        for g in vectors:
            if g.n != out.ground.n:
                raise InputError("generators over different ground sets")
            if g not in seen:
                seen.add(g)
                out.generators.append(g)
                out.sources.append(None)
        return out


def enumerate_generators(n: int, field: FieldSpec, max_dim: int) -> GeneratorSet:
    """Rank vectors of all n-tuples of subspaces of GF(q)^max_dim, deduplicated.

    Every subspace of a smaller ambient space embeds in the max_dim one, so
    this covers all arrangements of dimension up to ``max_dim``.
    """
    if not 1 <= n <= 4:
        raise SizeLimitError("generator enumeration supports 1 <= n <= 4")
    if not 1 <= max_dim <= 4:
        raise SizeLimitError("generator enumeration supports ambient dimension 1..4")
    subs = all_subspaces(field, max_dim)
    S = len(subs)
    if S ** n > MAX_TUPLES:
        raise SizeLimitError(f"{S}^{n} subspace tuples exceed the limit {MAX_TUPLES}")
    index = {T.key(): i for i, T in enumerate(subs)}
    dims = np.array([T.dim for T in subs], dtype=np.int64)
    table = np.empty((S, S), dtype=np.int64)
    for a in range(S):
        for b in range(a, S):
            table[a, b] = table[b, a] = index[subspace_sum(subs[a], subs[b]).key()]
    N = 1 << n
    bits = max(int(dims.max()).bit_length(), 1)
    pack = N * bits <= 63
    keys_seen = {}
    order = []
    rest_shape = (S,) * (n - 1)
    rest = np.indices(rest_shape).reshape(n - 1, -1) if n > 1 else np.zeros((0, 1), dtype=np.int64)
    for first in range(S):
        idx = np.vstack([np.full((1, rest.shape[1]), first, dtype=np.int64), rest])
        acc = np.zeros((N, idx.shape[1]), dtype=np.int64)  # acc[alpha] = subspace index of the span
        for alpha in range(1, N):
            low = (alpha & -alpha).bit_length() - 1
            prev = alpha & (alpha - 1)
            acc[alpha] = idx[low] if prev == 0 else table[acc[prev], idx[low]]
        ranks = dims[acc]
        ranks[0] = 0
        if pack:
            shifts = (np.arange(N, dtype=np.int64) * bits)[:, None]
            keys = np.bitwise_or.reduce(ranks << shifts, axis=0)
            _, first_pos = np.unique(keys, return_index=True)
        else:
            _, first_pos = np.unique(ranks.T, axis=0, return_index=True)
        for pos in np.sort(first_pos):
            key = ranks[:, pos].tobytes()
            if key not in keys_seen:
                keys_seen[key] = (ranks[:, pos].copy(), tuple(int(x) for x in idx[:, pos]))
                order.append(key)
    ground = GroundSet(n)
    out = GeneratorSet(ground, tuples_enumerated=S ** n)
    for key in order:
        r, tup = keys_seen[key]
        out.generators.append(RankVector(ground, r))
        out.sources.append(tuple(subs[i] for i in tup))
    return out


# -- exact LP -----------------------------------------------------------------

@dataclass(frozen=True)
class MembershipCertificate:
    verdict: str  # "member" | "non-member"
    coefficients: dict | None = None  # generator index -> Fraction (>= 0)
    functional: tuple | None = None  # one Fraction per subset mask

    @property
    def is_member(self) -> bool:
        return self.verdict == "member"

    def verify(self, h: RankVector, G: GeneratorSet) -> bool:
        N = 1 << h.n
        hv = h.values()
        if self.is_member:
            if any(c < 0 for c in self.coefficients.values()):
                return False
            total = [Fraction(0)] * N
            for j, c in self.coefficients.items():
                gv = G.generators[j].values()
                for A in range(N):
                    total[A] += c * gv[A]
            return total == hv
        lam = self.functional
        if len(lam) != N:
            return False
        if sum(l * x for l, x in zip(lam, hv)) >= 0:
            return False
        for g in G.generators:
            if sum(l * x for l, x in zip(lam, g.values())) < 0:
                return False
        return True

    def record(self) -> dict:
        if self.is_member:
            return {"verdict": self.verdict,
                    "coefficients": {str(j): str(c) for j, c in sorted(self.coefficients.items())}}
        return {"verdict": self.verdict, "functional": [str(x) for x in self.functional]}


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def phase_one(A: np.ndarray, b: list):
    """Minimise the artificial sum for ``A x = b, x >= 0`` (rows with b >= 0).

    ``A`` is an integer object array (m x N).  Returns ``(basis, xB, y, value)``
    where ``y`` is the optimal dual of the phase-one problem.  Bland's rule
    throughout: lowest-index entering variable, lowest-index leaving variable
    among ratio ties.
    """
    m, N = A.shape
    basis = list(range(N, N + m))
    Binv = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    cost = lambda var: 1 if var >= N else 0  # noqa: E731
    while True:
        cB = [cost(v) for v in basis]
        y = [sum((cB[i] * Binv[i][k] for i in range(m)), Fraction(0)) for k in range(m)]
        L = _lcm(f.denominator for f in y)
        yi = np.array([int(f * L) for f in y], dtype=object)
        red = -(yi @ A)  # reduced costs (times L) of structural columns
        in_basis = set(basis)
        enter = None
        neg = np.flatnonzero(red < 0)
        for j in neg:
            if int(j) not in in_basis:
                enter = int(j)
                break
        if enter is None:
            for i in range(m):
                var = N + i
                if var not in in_basis and 1 - y[i] < 0:
                    enter = var
                    break
        xB = [sum((Binv[i][k] * b[k] for k in range(m)), Fraction(0)) for i in range(m)]
        if enter is None:
            value = sum(xB[i] for i in range(m) if basis[i] >= N)
            return basis, xB, y, value
        if enter < N:
            col = [int(x) for x in A[:, enter]]
        else:
            col = [int(k == enter - N) for k in range(m)]
        w = [sum((Binv[i][k] * col[k] for k in range(m) if col[k]), Fraction(0)) for i in range(m)]
        best = None
        for i in range(m):
            if w[i] > 0:
                cand = (xB[i] / w[i], basis[i], i)
                if best is None or cand[:2] < best[:2]:
                    best = cand
        if best is None:
            raise AssertionError("phase-one problem cannot be unbounded")
        r = best[2]
        piv = w[r]
        Binv[r] = [x / piv for x in Binv[r]]
        for i in range(m):
            if i != r and w[i] != 0:
                f = w[i]
                Binv[i] = [x - f * z for x, z in zip(Binv[i], Binv[r])]
        basis[r] = enter


def cone_member(h: RankVector, G: GeneratorSet) -> MembershipCertificate:
    """Exact membership of ``h`` in the finite cone spanned by ``G``."""
    if h.n != G.ground.n:
        raise InputError(f"dimension mismatch: h has n={h.n}, generators n={G.ground.n}")
    if len(G) == 0:
        raise InputError("empty generator set")
    M = 1 << h.n
    L = _lcm([h.denominator] + [g.denominator for g in G.generators])
    A = np.empty((M, len(G)), dtype=object)
    for j, g in enumerate(G.generators):
        A[:, j] = [int(x) * (L // g.denominator) for x in g.numerators]
    b = [int(x) * (L // h.denominator) for x in h.numerators]
    sign = [(-1 if v < 0 else 1) for v in b]
    A = A * np.array(sign, dtype=object)[:, None]
    b = [s * v for s, v in zip(sign, b)]
    basis, xB, y, value = phase_one(A, b)
    N = len(G)
    if value == 0:
        coeffs = {}
        for var, x in zip(basis, xB):
            if var < N and x != 0:
                coeffs[var] = x
        cert = MembershipCertificate("member", coefficients=coeffs)
    else:
        lam = [-s * yk for s, yk in zip(sign, y)]
        den = _lcm(f.denominator for f in lam)
        g = 0
        for f in lam:
            g = math.gcd(g, int(f * den))
        g = g or 1
        lam = tuple(Fraction(int(f * den) // g) for f in lam)
        cert = MembershipCertificate("non-member", functional=lam)
    if not cert.verify(h, G):
        raise AssertionError("membership certificate failed exact re-verification")
    return cert
