"""Subspace arrangements and the rank vectors they induce.

Also the constructive side of integer ε-perturbation: lift an arrangement
to a larger field, pick a vector avoiding every deficient flat, project the
whole arrangement away from it, and repeat.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, SizeLimitError, UnsupportedError
from .gf import FieldSpec, field_make, format_element, parse_element, parse_field
from .lattice import MAX_ELEMENTS, GroundSet, RankVector
from .linalg import (
    Subspace,
    embed_matrix,
    intersect,
    matmul,
    projection_matrix,
    project_away,
    rank,
    rref,
    subspace_sum,
)


@dataclass(frozen=True)
class Arrangement:
    field: FieldSpec
    ambient_dim: int
    subspaces: tuple
    labels: tuple | None = None

    def __post_init__(self):
        subs = tuple(self.subspaces)
        object.__setattr__(self, "subspaces", subs)
        if not 1 <= len(subs) <= MAX_ELEMENTS:
            raise SizeLimitError(f"arrangements hold 1..{MAX_ELEMENTS} subspaces, got {len(subs)}")
        for S in subs:
            if S.field != self.field or S.ambient_dim != self.ambient_dim:
                raise InputError("all subspaces must share the arrangement's field and ambient space")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(subs) or len(set(labels)) != len(labels):
                raise InputError("labels must be distinct and one per subspace")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_rows(cls, field: FieldSpec, ambient_dim: int, blocks, labels=None) -> "Arrangement":
        subs = tuple(Subspace(field, ambient_dim, rows) for rows in blocks)
        return cls(field, ambient_dim, subs, tuple(labels) if labels else None)

    @property
    def n(self) -> int:
        return len(self.subspaces)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.n, self.labels)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"V{i + 1}"

    def span_of(self, alpha: int) -> Subspace:
        rows = [S.basis for i, S in enumerate(self.subspaces) if alpha >> i & 1]
        if not rows:
            return Subspace.zero(self.field, self.ambient_dim)
        return Subspace(self.field, self.ambient_dim, np.vstack(rows))

    def replace(self, subspaces) -> "Arrangement":
        return Arrangement(self.field, self.ambient_dim, tuple(subspaces), self.labels)

    def project_all(self, A: Subspace) -> "Arrangement":
        if A.dim == 0:
            return self
        T = projection_matrix(A)
        return self.replace(project_away(A, S, T) for S in self.subspaces)


def rank_vector(arr: Arrangement) -> RankVector:
    """Dimension of the span of every sub-collection.

    Subsets are visited depth first; the span of ``alpha`` is obtained by
    adding the lowest member of ``alpha`` to the already reduced span of the
    rest, so each subset costs one small elimination.
    """
    n, field, d = arr.n, arr.field, arr.ambient_dim
    out = np.zeros(1 << n, dtype=np.int64)
    bases = [S.basis for S in arr.subspaces]
    empty = np.zeros((0, d), dtype=np.int64)

    def visit(mask, basis, upto):
        for i in range(upto):
            child = mask | (1 << i)
            Vi = bases[i]
            if Vi.shape[0] == 0:
                cb = basis
            elif basis.shape[0] == d:
                cb = basis
            else:
                cb = rref(np.vstack([basis, Vi]), field)
            out[child] = cb.shape[0]
            if i:
                visit(child, cb, i)

    visit(0, empty, n)
    return RankVector(arr.ground, out)


def naive_rank_vector(arr: Arrangement) -> RankVector:
    """Per-subset elimination; slow reference for :func:`rank_vector`."""
    vals = [arr.span_of(a).dim for a in range(1 << arr.n)]
    return RankVector(arr.ground, np.array(vals, dtype=np.int64))


def lift(arr: Arrangement, m: int) -> Arrangement:
    """The same spanning vectors, read over GF(p^m) instead of GF(p)."""
    if not arr.field.is_prime:
        raise UnsupportedError("lifting is only implemented from prime fields")
    if m < 1:
        raise InputError("extension degree must be >= 1")
    if m == 1:
        return arr
    target = field_make(arr.field.p, m)
    subs = tuple(
        Subspace(target, arr.ambient_dim, embed_matrix(S.basis, arr.field, target)) for S in arr.subspaces
    )
    return Arrangement(target, arr.ambient_dim, subs, arr.labels)


def deficient_flats(arr: Arrangement, h: RankVector | None = None) -> list:
    """Distinct spans ``<V_alpha>`` whose dimension is below the full rank."""
    h = rank_vector(arr) if h is None else h
    top = h.numerators[-1]
    seen = {}
    for alpha in np.flatnonzero(h.numerators < top):
        F = arr.span_of(int(alpha))
        seen.setdefault(F.key(), F)
    return list(seen.values())


@dataclass(frozen=True)
class ExternalVector:
    degree: int
    field: FieldSpec
    vector: np.ndarray
    arrangement: Arrangement

    def __repr__(self):
        coords = " ".join(format_element(c, self.field) for c in self.vector)
        return f"ExternalVector(m={self.degree}, {self.field}, ({coords}))"


def _scan_external(field: FieldSpec, span_basis: np.ndarray, flats, chunk: int = 4096):
    """First vector of ``span_basis`` (lexicographic coordinates) outside every flat."""
    C = span_basis.shape[0]
    q = field.order
    checks = [F.annihilator() for F in flats]
    checks = [N for N in checks if N.shape[0]]
    if any(F.dim == F.ambient_dim for F in flats):
        return None
    total = q ** C
    start = 1
    digit_w = q ** np.arange(C - 1, -1, -1, dtype=object)
    while start < total:
        stop = min(total, start + chunk)
        idx = np.arange(start, stop, dtype=np.int64) if total < 2 ** 62 else None
        if idx is None:
            raise SizeLimitError("candidate space too large to enumerate")
        coords = np.stack([(idx // int(w)) % q for w in digit_w], axis=1)
        U = matmul(coords, span_basis, field)
        ok = np.ones(U.shape[0], dtype=bool)
        for N in checks:
            ok &= np.any(matmul(U, N.T, field) != 0, axis=1)
            if not ok.any():
                break
        hits = np.flatnonzero(ok)
        if hits.size:
            return U[hits[0]]
        start = stop
    return None


def find_external_vector(arr: Arrangement, max_degree: int = 16) -> ExternalVector:
    """A vector in the total span avoiding every deficient flat.

    The search starts at the smallest ``m`` with ``p^m`` exceeding the number
    of distinct nonzero deficient flats and grows ``m`` by one until the scan
    hits.
    """
    h = rank_vector(arr)
    C = int(h.numerators[-1])
    if C == 0:
        raise InputError("arrangement spans the zero space")
    flats = deficient_flats(arr, h)
    total = arr.span_of(h.ground.full).basis
    if not arr.field.is_prime:
        u = _scan_external(arr.field, total, flats)
        if u is None:
            raise UnsupportedError(f"no external vector over {arr.field}; lift from the prime field instead")
        return ExternalVector(arr.field.m, arr.field, u, arr)
    q = arr.field.p
    # the zero flat is avoided by any nonzero candidate, so it does not count
    proper = sum(F.dim > 0 for F in flats)
    m = 1
    while q ** m <= proper:
        m += 1
    while m <= max_degree:
        if q ** (m * C) > 1 << 40:
            raise SizeLimitError(f"GF({q}^{m})^{C} is too large to scan")
        big = lift(arr, m)
        big_flats = [Subspace(big.field, arr.ambient_dim, embed_matrix(F.basis, arr.field, big.field)) for F in flats]
        u = _scan_external(big.field, embed_matrix(total, arr.field, big.field), big_flats)
        if u is not None:
            return ExternalVector(m, big.field, u, big)
        m += 1
    raise SizeLimitError(f"no external vector found up to degree {max_degree}")


def covering_degree(p: int, n: int) -> int:
    """Smallest ``m`` with ``p^m >= 2^n - 1``.

    A space over a field with ``Q`` elements is never a union of ``Q`` or fewer
    proper subspaces, and an n-element arrangement has at most ``2^n - 1``
    deficient flats, so every round of :func:`integer_perturb` succeeds.
    """
    m = 1
    while p ** m < (1 << n) - 1:
        m += 1
    return m


def integer_perturb(arr: Arrangement, k: int, degree: int | None = None) -> Arrangement:
    """Arrangement realising ``min(h(A), h(full) - k)`` for integer ``k``."""
    h = rank_vector(arr)
    C = int(h.numerators[-1])
    if isinstance(k, bool) or int(k) != k or not 0 < k <= C:
        raise InputError(f"k must be an integer in (0, {C}], got {k}")
    k = int(k)
    if arr.field.is_prime:
        m = degree or covering_degree(arr.field.p, arr.n)
        work = lift(arr, m)
    else:
        work = arr
    total_field = work.field
    for _ in range(k):
        hw = rank_vector(work)
        flats = deficient_flats(work, hw)
        u = _scan_external(total_field, work.span_of(hw.ground.full).basis, flats)
        if u is None:
            raise UnsupportedError(f"{total_field} too small for this arrangement; pass a larger degree")
        A = Subspace(total_field, work.ambient_dim, u.reshape(1, -1))
        work = work.project_all(A)
    target = np.minimum(h.numerators, C - k)
    got = rank_vector(work)
    if not np.array_equal(got.numerators, target):
        raise AssertionError("integer perturbation failed its own postcondition")
    return work


def conditional_repair_space(arr: Arrangement, c: int, alpha: int) -> Subspace:
    """Subspace ``A`` of ``V_c`` complementing ``<V_alpha>`` inside ``<V_c, V_alpha>``."""
    if not 0 <= c < arr.n:
        raise InputError(f"index {c} out of range")
    if alpha >> c & 1:
        raise InputError("the repaired element must not belong to alpha")
    base = arr.span_of(alpha).basis
    chosen = []
    for row in arr.subspaces[c].basis:
        trial = np.vstack([base, row[None, :]])
        if rank(trial, arr.field) > base.shape[0]:
            chosen.append(row)
            base = rref(trial, arr.field)
    rows = np.array(chosen, dtype=np.int64).reshape(len(chosen), arr.ambient_dim)
    return Subspace(arr.field, arr.ambient_dim, rows)


def fix_conditional(arr: Arrangement, c: int, alpha: int) -> Arrangement:
    """Project away a part of ``V_c`` so that ``H(V_c | V_alpha) = 0`` afterwards."""
    return arr.project_all(conditional_repair_space(arr, c, alpha))


def independence_repair_space(arr: Arrangement, beta: int) -> Subspace:
    """Sum over ``i`` in beta of ``V_i ∩ <V_j, j in beta minus i>``."""
    members = [i for i in range(arr.n) if beta >> i & 1]
    if len(members) < 2:
        raise InputError("beta needs at least two elements")
    A = Subspace.zero(arr.field, arr.ambient_dim)
    for i in members:
        others = arr.span_of(beta & ~(1 << i))
        A = subspace_sum(A, intersect(arr.subspaces[i], others))
    return A


def fix_independence(arr: Arrangement, beta: int) -> Arrangement:
    """Project away the pairwise overlaps so the members of beta become independent."""
    return arr.project_all(independence_repair_space(arr, beta))


def random_arrangement(rng: np.random.Generator, field: FieldSpec, n: int, d: int, max_rows: int | None = None):
    """Arrangement of ``n`` subspaces, each spanned by up to ``max_rows`` random vectors."""
    max_rows = d if max_rows is None else max_rows
    blocks = []
    for _ in range(n):
        r = int(rng.integers(0, max_rows + 1))
        blocks.append(rng.integers(0, field.order, size=(r, d)))
    return Arrangement.from_rows(field, d, blocks)


# -- "arr v1" text format ----------------------------------------------------

def format_arrangement(arr: Arrangement) -> str:
    lines = [f"arr {arr.field} {arr.ambient_dim} {arr.n}"]
    for i, S in enumerate(arr.subspaces):
        lines.append(f"subspace {arr.label(i)} {S.dim}")
        for row in S.basis:
            lines.append(" ".join(format_element(c, arr.field) for c in row))
    return "\n".join(lines) + "\n"


def parse_arrangement(text: str) -> Arrangement:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty arrangement input")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "arr":
        raise InputError(f"bad arrangement header {lines[0]!r}")
    field = parse_field(head[1])
    try:
        d, k = int(head[2]), int(head[3])
    except ValueError:
        raise InputError(f"bad arrangement header {lines[0]!r}") from None
    pos = 1
    labels, blocks = [], []
    for _ in range(k):
        if pos >= len(lines):
            raise InputError("arrangement ended early")
        parts = lines[pos].split()
        if len(parts) != 3 or parts[0] != "subspace":
            raise InputError(f"bad subspace header {lines[pos]!r}")
        name, r = parts[1], int(parts[2])
        pos += 1
        rows = []
        for _ in range(r):
            if pos >= len(lines):
                raise InputError("arrangement ended early")
            toks = lines[pos].split()
            if len(toks) != d:
                raise InputError(f"row {lines[pos]!r} does not have {d} entries")
            rows.append([parse_element(t, field) for t in toks])
            pos += 1
        labels.append(name)
        blocks.append(np.array(rows, dtype=np.int64).reshape(r, d))
    if pos != len(lines):
        raise InputError("trailing content after the last subspace")
    return Arrangement.from_rows(field, d, blocks, labels)


def read_arrangement(path) -> Arrangement:
    with open(path) as fh:
        return parse_arrangement(fh.read())


def write_arrangement(arr: Arrangement, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_arrangement(arr))

