"""Subspace algebra over GF(p^m).

Matrices are 2-d numpy ``int64`` arrays of element codes (see :mod:`polyrep.gf`);
the field is always passed alongside.  A :class:`Subspace` stores its basis in
reduced row echelon form, so two equal subspaces have identical bases.
"""
from __future__ import annotations

import numpy as np

from .errors import InputError, SizeLimitError
from .gf import FieldSpec, format_element

MAX_AMBIENT = 64


def as_matrix(rows, d: int | None = None) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else np.zeros((0, d or 0), dtype=np.int64)
    if arr.ndim != 2:
        raise InputError("expected a 2-d array of field codes")
    if d is not None and arr.shape[1] != d and arr.shape[0] > 0:
        raise InputError(f"rows have length {arr.shape[1]}, expected {d}")
    if arr.shape[0] == 0 and d is not None:
        arr = np.zeros((0, d), dtype=np.int64)
    return arr


def rref_pivots(M: np.ndarray, field: FieldSpec):
    """Reduced row echelon form of ``M`` with zero rows dropped, plus pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r] = field.mul(R[r], field.inv(lead))
        factors = R[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            R[hit] = field.sub(R[hit], field.mul(factors[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rref(M: np.ndarray, field: FieldSpec) -> np.ndarray:
    return rref_pivots(M, field)[0]


def rank(M: np.ndarray, field: FieldSpec) -> int:
    if M.shape[0] == 0:
        return 0
    return rref(M, field).shape[0]


def matmul(X: np.ndarray, Y: np.ndarray, field: FieldSpec) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    if X.shape[1] != Y.shape[0]:
        raise InputError(f"shape mismatch {X.shape} @ {Y.shape}")
    if field.m == 1 and field.p ** 2 * max(X.shape[1], 1) < 2 ** 62:
        return (X @ Y) % field.p
    out = np.zeros((X.shape[0], Y.shape[1]), dtype=np.int64)
    for k in range(X.shape[1]):
        out = field.add(out, field.mul(X[:, k, None], Y[None, k, :]))
    return out


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.int64)


def inverse(P: np.ndarray, field: FieldSpec) -> np.ndarray:
    d = P.shape[0]
    R, piv = rref_pivots(np.hstack([P, identity(d)]), field)
    if piv[:d] != list(range(d)) or R.shape[0] < d:
        raise InputError("matrix is singular")
    return R[:, d:]


class Subspace:
    """A subspace of GF(p^m)^d with canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, rows=()):
        if not 0 <= ambient_dim <= MAX_AMBIENT:
            raise SizeLimitError(f"ambient dimension {ambient_dim} outside [0, {MAX_AMBIENT}]")
        M = as_matrix(rows, ambient_dim)
        if M.size and (M.min() < 0 or M.max() >= field.order):
            raise InputError(f"entries are not valid codes of {field}")
        basis, pivots = rref_pivots(M, field) if M.shape[0] else (M, [])
        basis.setflags(write=False)
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, field, d):
        return cls(field, d)

    @classmethod
    def full(cls, field, d):
        return cls(field, d, identity(d))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _same_space(self, other: "Subspace"):
        if not isinstance(other, Subspace):
            raise InputError(f"expected a Subspace, got {type(other).__name__}")
        if other.field != self.field or other.ambient_dim != self.ambient_dim:
            raise InputError(
                f"ambient mismatch: {self.field}^{self.ambient_dim} vs {other.field}^{other.ambient_dim}"
            )

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis.tobytes()))

    def key(self) -> bytes:
        return self.basis.tobytes() + bytes([self.dim])

    def __add__(self, other):
        return subspace_sum(self, other)

    def __repr__(self):
        rows = ["(" + " ".join(format_element(c, self.field) for c in row) + ")" for row in self.basis]
        return f"Subspace({self.field}^{self.ambient_dim}, dim={self.dim}, [{', '.join(rows)}])"

    def contains(self, vector) -> bool:
        v = as_matrix(vector, self.ambient_dim)
        return rank(np.vstack([self.basis, v]), self.field) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        self._same_space(other)
        return subspace_sum(self, other).dim == self.dim

    def annihilator(self) -> np.ndarray:
        """Rows ``N`` with ``N @ u == 0`` exactly for ``u`` in this subspace."""
        d = self.ambient_dim
        free = [c for c in range(d) if c not in self.pivots]
        N = np.zeros((len(free), d), dtype=np.int64)
        for i, c in enumerate(free):
            N[i, c] = 1
            # u_c coefficient of e_c, pivot coordinates pick up -basis[r, c]
            for r, pc in enumerate(self.pivots):
                N[i, pc] = self.field.neg(int(self.basis[r, c]))
        return N


def span(field: FieldSpec, ambient_dim: int, vectors) -> Subspace:
    return Subspace(field, ambient_dim, vectors)


def dim(A: Subspace) -> int:
    return A.dim


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    A._same_space(B)
    return Subspace(A.field, A.ambient_dim, np.vstack([A.basis, B.basis]))


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """``A ∩ B`` from the left kernel of the stacked bases."""
    A._same_space(B)
    field, d = A.field, A.ambient_dim
    r, s = A.dim, B.dim
    if r == 0 or s == 0:
        return Subspace.zero(field, d)
    S = np.vstack([A.basis, B.basis])
    R = rref(np.hstack([S, identity(r + s)]), field)
    kernel = R[np.all(R[:, :d] == 0, axis=1), d:]
    if kernel.shape[0] == 0:
        return Subspace.zero(field, d)
    return Subspace(field, d, matmul(kernel[:, :r], A.basis, field))


def complement(A: Subspace) -> Subspace:
    """Greedy complement: standard basis vectors taken in order when independent."""
    field, d = A.field, A.ambient_dim
    chosen = []
    current = A.basis
    for i in range(d):
        if current.shape[0] == d:
            break
        e = np.zeros((1, d), dtype=np.int64)
        e[0, i] = 1
        trial = np.vstack([current, e])
        if rank(trial, field) > current.shape[0]:
            chosen.append(i)
            current = rref(trial, field)
    rows = np.zeros((len(chosen), d), dtype=np.int64)
    rows[np.arange(len(chosen)), chosen] = 1
    return Subspace(field, d, rows)


def projection_matrix(A: Subspace) -> np.ndarray:
    """Matrix ``T`` with ``u @ T`` the component of ``u`` in ``complement(A)``."""
    field, d = A.field, A.ambient_dim
    if A.dim == 0:
        return identity(d)
    star = complement(A)
    P = np.vstack([star.basis, A.basis])
    Pinv = inverse(P, field)
    return matmul(Pinv[:, : star.dim], star.basis, field)


def project_away(A: Subspace, B: Subspace, T: np.ndarray | None = None) -> Subspace:
    """``T_A(B)``: image of ``B`` under projection onto the complement of ``A``."""
    A._same_space(B)
    if A.dim == 0:
        return B
    if T is None:
        T = projection_matrix(A)
    if B.dim == 0:
        return B
    return Subspace(A.field, A.ambient_dim, matmul(B.basis, T, A.field))


def embed_matrix(M: np.ndarray, source: FieldSpec, target: FieldSpec) -> np.ndarray:
    """Re-code a matrix over a prime field as a matrix over ``target``.

    Constants of GF(p) keep their integer code inside GF(p^m), so this is a copy.
    """
    if not source.is_prime or source.p != target.p:
        raise InputError(f"cannot embed {source} into {target}")
    return np.array(M, dtype=np.int64, copy=True)
