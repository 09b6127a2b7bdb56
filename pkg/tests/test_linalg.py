import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import FANO_VECTORS, sympy_rank
from polyrep.errors import InputError
from polyrep.gf import field_make
from polyrep.linalg import (
    Subspace,
    complement,
    identity,
    intersect,
    matmul,
    project_away,
    projection_matrix,
    rank,
    rref,
    span,
    subspace_sum,
)

GF2, GF3 = field_make(2), field_make(3)


def rand_space(rng, field, d, max_rows=None):
    r = int(rng.integers(0, (max_rows or d) + 1))
    return Subspace(field, d, rng.integers(0, field.order, size=(r, d)))


def test_rref_identity():
    assert np.array_equal(rref(identity(4), GF2), identity(4))


def test_rref_characteristic_dependence():
    rows = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rref(rows, GF2).shape[0] == 2
    assert rref(rows, GF3).shape[0] == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5]))
def test_rank_matches_sympy(seed, p):
    rng = np.random.default_rng(seed)
    M = rng.integers(0, p, size=(int(rng.integers(1, 6)), int(rng.integers(1, 6))))
    assert rank(M, field_make(p)) == sympy_rank(M.tolist(), p)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_rref_canonical(seed):
    rng = np.random.default_rng(seed)
    A = rand_space(rng, GF3, 4)
    # a random invertible change of spanning set gives the identical basis
    extra = rng.integers(0, 3, size=(2, A.dim)) if A.dim else np.zeros((2, 0), dtype=np.int64)
    rows = np.vstack([A.basis, (extra @ A.basis) % 3]) if A.dim else A.basis
    assert Subspace(GF3, 4, rows[::-1]) == A


def test_span_sum_dim():
    e = identity(3)
    assert span(GF2, 3, e[:1]).dim == 1
    assert subspace_sum(span(GF2, 3, e[:1]), span(GF2, 3, e[1:2])).dim == 2
    A = span(GF2, 3, [[1, 1, 0]])
    assert subspace_sum(A, A) == A


def test_ambient_mismatch():
    with pytest.raises(InputError):
        subspace_sum(Subspace.zero(GF2, 3), Subspace.zero(GF2, 4))
    with pytest.raises(InputError):
        intersect(Subspace.zero(GF2, 3), Subspace.zero(GF3, 3))


def test_intersect_examples():
    e = identity(3)
    assert intersect(span(GF2, 3, e[:1]), span(GF2, 3, e[1:2])).dim == 0
    W1 = span(GF2, 3, [FANO_VECTORS[3]])
    Y12 = span(GF2, 3, FANO_VECTORS[:2])
    assert intersect(W1, Y12) == span(GF2, 3, [[1, 1, 0]])
    assert intersect(Y12, Y12) == Y12


def test_complement_examples():
    assert complement(Subspace.zero(GF2, 3)) == Subspace.full(GF2, 3)
    assert complement(Subspace.full(GF2, 3)).dim == 0
    A = span(GF2, 3, [[1, 1, 0]])
    C = complement(A)
    # e1 is taken, e2 = (e1+e2) + e1 is skipped, e3 is taken
    assert C == span(GF2, 3, identity(3)[[0, 2]])
    assert intersect(A, C).dim == 0 and subspace_sum(A, C).dim == 3


def test_project_away_examples():
    B = span(GF3, 3, [[1, 2, 0], [0, 0, 1]])
    assert project_away(Subspace.zero(GF3, 3), B) == B
    assert project_away(B, B).dim == 0
    A = span(GF2, 3, [FANO_VECTORS[0]])
    assert project_away(A, span(GF2, 3, [FANO_VECTORS[3]])).dim == 1
    assert project_away(A, span(GF2, 3, [FANO_VECTORS[0]])).dim == 0


def test_projection_is_idempotent_and_kills_A():
    rng = np.random.default_rng(7)
    for field in (GF2, GF3, field_make(2, 2)):
        for _ in range(30):
            A = rand_space(rng, field, 5)
            T = projection_matrix(A)
            assert np.array_equal(matmul(T, T, field), T)
            if A.dim:
                assert not matmul(A.basis, T, field).any()


def _lemma2_instance(seed, field):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, 7))
    A = rand_space(rng, field, d)
    Bs = [rand_space(rng, field, d, max_rows=3) for _ in range(int(rng.integers(1, 4)))]
    return A, Bs


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3]))
def test_lemma2_properties(seed, p):
    field = field_make(p)
    A, Bs = _lemma2_instance(seed, field)
    d = A.ambient_dim
    Bsum = Subspace.zero(field, d)
    for B in Bs:
        Bsum = Bsum + B
    T = projection_matrix(A)
    images = [project_away(A, B, T) for B in Bs]
    joint_images = Subspace.zero(field, d)
    for I in images:
        joint_images = joint_images + I
    # image of the sum is the sum of the images, with dimension H(B | A)
    assert project_away(A, Bsum, T) == joint_images
    assert joint_images.dim == (A + Bsum).dim - A.dim
    # sandwich bound
    assert Bsum.dim >= joint_images.dim >= Bsum.dim - A.dim
    # monotone under inclusion
    assert project_away(A, Bsum, T).contains_space(project_away(A, Bs[0], T))
    # trivially meeting subspaces keep their dimension
    for B in Bs:
        if intersect(A, B).dim == 0:
            assert project_away(A, B, T).dim == B.dim
    # modular identity
    B = Bs[0]
    assert A.dim + B.dim == (A + B).dim + intersect(A, B).dim
