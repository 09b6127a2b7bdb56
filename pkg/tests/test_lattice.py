from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_polymatroid, parse_rankvec as oracle_parse
from polyrep.constructs import X1_LABELS, fano_x1
from polyrep.errors import InputError, SizeLimitError
from polyrep.gf import field_make
from polyrep.inequality import is_polymatroid
from polyrep.lattice import (
    GroundSet,
    RankVector,
    cond_entropy,
    format_rankvec,
    induce,
    mutual_info,
    parse_rankvec,
    rank,
    read_rankvec,
    restrict,
    scale,
    write_rankvec,
)
from polyrep.represent import random_arrangement, rank_vector

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def fano():
    return rank_vector(fano_x1(field_make(2)))


@pytest.fixture(scope="module")
def fano3():
    return rank_vector(fano_x1(field_make(3)))


def m(h, *names):
    return h.ground.mask(names)


def test_ground_set_validation():
    with pytest.raises(InputError):
        GroundSet(0)
    with pytest.raises(SizeLimitError):
        GroundSet(25)
    with pytest.raises(InputError):
        GroundSet(2, ("a", "a"))
    G = GroundSet(3, ("a", "b", "c"))
    assert G.mask(["a", "c"]) == 0b101 and G.describe(0b110) == "{b,c}"


def test_rank_lookup(fano):
    assert rank(fano, m(fano, "Y1")) == 1
    assert rank(fano, 0) == 0
    assert rank(fano, fano.ground.full) == 3
    with pytest.raises(InputError):
        rank(fano, 1 << 7)


def test_values_are_fractions(fano):
    assert isinstance(fano[3], Fraction)
    h = RankVector.from_values([0, Fraction(1, 2), Fraction(2, 3), 1])
    assert h.denominator == 6 and h[2] == Fraction(2, 3)


def test_cond_entropy(fano, fano3):
    assert cond_entropy(fano, m(fano, "W4"), m(fano, "W1", "W2")) == 0
    assert cond_entropy(fano3, m(fano3, "W4"), m(fano3, "W1", "W2")) == 1
    for A in range(128):
        assert cond_entropy(fano, A, A) == 0


def test_mutual_info(fano):
    assert mutual_info(fano, m(fano, "Y1"), m(fano, "Y2")) == 0
    assert mutual_info(fano, m(fano, "W1"), m(fano, "Y1", "Y2")) == 1
    for A in range(0, 128, 5):
        for B in range(0, 128, 7):
            assert mutual_info(fano, A, B, B) == 0


def test_scale(fano):
    assert scale(fano, 2).full == 6
    assert scale(fano, 0) == RankVector.zeros(fano.ground)
    assert scale(fano, 1) == fano
    assert scale(scale(fano, Fraction(2, 3)), Fraction(9, 4)) == scale(fano, Fraction(3, 2))
    with pytest.raises(InputError):
        scale(fano, -1)


def test_induce_examples(fano):
    g = induce(fano, [m(fano, x) for x in ("Y1", "Y2", "Y3", "W1")])
    assert g.n == 4 and g.full == 3
    assert induce(fano, [1 << i for i in range(7)]) == fano
    perm = [3, 0, 6, 1, 5, 2, 4]
    p = induce(fano, [1 << i for i in perm])
    for A in range(128):
        B = sum(1 << perm[i] for i in range(7) if A >> i & 1)
        assert p[A] == fano[B]
    d = induce(fano, [1, 1])
    assert d[1] == d[2] == d[3] == 1


def test_restrict_keeps_labels(fano):
    r = restrict(fano.with_labels(X1_LABELS), [3, 4, 6])
    assert r.ground.labels == ("W1", "W2", "W4") and r.full == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_induce_preserves_polymatroid(seed):
    rng = np.random.default_rng(seed)
    h = rank_vector(random_arrangement(rng, field_make(int(rng.choice([2, 3]))), 4, 3))
    V = [int(x) for x in rng.integers(0, 16, size=int(rng.integers(1, 5)))]
    g = induce(h, V)
    assert brute_polymatroid(list(g.values()), g.n)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_information_quantities_nonnegative_on_polymatroids(seed):
    rng = np.random.default_rng(seed)
    h = rank_vector(random_arrangement(rng, field_make(3), 4, 3))
    h = scale(h, Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9))))
    A, B, C = (int(x) for x in rng.integers(0, 16, size=3))
    assert cond_entropy(h, A, C) >= 0
    assert mutual_info(h, A, B, C) >= 0


def test_rankvec_golden_round_trip(tmp_path):
    text = (GOLDEN / "fano_gf2.rankvec").read_text()
    h = parse_rankvec(text)
    assert format_rankvec(h) == text
    write_rankvec(h, tmp_path / "h.rankvec")
    assert read_rankvec(tmp_path / "h.rankvec") == h


def test_rankvec_sparse_and_fractional():
    h = parse_rankvec("rankvec 2\n# comment\n3 5/2\n1 1/3\n")
    assert h[0] == 0 and h[2] == 0 and h[1] == Fraction(1, 3) and h[3] == Fraction(5, 2)
    assert oracle_parse(format_rankvec(h)) == list(h.values())


@pytest.mark.parametrize("text", [
    "", "rank 2\n", "rankvec x\n", "rankvec 2\n4 1/1\n", "rankvec 2\n1 1/1\n1 2/1\n", "rankvec 2\n1 a\n",
])
def test_rankvec_rejects_bad_input(text):
    with pytest.raises(InputError):
        parse_rankvec(text)


def test_equality_ignores_labels_and_representation(fano):
    assert fano.with_labels(X1_LABELS) == fano
    assert RankVector.from_values([0, 2, 2, 4]) == RankVector(GroundSet(2), np.array([0, 4, 4, 8]), 2)
    assert is_polymatroid(fano)
