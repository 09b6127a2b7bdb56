from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_rank_vector
from polyrep.cone import (
    GeneratorSet,
    MembershipCertificate,
    all_subspaces,
    cone_member,
    enumerate_generators,
    gaussian_binomial_total,
)
from polyrep.errors import InputError, SizeLimitError
from polyrep.gf import field_make
from polyrep.lattice import RankVector, scale
from polyrep.represent import random_arrangement

GF2, GF3 = field_make(2), field_make(3)
VIOLATOR = [0, 2, 2, 3, 2, 3, 3, 4, 2, 3, 3, 4, 4, 4, 4, 4]


@pytest.fixture(scope="module")
def gens_n3():
    return enumerate_generators(3, GF2, 2)


@pytest.mark.parametrize("q,d,total", [(2, 1, 2), (2, 2, 5), (2, 3, 16), (2, 4, 67), (3, 2, 6), (3, 3, 28)])
def test_subspace_counts(q, d, total):
    assert gaussian_binomial_total(q, d) == total
    subs = all_subspaces(field_make(q), d)
    assert len(subs) == total
    assert len({S.key() for S in subs}) == total
    dims = [S.dim for S in subs]
    assert dims == sorted(dims)


def test_subspace_enumeration_limit():
    with pytest.raises(SizeLimitError):
        all_subspaces(GF3, 11)


def test_small_generator_sets():
    one = enumerate_generators(1, GF2, 1)
    assert sorted(tuple(g.values()) for g in one) == [(0, 0), (0, 1)]
    two = enumerate_generators(2, GF2, 2)
    assert RankVector.from_values([0, 1, 1, 1]) in set(two)
    three = enumerate_generators(3, GF2, 2)
    u23 = RankVector.from_function(3, lambda A: min(bin(A).count("1"), 2))
    assert u23 in set(three)
    assert three.tuples_enumerated == 5 ** 3


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_generators_cover_random_arrangements(seed):
    rng = np.random.default_rng(seed)
    arr = random_arrangement(rng, GF2, 3, 2)
    want = naive_rank_vector([S.basis.tolist() for S in arr.subspaces], 2)
    gens = enumerate_generators(3, GF2, 2)
    assert want in [list(g.values()) for g in gens]


def test_generator_sources_reproduce_ranks(gens_n3):
    for j in range(0, len(gens_n3), 3):
        arr = gens_n3.source_arrangement(j)
        ranks = naive_rank_vector([S.basis.tolist() for S in arr.subspaces], 2)
        assert ranks == list(gens_n3.generators[j].values())


def test_generator_limits_and_merge(gens_n3):
    with pytest.raises(SizeLimitError):
        enumerate_generators(5, GF2, 2)
    with pytest.raises(SizeLimitError):
        enumerate_generators(2, GF2, 5)
    merged = gens_n3.merge(enumerate_generators(3, GF3, 2))
    assert len(merged) >= len(gens_n3)
    assert len(set(merged)) == len(merged)
    with pytest.raises(InputError):
        gens_n3.merge(enumerate_generators(2, GF2, 2))
    with pytest.raises(InputError):
        GeneratorSet.from_vectors([])


def test_member_single_generator(gens_n3):
    g = gens_n3.generators[-1]
    cert = cone_member(g, gens_n3)
    assert cert.is_member and cert.verify(g, gens_n3)


def test_member_combination(gens_n3):
    f1, f2 = gens_n3.generators[1], gens_n3.generators[4]
    h = RankVector.from_values([2 * a + 3 * b for a, b in zip(f1.values(), f2.values())])
    cert = cone_member(h, gens_n3)
    assert cert.is_member and cert.verify(h, gens_n3)
    assert all(c >= 0 for c in cert.coefficients.values())


def test_non_member_outside_orthant():
    G = GeneratorSet.from_vectors([RankVector.from_values([0, 1, 0, 1]), RankVector.from_values([0, 0, 1, 1])])
    h = RankVector.from_values([0, 1, 1, 1])
    cert = cone_member(h, G)
    assert not cert.is_member and cert.verify(h, G)
    lam = cert.functional
    assert sum(l * x for l, x in zip(lam, h.values())) < 0
    assert cert.record()["verdict"] == "non-member"


def test_violator_not_in_binary_cone():
    G = enumerate_generators(4, GF2, 2)
    h = RankVector.from_values(VIOLATOR)
    cert = cone_member(h, G)
    assert not cert.is_member and cert.verify(h, G)


@pytest.mark.parametrize("c", [Fraction(1, 3), Fraction(2), Fraction(11, 7)])
def test_verdict_scale_invariant(gens_n3, c):
    h = RankVector.from_function(3, lambda A: min(bin(A).count("1"), 2))
    bad = RankVector.from_values([0, 1, 1, 2, 1, 2, 2, 1])
    assert cone_member(scale(h, c), gens_n3).is_member
    assert not cone_member(scale(bad, c), gens_n3).is_member


def test_dimension_mismatch(gens_n3):
    with pytest.raises(InputError):
        cone_member(RankVector.from_values([0, 1]), gens_n3)


def test_tampered_certificates_fail(gens_n3):
    h = gens_n3.generators[2]
    cert = cone_member(h, gens_n3)
    bad = MembershipCertificate("member", coefficients={j: c * 2 for j, c in cert.coefficients.items()})
    assert not bad.verify(h, gens_n3)
    neg = MembershipCertificate("member", coefficients={0: Fraction(-1)})
    assert not neg.verify(h, gens_n3)
    wrong = MembershipCertificate("non-member", functional=(Fraction(0),) * 8)
    assert not wrong.verify(h, gens_n3)
