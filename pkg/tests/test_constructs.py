from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_polymatroid, min_perturb
from polyrep.constructs import (
    PAIRS,
    X1_LABELS,
    X2_LABELS,
    classify_hits,
    dfz_x2,
    direct_sum,
    epsilon_perturb,
    equalities_x1,
    equalities_x2,
    evaluate_equalities,
    fano_x1,
    perturbation_case,
    phi,
    phi_eps,
)
from polyrep.errors import InputError, SizeLimitError
from polyrep.gf import field_make
from polyrep.inequality import ingleton_score, is_polymatroid
from polyrep.lattice import GroundSet, RankVector, cond_entropy, restrict
from polyrep.represent import random_arrangement, rank_vector

GF2, GF3 = field_make(2), field_make(3)
X1 = (1 << 7) - 1
X2 = ((1 << 13) - 1) << 7


@pytest.fixture(scope="module")
def fano():
    return rank_vector(fano_x1(GF2))


@pytest.fixture(scope="module")
def x2():
    return rank_vector(dfz_x2(GF3))


def test_fano_characteristic(fano):
    m = fano.ground.mask
    assert fano[m(["W1", "W2", "W4"])] == 2
    assert rank_vector(fano_x1(GF3))[m(["W1", "W2", "W4"])] == 3
    assert fano.full == 3


def test_x2_characteristic(x2):
    m = x2.ground.mask
    V = m(["V3", "V4", "V5", "V6", "V7", "V8"])
    assert cond_entropy(x2, m(["Z3"]), V) == 0
    assert cond_entropy(rank_vector(dfz_x2(GF2)), m(["Z3"]), V) == 1
    assert x2.full == 5


def test_equality_lists_shape():
    assert len(equalities_x1()) == 8 and len(equalities_x2()) == 16
    assert str(equalities_x1()[4]) == "H(W4 | W1,W2) = 0"
    assert str(equalities_x2()[0]) == "H(Z1,Z2,Z3,Z4,Z5) = H(Z1) + H(Z2) + H(Z3) + H(Z4) + H(Z5)"


def _failing(preds, h):
    return [str(p) for p, ok in evaluate_equalities(preds, h) if not ok]


def test_equalities_evaluate(fano, x2):
    assert _failing(equalities_x1(), fano.with_labels(X1_LABELS)) == []
    assert _failing(equalities_x2(), x2.with_labels(X2_LABELS)) == []
    assert _failing(equalities_x1(), rank_vector(fano_x1(GF3))) == ["H(W4 | W1,W2) = 0"]
    assert _failing(equalities_x2(), rank_vector(dfz_x2(GF2))) == ["H(Z3 | V3,V4,V5,V6,V7,V8) = 0"]
    with pytest.raises(InputError):
        evaluate_equalities(equalities_x1(), RankVector.zeros(GroundSet(7)))


def test_epsilon_perturb_examples(fano):
    assert epsilon_perturb(fano, 0) == fano
    assert epsilon_perturb(fano, 3) == RankVector.zeros(fano.ground)
    g = epsilon_perturb(fano, 1)
    assert g.full == 2 and all(g[1 << i] == 1 for i in range(7))
    for bad in (-1, Fraction(7, 2)):
        with pytest.raises(InputError):
            epsilon_perturb(fano, bad)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_epsilon_perturb_formula_and_axioms(seed):
    rng = np.random.default_rng(seed)
    h = rank_vector(random_arrangement(rng, field_make(int(rng.choice([2, 3]))), 4, 4))
    eps = Fraction(int(rng.integers(0, 6 * int(h.full) + 1)), 6)
    g = epsilon_perturb(h, eps)
    assert list(g.values()) == min_perturb(list(h.values()), eps)
    assert brute_polymatroid(list(g.values()), 4)


def test_direct_sum_examples(fano, x2):
    P = direct_sum(fano, x2)
    assert P.n == 20 and P.full == 8 and P[X1] == 3 and P[X2] == 5
    assert P == phi()
    zero = RankVector.zeros(GroundSet(1))
    D = direct_sum(fano, zero)
    assert all(D[A] == fano[A] for A in range(128))
    with pytest.raises(SizeLimitError):
        direct_sum(x2, x2)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_direct_sum_formula(seed):
    rng = np.random.default_rng(seed)
    a = rank_vector(random_arrangement(rng, GF3, 3, 3))
    b = rank_vector(random_arrangement(rng, GF2, 2, 3))
    s = direct_sum(a, b)
    for A in range(32):
        assert s[A] == a[A & 7] + b[A >> 3]


@pytest.mark.parametrize("eps,full", [(1, 7), (3, 5), (Fraction(1, 2), Fraction(15, 2))])
def test_phi_eps_values(eps, full):
    g = phi_eps(eps)
    assert g.full == full and g[X1] == 3 and g[X2] == 5
    assert g[X1] + g[X2] > g.full


def test_phi_eps_restrictions_and_range(fano, x2):
    g = phi_eps(Fraction(3, 2))
    assert restrict(g, range(7)) == fano and restrict(g, range(7, 20)) == x2
    for bad in (0, Fraction(7, 2), -1):
        with pytest.raises(InputError):
            phi_eps(bad)


@pytest.mark.parametrize("eps", [Fraction(1, 2), 1, Fraction(3, 2), 3])
def test_phi_eps_polymatroid(eps):
    assert is_polymatroid(phi_eps(eps))


def test_classify_hits_covers_every_pattern():
    from itertools import combinations
    seen = set()
    for k in range(6):
        for S in combinations(PAIRS, k):
            seen.add(classify_hits(frozenset(S)))
    assert seen == set(range(1, 8))
    assert classify_hits(frozenset()) == 1
    assert classify_hits(frozenset({(0, 1)})) == 2
    assert classify_hits(frozenset({(0, 2), (1, 2)})) == 3
    assert classify_hits(frozenset({(0, 1), (0, 2)})) == 4
    assert classify_hits(frozenset({(0, 2), (1, 3)})) == 5
    assert classify_hits(frozenset({(0, 2), (0, 3)})) == 6


def test_perturbation_case_examples(fano):
    r = perturbation_case(fano, 0, (1, 2, 4, 8))
    assert r.case == 1 and r.hits == () and r.verified
    m = fano.ground.mask
    q = (m(["Y1"]), m(["Y2"]), m(["Y3"]), m(["W3"]))
    r = perturbation_case(fano, 1, q)
    # every pair of distinct points spans a line of rank 2 = h(full) - 1
    assert r.hits == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4)) and r.case == 7
    assert r.verified and r.score == ingleton_score(epsilon_perturb(fano, 1), *q)
    with pytest.raises(InputError):
        perturbation_case(fano, 5, q)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_case_analysis_exhaustive_on_random_n4(seed):
    rng = np.random.default_rng(seed)
    h = rank_vector(random_arrangement(rng, field_make(int(rng.choice([2, 3]))), 4, 4))
    eps = Fraction(int(rng.integers(0, 3 * int(h.full) + 1)), 3)
    g = epsilon_perturb(h, eps)
    cases = set()
    for a1 in range(16):
        for a2 in range(a1, 16):
            for a3 in range(16):
                for a4 in range(a3, 16):
                    r = perturbation_case(h, eps, (a1, a2, a3, a4), g)
                    assert r.verified, (r.case, r.facts)
                    cases.add(r.case)
    assert cases <= set(range(1, 8))
