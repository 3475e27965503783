from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cbdiv.errors import DomainError
from cbdiv.fusion import (
    factorization_channels,
    fuse,
    fusion_product,
    rank,
    rank_level_one_closed_form,
    tensor_decompose,
    verlinde_rank_numeric,
    weight_system,
    weyl_dimension,
)
from cbdiv.lie import Weight, dual_weight, level_weights, tables_for


def W(*labels):
    return Weight(tuple(labels))


def fw(r, i, k=1):
    return Weight.fundamental(r, i, k)


# -- classical representation theory --------------------------------------------

SMALL_WEIGHTS = [
    ("A", 1, (3,)), ("A", 2, (1, 1)), ("A", 2, (2, 1)), ("A", 3, (1, 0, 1)),
    ("B", 2, (1, 0)), ("B", 2, (0, 1)), ("B", 2, (1, 1)), ("B", 2, (0, 3)),
    ("B", 3, (0, 0, 1)), ("B", 3, (2, 0, 0)), ("B", 3, (1, 0, 1)),
    ("C", 3, (0, 1, 0)), ("C", 2, (1, 1)),
    ("D", 4, (0, 1, 0, 0)), ("D", 4, (1, 0, 0, 1)), ("D", 5, (0, 0, 0, 1, 1)),
]


@pytest.mark.parametrize("family,r,labels", SMALL_WEIGHTS)
def test_weyl_dimension_matches_oracle(family, r, labels):
    assert weyl_dimension(tables_for(family, r), W(*labels)) == oracles.weyl_dimension(family, r, labels)


@pytest.mark.parametrize("family,r,labels", SMALL_WEIGHTS)
def test_weight_system_satisfies_weyl_character_formula(family, r, labels):
    t = tables_for(family, r)
    ws = weight_system(t, W(*labels))
    assert sum(ws.values()) == weyl_dimension(t, W(*labels))
    assert oracles.weyl_character_identity(family, r, labels, ws)


def test_weight_system_examples():
    assert weight_system(tables_for("A", 1), fw(1, 1, 2)) == {(2,): 1, (0,): 1, (-2,): 1}
    ws = weight_system(tables_for("B", 2), fw(2, 1))
    assert len(ws) == 5 and set(ws.values()) == {1}
    assert weight_system(tables_for("D", 4), fw(4, 0)) == {(0, 0, 0, 0): 1}
    # adjoint of A_2: zero weight has multiplicity 2
    assert weight_system(tables_for("A", 2), W(1, 1))[(0, 0)] == 2


def test_tensor_examples():
    assert tensor_decompose(tables_for("A", 1), fw(1, 1), fw(1, 1)) == {W(0): 1, W(2): 1}
    b2 = tables_for("B", 2)
    assert tensor_decompose(b2, fw(2, 2), fw(2, 2)) == {W(0, 0): 1, W(1, 0): 1, W(0, 2): 1}
    assert tensor_decompose(b2, W(1, 1), fw(2, 0)) == {W(1, 1): 1}


TENSOR_CASES = [
    ("A", 2, (1, 1), (1, 1)), ("A", 3, (1, 0, 0), (0, 1, 1)),
    ("B", 2, (1, 1), (0, 1)), ("B", 3, (0, 0, 1), (1, 0, 1)),
    ("C", 3, (1, 0, 0), (0, 0, 1)), ("D", 4, (0, 0, 1, 0), (0, 0, 0, 1)),
    ("D", 5, (0, 0, 0, 1, 0), (0, 0, 0, 1, 0)),
]


@pytest.mark.parametrize("family,r,lam,mu", TENSOR_CASES)
def test_tensor_product_characters(family, r, lam, mu):
    """char(λ)·char(μ) = Σ N_ν char(ν), compared weight by weight."""
    t = tables_for(family, r)
    dec = tensor_decompose(t, W(*lam), W(*mu))
    assert all(m > 0 for m in dec.values())
    assert sum(m * weyl_dimension(t, nu) for nu, m in dec.items()) == (
        weyl_dimension(t, W(*lam)) * weyl_dimension(t, W(*mu)))
    lhs = Counter()
    for a, ma in weight_system(t, W(*lam)).items():
        for b, mb in weight_system(t, W(*mu)).items():
            lhs[tuple(x + y for x, y in zip(a, b))] += ma * mb
    rhs = Counter()
    for nu, m in dec.items():
        for c, mc in weight_system(t, nu).items():
            rhs[c] += m * mc
    assert lhs == rhs


# -- fusion -----------------------------------------------------------------------

def su2_fusion(k, a, b):
    """Textbook sl_2 level-k rule: c from |a-b| to min(a+b, 2k-a-b) in steps of 2."""
    return {W(c): 1 for c in range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2)}


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_sl2_fusion_rule(k):
    t = tables_for("A", 1)
    for a in range(k + 1):
        for b in range(k + 1):
            assert fusion_product(t, k, W(a), W(b)) == su2_fusion(k, a, b)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_level_one_b_fusion_table(r):
    t = tables_for("B", r)
    v0, v1, vs = fw(r, 0), fw(r, 1), fw(r, r)
    assert fusion_product(t, 1, vs, vs) == {v0: 1, v1: 1}
    assert fusion_product(t, 1, v1, v1) == {v0: 1}
    assert fusion_product(t, 1, v1, vs) == {vs: 1}


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_level_one_d_is_a_group(r):
    # level-one D_r fusion is the group P/Q of order 4: every product is one weight
    t = tables_for("D", r)
    ws = level_weights(t, 1)
    assert len(ws) == 4
    for a in ws:
        for b in ws:
            prod = fusion_product(t, 1, a, b)
            assert len(prod) == 1 and set(prod.values()) == {1}
        assert fusion_product(t, 1, a, dual_weight(t, a)) == {fw(r, 0): 1}


def test_fusion_examples():
    assert fusion_product(tables_for("A", 1), 1, fw(1, 1), fw(1, 1)) == {fw(1, 0): 1}


@pytest.mark.parametrize("family,r,level", [("B", 2, 2), ("B", 3, 2), ("C", 2, 2), ("A", 2, 3), ("D", 4, 2)])
def test_fusion_ring_axioms(family, r, level):
    t = tables_for(family, r)
    ws = level_weights(t, level)
    zero = Weight.fundamental(r, 0)
    for a in ws:
        assert fusion_product(t, level, a, zero) == {a: 1}
        for b in ws:
            ab = fusion_product(t, level, a, b)
            assert ab == fusion_product(t, level, b, a)
            assert all(nu in ws for nu in ab)
            # N_{ab}^{0} = δ(b, a*)
            assert ab.get(zero, 0) == int(b == dual_weight(t, a))


@pytest.mark.parametrize("family,r,level", [("B", 2, 2), ("A", 2, 2), ("D", 4, 1), ("C", 3, 1)])
def test_fusion_associative(family, r, level):
    t = tables_for(family, r)
    ws = level_weights(t, level)
    for a, b, c in product(ws, repeat=3):
        left = Counter()
        for x, m in fusion_product(t, level, a, b).items():
            for y, n in fusion_product(t, level, x, c).items():
                left[y] += m * n
        right = Counter()
        for x, m in fusion_product(t, level, b, c).items():
            for y, n in fusion_product(t, level, a, x).items():
                right[y] += m * n
        assert left == right


# -- ranks ------------------------------------------------------------------------

@pytest.mark.parametrize("family,r,level,weights,expected", [
    ("B", 2, 1, [(0, 1)] * 4, 2),
    ("B", 2, 1, [(1, 0), (0, 1), (0, 1), (0, 1)], 0),
    ("D", 5, 1, [(0, 0, 0, 0, 1)] * 2, 0),
    ("B", 3, 1, [(1, 0, 0)] * 4, 1),
    ("A", 1, 2, [(1,)] * 4, 2),
    ("B", 2, 1, [(1, 0), (1, 0)], 1),
    ("B", 3, 3, [(3, 0, 0)] * 6, 1),
])
def test_rank_examples(family, r, level, weights, expected):
    assert rank(tables_for(family, r), level, [W(*w) for w in weights]) == expected


@pytest.mark.parametrize("family,r,weights,expected", [
    ("B", 2, [(1, 0), (1, 0), (0, 1), (0, 1), (0, 1), (0, 1)], 2),
    ("D", 4, [(1, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 1)], 1),
    ("D", 4, [(0, 0, 0, 1)] * 4, 1),
    ("B", 2, [(1, 0), (1, 0)], 1),
])
def test_closed_form_examples(family, r, weights, expected):
    assert rank_level_one_closed_form(tables_for(family, r), [W(*w) for w in weights]) == expected


def test_closed_form_rejects_c():
    with pytest.raises(DomainError):
        rank_level_one_closed_form(tables_for("C", 2), [fw(2, 1), fw(2, 1)])


def test_single_point_rank():
    t = tables_for("B", 2)
    assert rank(t, 1, [fw(2, 0)]) == 1
    assert rank(t, 1, [fw(2, 1)]) == 0


def test_rank_rejects_weight_above_level():
    with pytest.raises(DomainError):
        rank(tables_for("B", 2), 1, [fw(2, 1, 2), fw(2, 1, 2)])


@pytest.mark.parametrize("family,r,level", [("A", 1, 2), ("B", 2, 1), ("B", 2, 2), ("A", 2, 2), ("D", 4, 1)])
def test_verlinde_small(family, r, level):
    t = tables_for(family, r)
    ws = level_weights(t, level)
    for n in (2, 3, 4):
        for tup in product(ws, repeat=n):
            assert verlinde_rank_numeric(t, level, tup) == rank(t, level, tup)


def test_verlinde_examples():
    assert verlinde_rank_numeric(tables_for("B", 2), 1, [fw(2, 2)] * 4) == 2
    assert verlinde_rank_numeric(tables_for("A", 1), 2, [fw(1, 1)] * 4) == 2


def test_fuse_of_pair_is_fusion_product():
    t = tables_for("B", 3)
    assert fuse(t, 2, [fw(3, 3), fw(3, 1)]) == fusion_product(t, 2, fw(3, 3), fw(3, 1))


# -- properties -------------------------------------------------------------------

LEVEL_TWO_B2 = level_weights(tables_for("B", 2), 2)
LEVEL_ONE_D5 = level_weights(tables_for("D", 5), 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(LEVEL_TWO_B2), min_size=2, max_size=5), st.randoms())
def test_rank_permutation_invariant(weights, rnd):
    t = tables_for("B", 2)
    shuffled = list(weights)
    rnd.shuffle(shuffled)
    assert rank(t, 2, weights) == rank(t, 2, shuffled)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(LEVEL_TWO_B2), min_size=1, max_size=5), st.integers(0, 5))
def test_propagation_of_vacua(weights, pos):
    t = tables_for("B", 2)
    padded = list(weights)
    padded.insert(min(pos, len(padded)), fw(2, 0))
    assert rank(t, 2, padded) == rank(t, 2, weights)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(LEVEL_ONE_D5), min_size=4, max_size=7), st.data())
def test_factorization_identity_d5(weights, data):
    t = tables_for("D", 5)
    k = data.draw(st.integers(1, len(weights) - 1))
    channels = factorization_channels(t, 1, weights[:k], weights[k:])
    assert sum(channels.values()) == rank(t, 1, weights)


def test_two_point_normalization():
    t = tables_for("A", 3)
    for lam in level_weights(t, 2):
        for mu in level_weights(t, 2):
            assert rank(t, 2, [lam, mu]) == int(mu == dual_weight(t, lam))
