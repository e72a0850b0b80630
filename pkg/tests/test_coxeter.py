from collections import Counter
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import instance
from oracles import bott_series, direct_product_a1a1, hyperoctahedral_2, symmetric_group

ORACLE_GROUPS = {
    "finite_A1": lambda: symmetric_group(2),
    "finite_A2": lambda: symmetric_group(3),
    "finite_A3": lambda: symmetric_group(4),
    "finite_B2": hyperoctahedral_2,
    "finite_A1xA1": direct_product_a1a1,
}


@pytest.mark.parametrize("name", sorted(ORACLE_GROUPS))
def test_finite_group_matches_permutation_model(name):
    fw = instance(name).root_datum.weyl
    oracle = ORACLE_GROUPS[name]()
    assert fw.order == len(oracle.elements)
    assert Counter(fw.length) == Counter(oracle.length.values())
    # the word map is a bijection onto the oracle that preserves length
    images = {oracle.from_word(fw.word(w)) for w in range(fw.order)}
    assert len(images) == fw.order
    for w in range(fw.order):
        assert oracle.length[oracle.from_word(fw.word(w))] == fw.length[w]


@pytest.mark.parametrize("name", sorted(ORACLE_GROUPS))
def test_multiplication_is_word_concatenation(name):
    fw = instance(name).root_datum.weyl
    oracle = ORACLE_GROUPS[name]()
    for a, b in product(range(fw.order), repeat=2):
        assert oracle.from_word(fw.word(fw.mul(a, b))) == oracle.from_word(fw.word(a) + fw.word(b))


@pytest.mark.parametrize("name", sorted(ORACLE_GROUPS))
def test_group_axioms_and_longest(name):
    fw = instance(name).root_datum.weyl
    for w in range(fw.order):
        assert fw.mul(w, fw.inv[w]) == 0
        assert fw.length[fw.inv[w]] == fw.length[w]
        assert fw.from_word(fw.word(w)) == w
        assert len(fw.word(w)) == fw.length[w]
    assert fw.length[fw.longest] == max(fw.length)


@pytest.mark.parametrize("name", sorted(ORACLE_GROUPS))
def test_minimal_coset_representatives(name):
    fw = instance(name).root_datum.weyl
    n = len(fw.simple)
    for mask in range(1 << n):
        J = tuple(i for i in range(n) if mask >> i & 1)
        WJ = fw.parabolic(J)
        for side in ("left", "right"):
            reps = fw.min_coset_reps(J, side)
            assert len(reps) * len(WJ) == fw.order
            for w in range(fw.order):
                # left: w = u d, right: w = d u; factors come back in product order
                a, b = fw.decompose(w, J, side)
                u, d = (a, b) if side == "left" else (b, a)
                assert u in WJ and d in reps
                assert fw.mul(a, b) == w
                assert fw.length[w] == fw.length[u] + fw.length[d]


# affine Weyl groups: Poincare series against the Bott formula
BOTT = {"affine_A1_SL2": [(1,)], "affine_A2_SL3": [(1, 2)], "affine_A1xA1": [(1,), (1,)]}


def _series_product(parts, n):
    out = [1] + [0] * n
    for exps in parts:
        s = bott_series(exps, n)
        out = [sum(out[i] * s[k - i] for i in range(k + 1)) for k in range(n + 1)]
    return out


@pytest.mark.parametrize("name", sorted(BOTT))
def test_affine_length_counts_match_bott(name):
    n = 6
    W = instance(name).algebra.W
    counts = Counter(W.length(x) for x in W.elements_up_to(n, omega_window=0))
    assert [counts[k] for k in range(n + 1)] == _series_product(BOTT[name], n)


@given(st.lists(st.integers(0, 2), max_size=8))
def test_affine_words_reduce(word):
    W = instance("affine_A2_SL3").algebra.W
    x = W.identity()
    for g in word:
        x = W.mul(x, W.gens[g].element)
    assert W.length(x) <= len(word)
    assert W.length(x) % 2 == len(word) % 2
