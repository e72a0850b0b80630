from itertools import combinations

import pytest
import sympy

from conftest import instance
from oracles import BruteHecke
from prohecke.congruence import (StarIdeal, generic_ring, verify_basis, verify_generic_congruence,
                                 verify_specializations, verify_sum_identity)
from test_coxeter import ORACLE_GROUPS
from test_hecke import to_sym

FINITE = sorted(ORACLE_GROUPS)


def _subsets(n):
    return [J for k in range(n + 1) for J in combinations(range(n), k)]


def brute_sides(name, J):
    """Both sides of the coset-sum congruence and the ideal generators, in the oracle."""
    H = generic_ring(instance(name))
    fw = H.fw
    W = ORACLE_GROUPS[name]()
    q = [to_sym(H.ring, H.q_of(fw.simple[i])) for i in range(len(fw.simple))]
    B = BruteHecke(W, q)
    left_mult = lambda i, x: W.from_word([i] + B.word_of(x))
    reps = [x for x in W.elements if all(W.length[left_mult(i, x)] > W.length[x] for i in J)]
    wJ = max((x for x in W.elements if set(B.word_of(x)) <= set(J)), key=lambda x: W.length[x])
    w0 = max(W.elements, key=lambda x: W.length[x])
    lhs, rhs = {}, {}
    for d in reps:
        lhs[d] = lhs.get(d, 0) + 1
        k = B.q_of(W.from_word(B.word_of(wJ) + B.word_of(d) + B.word_of(w0)))
        for y, c in B.Tstar(d).items():
            rhs[y] = rhs.get(y, 0) + k * c
    diff = {y: sympy.expand(lhs.get(y, 0) - rhs.get(y, 0)) for y in W.elements}
    gens = []
    for i in J:
        s = W.from_word([i])
        ts_minus = B.Tstar(s)
        ts_minus[W.base] = ts_minus.get(W.base, 0) - 1
        for w in W.elements:
            gens.append(B.mul(ts_minus, B.Tstar(w)))
    return W, diff, gens


@pytest.mark.parametrize("name", ["finite_A1", "finite_A2", "finite_B2", "finite_A1xA1"])
def test_congruence_difference_lies_in_ideal_by_linear_algebra(name):
    n = len(instance(name).root_datum.weyl.simple)
    for J in _subsets(n):
        if not J:
            continue
        W, diff, gens = brute_sides(name, J)
        cols = [[g.get(y, 0) for y in W.elements] for g in gens]
        A = sympy.Matrix(cols).T
        b = sympy.Matrix([diff[y] for y in W.elements])
        assert A.rank() == A.row_join(b).rank(), (name, J)


def test_a2_certificate_frozen():
    # the difference is (q - 1)(T*_s1 - 1) = (q - 1)T_s1 - q(q - 1) in the T basis
    W, diff, gens = brute_sides("finite_A2", (0,))
    q = sympy.Symbol("q")
    s1 = W.from_word([0])
    expected = {W.base: -q * (q - 1), s1: q - 1}
    assert {k: v for k, v in diff.items() if v != 0} == {k: sympy.expand(v) for k, v in expected.items()}
    H = generic_ring(instance("finite_A2"))
    res = verify_generic_congruence(H, (0,))
    assert res["ok"]
    assert res["certificate"] == {"(T*[s1]-1)T*[1]": "q - 1"}


@pytest.mark.parametrize("name", FINITE)
def test_ideal_basis_is_unimodular(name):
    H = generic_ring(instance(name))
    for J in _subsets(len(H.subset)):
        I = StarIdeal(H, J)
        assert H.ring.is_unit(I.determinant())
        assert verify_basis(H, J)["ok"]
        assert len(I.labels) == H.dim


@pytest.mark.parametrize("name", FINITE)
def test_sum_identity_and_specializations(name):
    H = generic_ring(instance(name))
    assert verify_sum_identity(H)["ok"]
    J = tuple(H.subset[:1])
    res = verify_specializations(H, J)
    assert res["ok"]
