import pytest
from hypothesis import given, settings, strategies as st

from conftest import instance
from prohecke.suites import orthogonal_levis

NAMES = ["affine_A1_SL2_zk", "affine_A1_GL2_zk", "affine_A2_GL3", "affine_A1xA1", "finite_B2"]


def _elements(name, L=3):
    return instance(name).group.elements_up_to(L)


def triples(name):
    els = _elements(name)
    idx = st.integers(0, len(els) - 1)
    return st.tuples(idx, idx, idx).map(lambda t: tuple(els[i] for i in t))


@pytest.mark.parametrize("name", NAMES)
def test_group_axioms(name):
    G = instance(name).group
    e = G.identity()

    @settings(max_examples=150, deadline=None)
    @given(triples(name))
    def check(t):
        x, y, z = t
        assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
        assert G.mul(x, G.inv(x)) == e == G.mul(G.inv(x), x)
        assert G.mul(x, e) == x
        assert G.length(G.mul(x, y)) <= G.length(x) + G.length(y)

    check()


@pytest.mark.parametrize("name", NAMES)
def test_decompose_round_trip(name):
    G = instance(name).group
    for x in _elements(name):
        t, omega, word = G.decompose(x)
        assert G.compose(t, omega, word) == x
        assert len(word) == G.length(x)


@pytest.mark.parametrize("name", NAMES)
def test_projection_is_a_homomorphism(name):
    G = instance(name).group
    top = G.top
    els = _elements(name, 2)
    for x in els[:40]:
        for y in els[:40]:
            assert G.project(G.mul(x, y)) == top.mul(G.project(x), G.project(y))


def test_torus_is_central_in_split_quotient():
    # the Z/k torus of the zk instance is normal: conjugates stay in the torus
    G = instance("affine_A1_SL2_zk").group
    for t in G.torus.elements():
        tt = G.torus_element(t)
        for x in _elements("affine_A1_SL2_zk", 2):
            c = G.mul(G.mul(x, tt), G.inv(x))
            assert G.project(c) == G.project(G.identity())


@pytest.mark.parametrize("name", ["affine_A1xA1", "finite_A1xA1"])
def test_orthogonal_factorisation(name):
    G = instance(name).group
    alg = instance(name).algebra
    for M in orthogonal_levis(alg):
        for x in _elements(name):
            u, xm, x2 = G.orthogonal_factorize(x, M)
            assert G.mul(G.mul(u, xm), x2) == x
            assert G.length(u) == 0
            assert G.length(xm) + G.length(x2) == G.length(x)


def test_orthogonal_factorisation_rejects_linked_levi():
    G = instance("affine_A2_GL3").group
    with pytest.raises(ValueError):
        G.orthogonal_factorize(G.identity(), (1,))
