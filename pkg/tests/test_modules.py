import pytest

from conftest import instance
from oracles import descent_counts
from prohecke import linalg
from prohecke.comparison import (ParabolicTriple, check_kappa, check_kappa_square, check_mu,
                                 steinberg_integrality)
from prohecke.modules import ModuleMap, hom_space, sign_module, trivial_module
from prohecke.parabolic import InducedModule
from prohecke.suites import build_module
from prohecke.supersingular import char_p_algebra

ALL = ["affine_A1_SL2", "affine_A1_GL2", "affine_A1_SL2_zk", "affine_A2_GL3", "affine_A1xA1",
       "finite_A2", "finite_B2"]


@pytest.mark.parametrize("name", ALL)
def test_trivial_and_sign_satisfy_relations(name):
    alg = instance(name).algebra
    assert trivial_module(alg).certificate() == []
    assert sign_module(alg).certificate() == []


@pytest.mark.parametrize("name", ["affine_A2_GL3", "affine_A1xA1", "affine_A1_SL2_zk"])
def test_induced_rank_is_coset_count(name):
    alg = instance(name).algebra
    fw = alg.group.fw
    for M in [(), (alg.W.subset[0],)]:
        V = trivial_module(alg.levi(M))
        ind = InducedModule(V, alg)
        assert ind.rank == fw.order // len(fw.parabolic(M))
        assert ind.certificate() == []


def test_hom_between_trivial_and_sign_over_a_field():
    alg = char_p_algebra(instance("affine_A1_SL2"), 3)
    assert len(hom_space(trivial_module(alg), sign_module(alg))) == 0
    assert len(hom_space(trivial_module(alg), trivial_module(alg))) == 1


def test_module_map_detects_non_equivariance():
    alg = instance("affine_A1_SL2").algebra
    m = ModuleMap(trivial_module(alg), sign_module(alg), linalg.identity(alg.ring, 1), check=False)
    assert m.defect()


def test_steinberg_ranks_match_descent_classes():
    # St_Q of the trivial module has rank #{w : right descent set = complement of Q}
    alg = instance("affine_A2_GL3").algebra
    T = ParabolicTriple(trivial_module(alg.levi(())))
    top = tuple(T.top)
    counts = descent_counts(3)
    for Q in T.parabolics():
        comp = frozenset(k for k, i in enumerate(top) if i not in Q)
        res = steinberg_integrality(T, Q, top, (1, 2, 3))
        assert res["generic_free"]
        assert res["rank_St"] == counts.get(comp, 0)
        for sp in res["specializations"]:
            assert sp["free_rank"] == res["rank_St"] and sp["torsion"] == []


@pytest.mark.parametrize("spec", ["trivial@0", "sign@0"])
def test_kappa_and_mu_on_product_system(spec):
    alg = instance("affine_A1xA1").algebra
    T = ParabolicTriple(build_module(alg, spec))
    for Q in T.parabolics():
        assert all(check_kappa(T, Q, T.PV).values())
        assert all(check_mu(T, Q).values())
    for Q, Q2 in T.pairs():
        assert check_kappa_square(T, Q, Q2)["commutes"]


def test_nontrivial_omega_character_is_a_module():
    alg = instance("affine_A2_GL3").algebra
    V = build_module(alg, "omega=-1,-1,-1@")
    assert V.rank == 1 and V.certificate() == []
    with pytest.raises(ValueError):
        build_module(alg, "nonsense@")
