import pytest

from conftest import instance
from prohecke.modules import trivial_module
from prohecke.parabolic import InducedModule
from prohecke.supersingular import (affine_character, char_p_algebra, enumerate_characters,
                                    expected_supersingular_count, is_supersingular, spin_simplicity)

# 2^|X| - 2 per irreducible component, multiplied over components
FROZEN_COUNTS = {"affine_A1_SL2": 2, "affine_A2_SL3": 6, "affine_A1xA1": 4}


@pytest.mark.parametrize("name", sorted(FROZEN_COUNTS))
@pytest.mark.parametrize("p", [2, 3])
def test_supersingular_counts(name, p):
    A = char_p_algebra(instance(name), p)
    chars = enumerate_characters(A)
    assert len(chars) == 2 ** len(A.W.gens)
    assert all(not failures for _, _, failures, _ in chars)
    assert sum(1 for c in chars if c[3]) == FROZEN_COUNTS[name]
    assert expected_supersingular_count(A.W) == FROZEN_COUNTS[name]


def test_supersingular_predicate():
    W = instance("affine_A1xA1").algebra.W
    assert not is_supersingular(W, [])
    assert not is_supersingular(W, list(range(len(W.gens))))


def test_character_values():
    A = char_p_algebra(instance("affine_A1_SL2"), 3)
    V = affine_character(A, (), [0])
    s0, s1 = A.gen_lift
    assert int(V.act(s0)[0, 0].v) == 2 and int(V.act(s1)[0, 0].v) == 0


def test_spin_detects_reducible_and_simple():
    A = char_p_algebra(instance("affine_A1_SL2"), 2)
    I = InducedModule(trivial_module(A.levi(())), A)
    res = spin_simplicity(I)
    assert res["verdict"] == "reducible" and res["exhaustive"]
    assert spin_simplicity(affine_character(A, (), [0]))["verdict"] == "simple"


def test_no_q_zero_over_gf2_for_zk():
    with pytest.raises(ValueError):
        char_p_algebra(instance("affine_A1_SL2_zk"), 2)
