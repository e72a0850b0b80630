import numpy as np
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from prohecke import linalg
from prohecke.rings import GF, ZZ, PolynomialRing

int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(int_matrices)
def test_invariant_factors_match_sympy(rows):
    ours = [abs(int(d)) for d in linalg.invariant_factors(rows)]
    ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    ref_diag = [abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert ours == ref_diag


@given(int_matrices)
def test_smith_form_transforms(rows):
    d, u, v = linalg.smith_normal_form(rows)
    a = np.array(rows, dtype=object)
    assert (np.array(u, dtype=object) @ a @ np.array(v, dtype=object) == np.array(d, dtype=object)).all()


def test_integer_cokernel_torsion():
    free, torsion = linalg.integer_cokernel([[2, 0], [0, 3]], 2)
    assert free == 0 and sorted(int(t) for t in torsion) == [6] or sorted(int(t) for t in torsion) == [2, 3]
    free, torsion = linalg.integer_cokernel([[1, 1]], 3)
    assert free == 2 and list(torsion) == []


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_and_rank_match_sympy(rows):
    m = linalg.matrix(ZZ, rows)
    ref = sympy.Matrix(rows)
    assert linalg.det(ZZ, m) == int(ref.det())
    assert linalg.rank(ZZ, m) == ref.rank()


def test_polynomial_inverse_of_unimodular():
    R = PolynomialRing(["q"])
    q = R.gen(0)
    a = linalg.matrix(R, [[1, q], [0, 1]])
    inv = linalg.inverse(R, a)
    assert linalg.mat_eq(a @ inv, linalg.identity(R, 2))


def test_left_kernel_over_field():
    F = GF(3)
    a = linalg.matrix(F, [[1, 2], [2, 1], [1, 1]])
    for v in linalg.left_kernel(F, a):
        row = linalg.matrix(F, [v], 3)
        assert linalg.is_zero(row @ a)
    assert len(linalg.left_kernel(F, a)) == 3 - linalg.rank(F, a)
