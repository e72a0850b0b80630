import pytest
import sympy
from hypothesis import given, settings, strategies as st

from prohecke.rings import GF, ZZ, PolynomialRing, parse_polynomial

R = PolynomialRing(["q1", "q2"])
Q1, Q2 = sympy.symbols("q1 q2")

monomials = st.tuples(st.integers(-5, 5), st.integers(0, 3), st.integers(0, 3))
polys = st.lists(monomials, max_size=4)


def build(terms):
    ours = R.zero
    ref = sympy.Integer(0)
    for c, a, b in terms:
        ours = ours + R.monomial((a, b), c)
        ref = ref + c * Q1 ** a * Q2 ** b
    return ours, sympy.expand(ref)


def to_sympy(p):
    return sympy.expand(sympy.sympify(R.render(p).replace("^", "**")))


@given(polys, polys)
def test_polynomial_arithmetic_matches_sympy(a, b):
    pa, sa = build(a)
    pb, sb = build(b)
    assert to_sympy(pa * pb) == sympy.expand(sa * sb)
    assert to_sympy(pa - pb) == sympy.expand(sa - sb)


@given(polys, polys)
def test_divexact_inverts_multiplication(a, b):
    pa, _ = build(a)
    pb, _ = build(b)
    if pb != 0:
        assert R.divexact(pa * pb, pb) == pa


def test_divexact_rejects_non_multiples():
    with pytest.raises(ArithmeticError):
        R.divexact(R.gen(0) + 1, R.gen(1))


@given(polys)
def test_render_parse_round_trip(a):
    p, _ = build(a)
    assert parse_polynomial(R.render(p), R) == p


@given(polys, st.integers(-4, 4), st.integers(-4, 4))
def test_evaluate_matches_sympy(a, x, y):
    p, s = build(a)
    assert R.evaluate(p, [ZZ(x), ZZ(y)], ZZ) == int(s.subs({Q1: x, Q2: y}))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_field_axioms(p):
    F = GF(p)
    for a in F.elements():
        for b in F.elements():
            assert int((a * b).v) == (int(a.v) * int(b.v)) % p
            assert int((a + b).v) == (int(a.v) + int(b.v)) % p
        if a != 0:
            assert a * F.inverse(a) == F.one


def test_units():
    assert R.is_unit(R(-1)) and not R.is_unit(R.gen(0))
    assert ZZ.is_unit(1) and not ZZ.is_unit(2)
