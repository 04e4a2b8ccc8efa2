import pytest
from hypothesis import given, strategies as st

from arrcover.laurent import LaurentMatrix, LaurentPoly, ONE, T, ZERO

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def test_zero_coefficients_dropped():
    f = LaurentPoly({0: 1, 2: 0, -1: 3})
    assert f.terms == {0: 1, -1: 3}
    assert LaurentPoly({3: 0}).is_zero() and LaurentPoly({3: 0}) == ZERO


def test_canonical_form_absorbs_units():
    f = (T - ONE) * LaurentPoly.monomial(-2, -1)
    assert f.canonical() == T - ONE
    assert LaurentPoly.t_power_minus_one(-2).canonical() == LaurentPoly({0: -1, 2: 1})


def test_exact_division():
    num = LaurentPoly.t_power_minus_one(-2)
    q = num.exact_div(T - ONE)
    assert q == LaurentPoly({-2: -1, -1: -1})
    with pytest.raises(ValueError):
        (T + ONE).exact_div(T - ONE)


def test_geometric_sum():
    assert LaurentPoly.geometric(1, 3) == LaurentPoly({0: 1, 1: 1, 2: 1})


def test_pairs_round_trip():
    f = LaurentPoly({-3: 2, 0: -1, 4: 7})
    assert LaurentPoly.from_pairs(f.to_pairs()) == f


def test_str():
    assert str(LaurentPoly.monomial(-1, -1)) == "-t^(-1)"


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == ZERO


@given(polys, st.integers(-4, 4))
def test_canonical_invariant_under_units(f, k):
    assert f.shift(k).canonical() == f.canonical()
    assert (-f).canonical() == f.canonical()


@given(polys, polys)
def test_exact_div_inverts_multiplication(f, g):
    if g.is_zero():
        return
    assert (f * g).exact_div(g) == f


def test_matrix_product_and_transpose():
    A = LaurentMatrix.from_rows([[T, 1], [0, T - ONE]])
    B = LaurentMatrix.from_rows([[1], [T]])
    assert (A @ B).to_rows() == [[T + T], [T * T - T]]
    assert A.transpose()[0, 1] == ZERO and A.transpose()[1, 0] == ONE
