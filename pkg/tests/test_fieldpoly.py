import pytest

from arrcover.fieldpoly import ChainConditionError, FieldPoly, poly_gcd, poly_kernel_and_snf
from arrcover.laurent import LaurentMatrix, ONE, T, ZERO


def test_arithmetic_over_q_and_fp():
    a = FieldPoly([-1, 0, 1])          # t^2 - 1
    b = FieldPoly([-1, 1])             # t - 1
    q, r = divmod(a, b)
    assert q == FieldPoly([1, 1]) and r.is_zero()
    assert poly_gcd(a, FieldPoly([1, 1])) == FieldPoly([1, 1])
    # over F2, t^2 + 1 = (t + 1)^2
    assert FieldPoly([1, 0, 1], 2) == FieldPoly([1, 1], 2) * FieldPoly([1, 1], 2)


def test_repr_signs():
    assert repr(FieldPoly([-1, 1])) == "t - 1"


def test_kernel_of_t_minus_one():
    D1 = LaurentMatrix.from_rows([[T - ONE]])
    D2 = LaurentMatrix(1, 0)
    mod = poly_kernel_and_snf(D1, D2, 0)
    assert mod.factors == () and mod.free_rank == 0


def test_single_factor():
    D1 = LaurentMatrix.from_rows([[T - ONE, T - ONE]])
    D2 = LaurentMatrix.from_rows([[T - ONE], [ONE - T]])
    mod = poly_kernel_and_snf(D1, D2, 0)
    assert mod.free_rank == 0
    assert mod.factors == (FieldPoly([-1, 1]),)


def test_zero_maps_free():
    z = LaurentMatrix.from_rows([[ZERO]])
    mod = poly_kernel_and_snf(z, z, 0)
    assert mod.free_rank == 1 and mod.factors == ()


def test_chain_condition_violation_names_entry():
    D1 = LaurentMatrix.from_rows([[ONE]])
    D2 = LaurentMatrix.from_rows([[T]])
    with pytest.raises(ChainConditionError):
        poly_kernel_and_snf(D1, D2, 0)


def test_fp_reduction_changes_factors():
    D1 = LaurentMatrix.from_rows([[ZERO]])
    D2 = LaurentMatrix.from_rows([[T + ONE]])
    assert poly_kernel_and_snf(D1, D2, 0).factors == (FieldPoly([1, 1]),)
    assert poly_kernel_and_snf(D1, D2, 2).factors == (FieldPoly([1, 1], 2),)
    D2 = LaurentMatrix.from_rows([[ONE + ONE]])
    assert poly_kernel_and_snf(D1, D2, 2).free_rank == 1
    assert poly_kernel_and_snf(D1, D2, 3).free_rank == 0
