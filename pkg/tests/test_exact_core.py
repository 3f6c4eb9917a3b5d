from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exact_core import (
    LpProblem,
    LpStatus,
    Matrix,
    det,
    find_feasible_point,
    lp_max_slack,
    null_space_basis,
    parse_rational,
    rref,
    solve,
    sympy_to_fraction,
)
from exceptions import DimensionError

small_ints = st.integers(min_value=-6, max_value=6)


def square_matrices(size):
    return st.lists(st.lists(small_ints, min_size=size, max_size=size), min_size=size, max_size=size).map(Matrix.from_rows)


@pytest.mark.parametrize("text, expected", [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), (" 6/4 ", Fraction(3, 2)), (5, Fraction(5))])
def test_parse_rational_accepts_exact_forms(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", ["0.5", "1e3", "", "1/0", True, 0.5])
def test_parse_rational_rejects_inexact_input(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_det_small_cases():
    assert det(Matrix.from_rows([[1, 2], [3, 4]])) == -2
    assert det(Matrix.identity(4)) == 1
    assert det(Matrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]])) == 0
    assert det(Matrix.from_rows([[0, 1], [1, 0]])) == -1


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det(Matrix.from_rows([[1, 2, 3], [4, 5, 6]]))


@settings(max_examples=40, deadline=None)
@given(square_matrices(3), square_matrices(3))
def test_det_is_multiplicative(a, b):
    assert det(a @ b) == det(a) * det(b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=5, max_size=5), min_size=1, max_size=4).map(Matrix.from_rows))
def test_null_space_vectors_are_annihilated(m):
    basis = null_space_basis(m)
    assert len(basis) == m.cols - m.rank()
    for v in basis:
        assert all(x == 0 for x in m.apply(v))


def test_null_space_unit_free_columns():
    m = Matrix.from_rows([[1, 2, 3], [0, 1, 1]])
    reduced, pivots = rref(m)
    assert pivots == [0, 1]
    assert null_space_basis(m) == [(Fraction(-1), Fraction(-1), Fraction(1))]


def test_solve_consistent_and_inconsistent():
    m = Matrix.from_rows([[1, 1], [1, -1]])
    assert solve(m, [3, 1]) == (Fraction(2), Fraction(1))
    assert solve(Matrix.from_rows([[1, 1], [2, 2]]), [1, 3]) is None


def test_lp_optimal():
    problem = LpProblem(a_eq=Matrix.from_rows([[1, 1]]), b_eq=(Fraction(1),), objective_index=1)
    result = lp_max_slack(problem)
    assert result.status is LpStatus.OPTIMAL
    assert result.optimum == 1
    assert result.witness == (Fraction(0), Fraction(1))


def test_lp_unbounded_and_infeasible():
    unbounded = LpProblem(a_eq=Matrix.from_rows([[1, -1]]), b_eq=(Fraction(0),), objective_index=1)
    assert lp_max_slack(unbounded).status is LpStatus.UNBOUNDED
    infeasible = LpProblem(a_eq=Matrix.from_rows([[1, 1]]), b_eq=(Fraction(-1),), objective_index=0)
    assert lp_max_slack(infeasible).status is LpStatus.INFEASIBLE


def test_lp_with_redundant_rows():
    problem = LpProblem(a_eq=Matrix.from_rows([[1, 1, 0], [2, 2, 0], [0, 1, 1]]), b_eq=(Fraction(2), Fraction(4), Fraction(1)), objective_index=0)
    result = lp_max_slack(problem)
    assert result.status is LpStatus.OPTIMAL
    assert result.optimum == 2


def test_lp_rejects_bad_objective_index():
    with pytest.raises(DimensionError):
        lp_max_slack(LpProblem(a_eq=Matrix.from_rows([[1, 1]]), b_eq=(Fraction(1),), objective_index=2))


def test_find_feasible_point():
    a = Matrix.from_rows([[1, 2, 1]])
    x = find_feasible_point(a, [4])
    assert x is not None and all(v >= 0 for v in x)
    assert a.apply(x) == (Fraction(4),)
    assert find_feasible_point(Matrix.from_rows([[1, 1]]), [-1]) is None


def test_symmetric_slack_optimum_is_one_half():
    # lambda_1 + lambda_2 = 1, lambda_1 = lambda_2, lambda_i - t - s_i = 0
    a = Matrix.from_rows([[1, 1, 0, 0, 0], [1, -1, 0, 0, 0], [1, 0, -1, -1, 0], [0, 1, -1, 0, -1]])
    result = lp_max_slack(LpProblem(a_eq=a, b_eq=(Fraction(1), Fraction(0), Fraction(0), Fraction(0)), objective_index=2))
    assert result.status is LpStatus.OPTIMAL
    assert result.optimum == Fraction(1, 2)
    assert result.witness[:3] == (Fraction(1, 2),) * 3


def test_sympy_round_trip_keeps_exact_entries():
    m = Matrix.from_rows([["1/3", -2], [5, "7/11"]])
    assert Matrix.from_sympy(m.to_sympy()) == m
    assert det(m) == Fraction(1, 3) * Fraction(7, 11) + 10
    assert sympy_to_fraction(m.to_sympy()[0, 0]) == Fraction(1, 3)


def test_null_space_of_an_empty_system():
    m = Matrix(0, 3, ())
    assert null_space_basis(m) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert det(Matrix(0, 0, ())) == 1
