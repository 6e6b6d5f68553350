"""Tests for the mode change-of-variable coefficient tables."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from supertrace import c_table, l0_bracket_coeffs, log_pow_series, vbracket_coeffs
from supertrace.bracket import CENTRAL_CHARGE_SHIFT, L_MINUS_ONE_COMBINATION


def _binom(top: int, k: int) -> Fraction:
    # generalized binomial coefficient for any integer top
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(top - i, i + 1)
    return out


def test_column_zero_is_binomial():
    for p in range(-2, 11):
        table = c_table(p, 10)
        for i in range(11):
            assert table.get(i, 0) == _binom(p - 1, i)


def test_row_one_is_linear():
    for p in range(-3, 6):
        table = c_table(p, 4)
        assert table.get(1, 0) == Fraction(p - 1)
        assert table.get(1, 1) == Fraction(1)


def test_diagonal_is_inverse_factorial():
    table = c_table(7, 9)
    for i in range(10):
        assert table.get(i, i) == Fraction(1, factorial(i))


def test_vanishing_above_the_diagonal():
    table = c_table(4, 6)
    for i in range(7):
        for m in range(i + 1, 7):
            assert table.get(i, m) == 0


def test_row_sum_identity():
    # z = 1 turns the expansion into binom(p, i)
    for p in range(-2, 8):
        table = c_table(p, 8)
        for i in range(9):
            assert sum(table.get(i, m) for m in range(i + 1)) == _binom(p, i)


def test_log_power_oracle_agreement():
    imax = 12
    for p in range(-2, 11):
        table = c_table(p, imax)
        for m in range(imax + 1):
            oracle = log_pow_series(m, p, imax)
            for i in range(imax + 1):
                assert factorial(m) * table.get(i, m) == oracle.coefficient(i).as_fraction()


def test_log_power_base_cases():
    binomial = log_pow_series(0, 4, 6)
    assert [binomial.coefficient(i).as_fraction() for i in range(5)] == [1, 3, 3, 1, 0]
    log = log_pow_series(1, 1, 6)
    assert [log.coefficient(i).as_fraction() for i in range(4)] == \
        [0, 1, Fraction(-1, 2), Fraction(1, 3)]
    squared = log_pow_series(2, 1, 6)
    assert squared.coefficient(0).as_fraction() == 0
    assert squared.coefficient(1).as_fraction() == 0
    assert squared.coefficient(2).as_fraction() == 1


def test_derivative_recursion_between_rows():
    # (i+1) c(p, i+1, m+1) = c(p, i, m) + (p-1-i) c(p, i, m+1), the
    # coefficient-level form of differentiating the log power
    for p in range(-2, 6):
        table = c_table(p, 10)
        for i in range(10):
            for m in range(i + 1):
                lhs = (i + 1) * table.get(i + 1, m + 1)
                rhs = table.get(i, m) + (p - 1 - i) * table.get(i, m + 1)
                assert lhs == rhs


def test_vbracket_mode_coefficients():
    for wt in range(-1, 5):
        coeffs = vbracket_coeffs(wt, 0, 8)
        assert coeffs == [_binom(wt - 1, i) for i in range(9)]
    assert vbracket_coeffs(1, 0, 5) == [1, 0, 0, 0, 0, 0]
    coeffs = vbracket_coeffs(3, 2, 6)
    assert coeffs[0] == 0 and coeffs[1] == 0
    assert coeffs[2] == factorial(2) * c_table(3, 6).get(2, 2)


def test_grading_operator_coefficients():
    assert l0_bracket_coeffs(3) == [Fraction(1, 2), Fraction(-1, 6), Fraction(1, 12)]
    coeffs = l0_bracket_coeffs(8)
    for n in range(1, 9):
        assert coeffs[n - 1] == Fraction((-1) ** (n - 1), n * (n + 1))
    with pytest.raises(ValueError):
        l0_bracket_coeffs(0)


def test_companion_constants():
    assert CENTRAL_CHARGE_SHIFT == Fraction(-1, 24)
    assert L_MINUS_ONE_COMBINATION == (Fraction(1), Fraction(1))
