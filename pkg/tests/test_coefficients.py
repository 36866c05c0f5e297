from fractions import Fraction as F

import pytest

from urnvote.condorcet import (
    CoeffTable,
    b1_coefficient,
    catalan_rhs,
    coeff_a,
    coeff_b,
    coeff_c,
    diagonal_sum,
    float_coefficients,
)

B_TABLE = [
    [1, -2, 3, -4, 5, -6],
    [2, -2, 0, 4, -10, 18],
    [3, -8, 18, -36, 65, -108],
    [F(20, 3), F(-44, 3), 20, F(-44, 3), F(-40, 3), 80],
    [F(25, 3), F(-64, 3), 53, F(-388, 3), F(880, 3), -610],
    [F(98, 5), F(-844, 15), F(582, 5), -188, F(668, 3), F(-558, 5)],
]

A_TABLE = [
    [1],
    [2, 4],
    [3, 4, 4],
    [F(20, 3), F(56, 3), F(40, 3), F(16, 3)],
    [F(25, 3), F(86, 3), 50, F(106, 3), F(32, 3)],
    [F(98, 5), F(1214, 15), F(2012, 15), F(656, 5), F(1016, 15), F(46, 3)],
]


def test_b_table():
    for k, row in enumerate(B_TABLE):
        for l, v in enumerate(row):
            assert coeff_b(k, l) == v, (k, l)


def test_a_table():
    for k, row in enumerate(A_TABLE):
        for l, v in enumerate(row):
            assert coeff_a(k, l) == v, (k, l)


def test_hand_trace_b10():
    # x_{0,0} = 1/2, y_{0,0} = 1, c_{2,0} = 1/2
    assert coeff_c(2, 0) == F(1, 2)
    assert 2 * (F(1, 2) + 1 - coeff_c(2, 0)) == coeff_b(1, 0) == 2


def test_a11_by_hand():
    assert coeff_a(1, 1) == 1 * coeff_b(1, 1) + 3 * coeff_b(1, 0) == 4


def test_negative_index():
    t = CoeffTable()
    assert t.b(-1, 3) == 0 and t.b(2, -1) == 0
    with pytest.raises(ValueError):
        coeff_b(-1, 0)


@pytest.mark.parametrize("n,value", [(0, 0), (1, 1), (2, -1), (3, 3), (4, -5), (5, 11)])
def test_catalan_rhs(n, value):
    assert catalan_rhs(n) == value


def test_small_identities_by_hand():
    assert coeff_b(0, 0) == catalan_rhs(1)
    assert coeff_b(0, 1) + coeff_b(1, 0) / 2 == -1 == catalan_rhs(2)


def test_diagonal_identity_to_forty():
    for n in range(41):
        assert diagonal_sum(n) == catalan_rhs(n + 1), n


def test_expansion_prefix_matches():
    for k in range(7):
        for l in range(9):
            assert b1_coefficient(k, l) == coeff_b(k, l), (k, l)


def test_recurrence_definition_directly():
    """Evaluate the defining double sums literally for small indices."""

    def x(k, l):
        return sum(
            coeff_b(i, k - i - j) * coeff_b(j, l) / ((i + 1) * (i + j + 2))
            for i in range(k + 1)
            for j in range(k + 1 - i)
        )

    def y(k, l):
        return sum((-1) ** (k - i) * coeff_b(i, l) / (i + 1) for i in range(k + 1))

    for k in range(1, 7):
        for l in range(7):
            assert coeff_b(k, l) == (k + 1) * (x(k - 1, l) + y(k - 1, l) - coeff_c(k + 1, l))


def test_float_table_tracks_exact():
    arr = float_coefficients(40)
    for n in range(40):
        for k in range(n + 1):
            exact = coeff_b(k, n - k)
            assert arr[k, n - k] == pytest.approx(float(exact), rel=1e-9, abs=1e-9)
    assert arr[39, 1] == 0.0  # outside the triangle
    assert not arr.flags.writeable
