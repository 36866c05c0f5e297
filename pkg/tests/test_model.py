from fractions import Fraction as F

import pytest
from hypothesis import given

from urnvote.model import (
    InstanceError,
    lower_bound_instance,
    make_bichromatic,
    make_multicolor,
    to_number,
)

from strategies import strict_rationals


def test_two_urn_gap():
    inst = make_bichromatic([F(1, 3), F(2, 3)])
    assert inst.eps == F(1, 3)
    assert inst.strict


def test_duplicates_are_not_strict():
    inst = make_bichromatic([0.5, 0.5])
    assert not inst.strict
    assert inst.eps == 0


def test_sorting_and_float_gap():
    inst = make_bichromatic([0.9, 0.1, 0.5])
    assert inst.probs == (0.1, 0.5, 0.9)
    assert inst.eps == pytest.approx(0.4)
    assert not inst.exact


@pytest.mark.parametrize("bad", [[], [1.2], [-0.1, 0.3], ["x"], [True]])
def test_rejects_bad_probabilities(bad):
    with pytest.raises(InstanceError):
        make_bichromatic(bad)


def test_number_parsing():
    assert to_number("2/6") == F(1, 3)
    assert to_number([3, 4]) == F(3, 4)
    assert to_number(1) == F(1)
    assert isinstance(to_number(0.25), float)
    with pytest.raises(InstanceError):
        to_number([1, 0])


def test_mixed_input_falls_back_to_float():
    inst = make_bichromatic([F(1, 4), 0.75])
    assert inst.probs == (0.25, 0.75)


@pytest.mark.parametrize(
    "n,eps,expected",
    [
        (3, F(1, 10), (F(2, 5), F(1, 2), F(3, 5))),
        (2, 1, (F(0), F(1))),
        (5, F(1, 5), (F(1, 10), F(3, 10), F(1, 2), F(7, 10), F(9, 10))),
    ],
)
def test_lower_bound_family(n, eps, expected):
    inst = lower_bound_instance(n, eps)
    assert inst.probs == expected
    assert inst.eps == eps


def test_lower_bound_family_float_stays_in_range():
    inst = lower_bound_instance(2, 1.0)
    assert inst.probs == (0.0, 1.0)


@pytest.mark.parametrize("n,eps", [(1, F(1, 2)), (3, F(3, 5)), (3, 0)])
def test_lower_bound_family_rejects(n, eps):
    with pytest.raises(InstanceError):
        lower_bound_instance(n, eps)


@pytest.mark.parametrize(
    "rows,eps",
    [
        ([[1, 0], [0, 1]], F(2)),
        ([[F(1, 3), F(1, 3), F(1, 3)], [F(1, 2), F(1, 4), F(1, 4)]], F(1, 3)),
    ],
)
def test_multicolor_separation(rows, eps):
    assert make_multicolor(rows).eps_l1 == eps


def test_multicolor_float_separation():
    assert make_multicolor([[0.5, 0.5], [0.6, 0.4]]).eps_l1 == pytest.approx(0.2)


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 0]],
        [[1], [1]],
        [[1, 0], [1, 0]],
        [[F(1, 2), F(1, 3)], [0, 1]],
        [[F(3, 2), F(-1, 2)], [0, 1]],
        [[1, 0], [0, 0, 1]],
    ],
)
def test_multicolor_rejects(rows):
    with pytest.raises(InstanceError):
        make_multicolor(rows)


@given(strict_rationals())
def test_eps_is_min_gap(probs):
    inst = make_bichromatic(list(reversed(probs)))
    assert inst.probs == tuple(probs)
    assert inst.eps == min(b - a for a, b in zip(probs, probs[1:]))
    assert inst.strict
