import math
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, assume, given, settings

from urnvote.model import InstanceError, make_multicolor
from urnvote.multicolor import (
    add_thirds,
    build_ct_landmarks,
    ct_properties,
    kernel_margin_floor,
    level_count,
    level_distribution,
    marking_algorithm,
    multicolor_budget,
    multicolor_vote_kernel,
    pad_marks,
    pair_level,
    useful_colors,
)

from strategies import stochastic_rows


@pytest.mark.parametrize("colors,T", [(1, 1), (2, 2), (3, 2), (4, 3), (9, 3), (10, 4), (27, 4)])
def test_level_count(colors, T):
    assert level_count(colors) == T
    assert T == math.ceil(math.log(colors, 3) - 1e-12) + 1


def test_level_distribution_sums_to_one():
    d = level_distribution(5)
    assert sum(d.level_probs) == 1
    assert d.level_probs[-1] == 1 / d.alpha
    assert all(b == 3 * a for a, b in zip(d.level_probs, d.level_probs[1:]))


def test_marking_single_value_at_resolution():
    # 1/2 <= eps/3^0 is swept up by the first mark at 0
    assert marking_algorithm([F(1, 2)], 0, F(1, 2)) == [0, 1]


def test_marking_all_small():
    assert marking_algorithm([F(1, 100), F(1, 50)], 1, F(1, 10)) == [0, 1]


def test_marking_two_values():
    assert marking_algorithm([F(1, 5), F(4, 5)], 0, F(1, 10)) == [0, F(1, 5), F(4, 5), 1]


def test_marking_last_mark_moves_to_one():
    assert marking_algorithm([F(1, 5), F(19, 20)], 0, F(1, 10)) == [0, F(1, 5), 1]


def test_padding_ninths():
    padded = pad_marks([F(0), F(1)])
    assert padded == [F(k, 9) for k in range(10)]
    assert len(add_thirds(padded)) == 28


def test_two_colors_reduce_to_landmark_grid():
    inst = make_multicolor([[F(1, 4), F(3, 4)], [F(2, 3), F(1, 3)]])
    for t in range(level_count(2) + 1):
        ct = build_ct_landmarks(inst, 1, t)
        assert ct.landmark_set.size >= 10
        assert all(ct_properties(ct, inst.eps_l1).values())


def test_level_out_of_range():
    inst = make_multicolor([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        build_ct_landmarks(inst, 1, 5)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(stochastic_rows(n=4, colors=3))
def test_construction_postconditions(rows):
    try:
        inst = make_multicolor(rows)
    except InstanceError:
        assume(False)
    for c in range(1, 4):
        for t in range(level_count(3) + 1):
            props = ct_properties(build_ct_landmarks(inst, c, t), inst.eps_l1)
            assert all(props.values()), props


def test_mirrored_rows_symmetric_kernel():
    inst = make_multicolor([[F(1, 3), F(2, 3)], [F(2, 3), F(1, 3)]])
    k = multicolor_vote_kernel(inst)
    assert k[0][0] == k[1][1]
    assert k[0][1] == k[1][0]


def test_disjoint_supports():
    inst = make_multicolor([[1, 0], [0, 1]])
    k = multicolor_vote_kernel(inst)
    assert all(sum(row) == 1 for row in k)
    floor = kernel_margin_floor(inst)
    assert k[0][0] - k[0][1] > 10**4 * floor
    assert k[1][1] - k[1][0] > 10**4 * floor


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(stochastic_rows(n=3, colors=3))
def test_kernel_margin_floor(rows):
    try:
        inst = make_multicolor(rows)
    except InstanceError:
        assume(False)
    k = multicolor_vote_kernel(inst)
    floor = kernel_margin_floor(inst)
    for i in range(3):
        assert sum(k[i]) == 1
        for j in range(3):
            if i != j:
                assert k[i][i] - k[i][j] >= floor


def test_parallel_kernel_matches_serial():
    inst = make_multicolor([[F(1, 2), F(1, 4), F(1, 4)], [F(1, 4), F(1, 2), F(1, 4)], [F(1, 3)] * 3])
    assert multicolor_vote_kernel(inst, workers=3) == multicolor_vote_kernel(inst)


def test_useful_colors_and_levels():
    inst = make_multicolor([[F(1, 2), F(1, 2), 0], [F(1, 2), F(1, 4), F(1, 4)]])
    assert useful_colors(inst, 1, 2) == [2, 3]
    assert pair_level(inst, 1, 2, 2) == 1  # 1/4 against eps = 1/2
    with pytest.raises(ValueError):
        pair_level(inst, 1, 2, 1)


def test_budget_constant_and_scaling():
    inst = make_multicolor([[1, 0], [0, 1]])
    full = multicolor_budget(inst, 0.1)
    assert full == math.ceil(7e12 * 4 * 4 * 8 / 4 * math.log(20))
    assert multicolor_budget(inst, 0.1, scale=1e-9) == math.ceil(1e-9 * 7e12 * 4 * 4 * 8 / 4 * math.log(20))
    halved = multicolor_budget(inst, 0.05)
    assert halved / full == pytest.approx(math.log(40) / math.log(20), rel=1e-9)
