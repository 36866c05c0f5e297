import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from urnvote.cumulative import (
    cumulative_ballots,
    cumulative_budget,
    cumulative_margin_span,
    score_gap,
    scheme_for,
)
from urnvote.model import lower_bound_instance, make_bichromatic
from urnvote.plurality2 import build_plurality_scheme

from strategies import strict_rationals


def test_two_urn_ballots():
    c = scheme_for(make_bichromatic([F(1, 3), F(2, 3)]))
    assert c.blue_ballot == (0, 1) and c.red_ballot == (1, 0)


def test_three_urn_ballots():
    c = scheme_for(make_bichromatic([F(1, 4), F(1, 2), F(3, 4)]))
    assert c.blue_ballot == (0, F(5, 13), F(8, 13))
    assert c.red_ballot == (F(8, 13), F(5, 13), 0)
    assert sum(c.blue_ballot) == sum(c.red_ballot) == 1


def test_budget():
    inst = lower_bound_instance(5, F(1, 5))
    assert cumulative_budget(inst, 0.1) == math.ceil(3750 * math.log(20))
    assert cumulative_budget(lower_bound_instance(2, 1), 0.3) == math.ceil(150 * math.log(2 / 0.3))
    assert cumulative_budget(lower_bound_instance(3, F(1, 5)), 0.1) == cumulative_budget(inst, 0.1)
    with pytest.raises(ValueError):
        cumulative_budget(inst, 0)


def test_span_two_urns():
    inst = make_bichromatic([F(1, 3), F(2, 3)])
    s = build_plurality_scheme(inst)
    delta, span, bound = cumulative_margin_span(s, inst, 1, 2)
    assert span == 2 and bound == 4
    assert delta == F(1, 3)
    with pytest.raises(ValueError):
        cumulative_margin_span(s, inst, 1, 1)


@settings(max_examples=100, deadline=None)
@given(strict_rationals(max_n=9))
def test_span_bound_and_sign_structure(probs):
    inst = make_bichromatic(probs)
    s = build_plurality_scheme(inst)
    n = inst.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            delta, span, bound = cumulative_margin_span(s, inst, i, j)
            assert span <= bound
            assert delta >= F(abs(i - j)) / s.m_norm
            db = s.blue_votes[i - 1] - s.blue_votes[j - 1]
            dr = s.red_votes[i - 1] - s.red_votes[j - 1]
            assert (i > j) == (db > 0) == (dr < 0)


@settings(max_examples=50, deadline=None)
@given(strict_rationals(max_n=6), st.lists(st.booleans(), max_size=40))
def test_tally_is_linear_in_blue_count(probs, colors):
    c = cumulative_ballots(build_plurality_scheme(make_bichromatic(probs)))
    totals = [F(0)] * c.n
    for blue in colors:
        ballot = c.blue_ballot if blue else c.red_ballot
        totals = [a + b for a, b in zip(totals, ballot)]
    m_b = sum(colors)
    m_r = len(colors) - m_b
    assert totals == c.scores(m_b, m_r)
    for i in range(1, c.n + 1):
        for j in range(1, c.n + 1):
            assert score_gap(c, i, j, m_b, m_r) == totals[i - 1] - totals[j - 1]
