import math

import numpy as np
import pytest

from urnvote.condorcet import (
    PermutationBallot,
    beat_probability,
    beats_counts,
    build_condorcet_samplers,
    build_sampler,
    condorcet_ballot,
    condorcet_budget,
    rank_draws,
    sample_draws,
    sample_permutation,
)
from urnvote.model import lower_bound_instance, make_bichromatic


def marginal(pi, pj):
    return min(1.0, 1.0 / (pi + pj))


def empirical_check(ps, draws=100_000, seed=0):
    samplers = [build_sampler(p) for p in ps]
    x = sample_draws(samplers, np.random.default_rng(seed), draws)
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            target = marginal(ps[i], ps[j])
            freq = (x[:, i] < x[:, j]).mean()
            sd = math.sqrt(target * (1 - target) / draws)
            assert abs(freq - target) <= max(3 * sd, 1e-12), (i, j, freq, target)


def test_marginals_two_urns_far_apart():
    empirical_check([0.2, 0.9])


def test_marginals_two_upper_urns():
    empirical_check([0.55, 0.7])


def test_constant_draws_give_fixed_order():
    s = [build_sampler(p) for p in (0.2, 0.3)]
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert sample_permutation(s, rng).order() == [2, 1]


def test_permutation_ballot():
    b = PermutationBallot((1, 2, 0))
    assert b.order() == [2, 1, 3]
    assert b.prefers(1, 3)
    with pytest.raises(ValueError):
        PermutationBallot((0, 0, 1))


def test_rank_ties_go_to_larger_index():
    assert rank_draws(np.array([[0.3, 0.1, 0.3]])).tolist() == [[1, 0, 2]]
    counts = beats_counts(np.array([[0.5, 0.5]]))
    assert counts.tolist() == [[0, 0], [1, 0]]


def test_distinct_values_required():
    s = build_sampler(0.7)
    with pytest.raises(ValueError):
        sample_permutation([s, s], np.random.default_rng(0))


def test_red_side_mirrors_blue():
    inst = make_bichromatic([0.3, 0.6, 0.8])
    mirror = make_bichromatic([0.2, 0.4, 0.7])
    a = build_condorcet_samplers(inst)
    b = build_condorcet_samplers(mirror)
    assert [s.p for s in a.red] == pytest.approx([s.p for s in reversed(b.blue)])
    rng = np.random.default_rng(0)
    assert len(condorcet_ballot(a, "blue", rng).ranking) == 3
    with pytest.raises(ValueError):
        condorcet_ballot(a, "green", rng)


def test_beat_probability_formula_and_floor():
    inst = lower_bound_instance(4, 0.15)
    for i in range(1, 5):
        for j in range(1, 5):
            if i == j:
                continue
            p = beat_probability(inst, i, j)
            pi, pj = inst.p(i), inst.p(j)
            qi, qj = 1 - pi, 1 - pj
            assert p in (
                pytest.approx(max(qi, qj) / (qi + qj)),
                pytest.approx(max(pi, pj) / (pi + pj)),
            )
            assert p >= 0.5 + abs(i - j) * 0.15 / 4 - 1e-12


def test_beat_probability_monte_carlo():
    inst = lower_bound_instance(4, 0.15)
    samplers = build_condorcet_samplers(inst)
    rng = np.random.default_rng(4)
    m = 200_000
    true = 2
    m_blue = int(rng.binomial(m, inst.p(true)))
    counts = beats_counts(sample_draws(samplers.blue, rng, m_blue))
    counts += beats_counts(sample_draws(samplers.red, rng, m - m_blue))
    for j in (1, 3, 4):
        p = beat_probability(inst, true, j)
        assert abs(counts[true - 1, j - 1] / m - p) < 4 * math.sqrt(p * (1 - p) / m)


def test_budget():
    inst = lower_bound_instance(4, 0.15)
    assert condorcet_budget(inst, 0.1) == math.ceil(150 / 0.0225 * math.log(30))
    assert condorcet_budget(lower_bound_instance(6, 0.15), 0.1) == condorcet_budget(inst, 0.1)
    assert condorcet_budget(inst, 0.01) - condorcet_budget(inst, 0.1) == pytest.approx(
        150 / 0.0225 * math.log(10), abs=1
    )
