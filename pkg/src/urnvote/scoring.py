"""Voting strategy induced by a proper scoring rule.

A pair ``(f0, f1)`` is proper when ``z f0(x) + (1 - z) f1(x)`` peaks at
``x = z``. A voter who draws blue votes for urn ``i`` in proportion to
``f0(p_i)``, on red in proportion to ``f1(p_i)``, with a uniform top-up so
both vote vectors sum to one. Simple, but the true urn only wins by a
margin quadratic in the separation, so it needs far more voters than the
gap-weight scheme in :mod:`urnvote.plurality2`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from urnvote.model import BichromaticInstance, check_urn, require_strict

PROBE_STEPS = 20


@dataclass(frozen=True)
class ScoringRulePair:
    f0: Callable
    f1: Callable
    name: str = "custom"

    def g(self, z, x):
        return z * self.f0(x) + (1 - z) * self.f1(x)


def brier_pair() -> ScoringRulePair:
    """Quadratic rule: ``f0(x) = 2x - x^2``, ``f1(x) = 1 - x^2``."""
    return ScoringRulePair(f0=lambda x: 2 * x - x * x, f1=lambda x: 1 - x * x, name="brier")


def properness_violations(pair: ScoringRulePair, steps: int = PROBE_STEPS) -> list[tuple]:
    """Grid points ``z`` where ``g_z`` is not uniquely maximised at ``x = z``.

    Both ``z`` and ``x`` range over ``{0, 1/steps, ..., 1}`` as exact
    rationals. Returns ``(z, x)`` pairs with ``g_z(x) >= g_z(z)``, ``x != z``.
    """
    grid = [Fraction(k, steps) for k in range(steps + 1)]
    bad = []
    for z in grid:
        top = pair.g(z, z)
        for x in grid:
            if x != z and pair.g(z, x) >= top:
                bad.append((z, x))
    return bad


def is_proper_on_grid(pair: ScoringRulePair, steps: int = PROBE_STEPS) -> bool:
    return not properness_violations(pair, steps)


@dataclass(frozen=True)
class InducedScheme:
    q0: object
    q1: object
    q_star: object
    blue_votes: tuple
    red_votes: tuple

    @property
    def n(self) -> int:
        return len(self.blue_votes)


def induced_strategy(inst: BichromaticInstance, pair: ScoringRulePair | None = None) -> InducedScheme:
    """Vote vectors induced by ``pair`` (Brier by default).

    Blue weight of urn ``i`` is ``f0(p_i)/q* + (q* - q0)/(q* N)`` with ``N``
    the number of urns; red uses ``f1`` and ``q1``. Each vector sums to one.

    >>> from fractions import Fraction as F
    >>> from urnvote.model import make_bichromatic
    >>> s = induced_strategy(make_bichromatic([F(1, 3), F(2, 3)]))
    >>> s.q0, s.blue_votes
    (Fraction(13, 9), (Fraction(5, 13), Fraction(8, 13)))
    """
    require_strict(inst)
    pair = pair or brier_pair()
    f0 = [pair.f0(p) for p in inst.probs]
    f1 = [pair.f1(p) for p in inst.probs]
    if any(v < 0 for v in f0 + f1):
        raise ValueError("scoring functions must be non-negative on the instance")
    q0, q1 = sum(f0), sum(f1)
    q_star = max(q0, q1)
    if q_star == 0:
        raise ValueError("scoring functions vanish on every urn")
    n = inst.n
    blue = tuple(v / q_star + (q_star - q0) / (q_star * n) for v in f0)
    red = tuple(v / q_star + (q_star - q1) / (q_star * n) for v in f1)
    return InducedScheme(q0=q0, q1=q1, q_star=q_star, blue_votes=blue, red_votes=red)


def induced_kernel(s: InducedScheme, inst: BichromaticInstance) -> list[list]:
    """Row ``i``: per-voter vote distribution when urn ``i+1`` is true."""
    return [[p * b + (1 - p) * r for b, r in zip(s.blue_votes, s.red_votes)] for p in inst.probs]


def expected_votes_direct(s: InducedScheme, inst: BichromaticInstance, true_urn: int, k: int) -> list:
    """Expected votes per urn with ``k`` voters, summed voter by voter."""
    p = inst.p(true_urn)
    totals = [p - p] * inst.n
    for _ in range(k):
        for j in range(inst.n):
            totals[j] += p * s.blue_votes[j] + (1 - p) * s.red_votes[j]
    return totals


def expected_votes_formula(
    s: InducedScheme,
    inst: BichromaticInstance,
    pair: ScoringRulePair,
    true_urn: int,
    k: int,
    literal: bool = False,
) -> list:
    """Closed form ``(k/q*) g_{p_t}(p_j) + const``.

    The constant is ``k (p_t (q* - q0) + (1 - p_t)(q* - q1)) / (q* N)``.
    With ``literal=True`` it is replaced by ``|q1 - q0| k / (q* N)``, which
    agrees only when ``q0 = q1`` and otherwise overstates it.
    """
    pt = inst.p(check_urn(true_urn, inst.n))
    n = inst.n
    if literal:
        const = abs(s.q1 - s.q0) * k / (s.q_star * n)
    else:
        const = k * (pt * (s.q_star - s.q0) + (1 - pt) * (s.q_star - s.q1)) / (s.q_star * n)
    return [k * pair.g(pt, pj) / s.q_star + const for pj in inst.probs]


def efficiency_experiment(
    n: int,
    eps_list: Sequence,
    target_success: float = 0.9,
    trials: int = 400,
    seed: int = 0,
    workers: int = 1,
) -> list[dict]:
    """Smallest electorate reaching ``target_success`` on ``I(n, eps)``, for the
    induced Brier scheme and the gap-weight scheme.

    Success is worst-case over true urns. Each row holds ``eps``,
    ``m_scoring``, ``m_plurality`` and their ``ratio``.
    """
    from urnvote.engine import minimal_voters, worst_case_failure
    from urnvote.model import lower_bound_instance
    from urnvote.plurality2 import build_plurality_scheme, expected_shares

    rows = []
    for idx, eps in enumerate(eps_list):
        inst = lower_bound_instance(n, eps)
        score = induced_kernel(induced_strategy(inst), inst)
        plur = build_plurality_scheme(inst)
        plur_kernel = [expected_shares(plur, inst, i) for i in range(1, n + 1)]
        found = {}
        for label, kernel in (("scoring", score), ("plurality", plur_kernel)):

            def failure(m, kernel=kernel, label=label):
                stream = (idx, 0 if label == "scoring" else 1, m)
                return worst_case_failure(kernel, m, trials, seed, stream=stream, workers=workers)

            found[label] = minimal_voters(failure, target_success)
        rows.append(
            {
                "eps": float(eps),
                "m_scoring": found["scoring"],
                "m_plurality": found["plurality"],
                "ratio": found["scoring"] / found["plurality"],
            }
        )
    return rows
