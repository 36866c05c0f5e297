"""Cumulative voting built from the two-signal plurality scheme.

Instead of sampling one urn, a voter hands in the whole vote vector for
their color: ``(B_1, ..., B_n)`` on blue, ``(R_1, ..., R_n)`` on red. The tally
then depends only on how many voters drew blue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from urnvote.model import BichromaticInstance, check_urn
from urnvote.plurality2 import PluralityScheme, build_plurality_scheme

CUMULATIVE_CONSTANT = 150


@dataclass(frozen=True)
class CumulativeScheme:
    blue_ballot: tuple
    red_ballot: tuple

    @property
    def n(self) -> int:
        return len(self.blue_ballot)

    def scores(self, m_blue: int, m_red: int) -> list:
        """Total weight per urn after ``m_blue`` blue and ``m_red`` red ballots."""
        return [m_blue * b + m_red * r for b, r in zip(self.blue_ballot, self.red_ballot)]


def cumulative_ballots(s: PluralityScheme) -> CumulativeScheme:
    for ballot in (s.blue_votes, s.red_votes):
        if any(v < 0 for v in ballot):
            raise ValueError("ballot weights must be non-negative")
        if abs(sum(ballot) - 1) > 1e-12:
            raise ValueError("ballot weights must sum to 1")
    return CumulativeScheme(blue_ballot=tuple(s.blue_votes), red_ballot=tuple(s.red_votes))


def cumulative_budget(inst: BichromaticInstance, eta: float) -> int:
    """``ceil(150 / eps^2 * ln(2 / eta))``; no dependence on the number of urns."""
    if not 0 < eta < 1:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    eps = float(inst.eps)
    if eps <= 0:
        raise ValueError("instance separation must be positive")
    return math.ceil(CUMULATIVE_CONSTANT / eps**2 * math.log(2 / eta))


def cumulative_margin_span(s: PluralityScheme, inst: BichromaticInstance, i: int, j: int):
    """``(delta, span, bound)`` for true urn ``i`` against ``j``.

    ``delta = p_i (B_i - B_j) + (1 - p_i)(R_i - R_j)`` is the expected score
    gap per voter, ``span = |B_i - B_j| + |R_i - R_j|`` the most one ballot
    can move it, and ``bound = 4 |i - j| / (eps M)``.
    """
    check_urn(i, inst.n)
    check_urn(j, inst.n)
    if i == j:
        raise ValueError("span needs two different urns")
    p = inst.p(i)
    db = s.blue_votes[i - 1] - s.blue_votes[j - 1]
    dr = s.red_votes[i - 1] - s.red_votes[j - 1]
    delta = p * db + (1 - p) * dr
    span = abs(db) + abs(dr)
    bound = 4 * abs(i - j) / (inst.eps * s.m_norm)
    return delta, span, bound


def score_gap(s: CumulativeScheme, i: int, j: int, m_blue: int, m_red: int):
    """``D_i(j) = m_b (B_i - B_j) + m_r (R_i - R_j)``."""
    return m_blue * (s.blue_ballot[i - 1] - s.blue_ballot[j - 1]) + m_red * (
        s.red_ballot[i - 1] - s.red_ballot[j - 1]
    )


def scheme_for(inst: BichromaticInstance) -> CumulativeScheme:
    return cumulative_ballots(build_plurality_scheme(inst))
