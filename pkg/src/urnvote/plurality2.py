"""Two-signal plurality strategy.

A voter who draws blue votes for urn ``j`` with probability ``B_j``, on red
with probability ``R_j``. The weights grow (blue) or shrink (red) along the
sorted urns in steps of ``(2 - p_l - p_{l+1}) / gap`` and ``(p_l + p_{l+1}) / gap``,
which makes the true urn the strict favourite by at least ``|i - j| / M``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from urnvote.model import BichromaticInstance, check_urn, require_strict

PLURALITY_CONSTANT = 108


def gap_weights(points) -> tuple[list, list]:
    """Cumulative blue/red weights ``b_k`` and ``r_k`` for strictly increasing points.

    ``b_k`` sums ``(2 - p_l - p_{l+1}) / (p_{l+1} - p_l)`` over ``l < k`` and
    ``r_k`` sums ``(p_l + p_{l+1}) / (p_{l+1} - p_l)`` over ``l >= k``.
    """
    n = len(points)
    zero = points[0] - points[0]
    blue_steps = []
    red_steps = []
    for lo, hi in zip(points, points[1:]):
        gap = hi - lo
        blue_steps.append((2 - (hi + lo)) / gap)
        red_steps.append((hi + lo) / gap)
    b = [zero] * n
    for k in range(1, n):
        b[k] = b[k - 1] + blue_steps[k - 1]
    r = [zero] * n
    for k in range(n - 2, -1, -1):
        r[k] = r[k + 1] + red_steps[k]
    return b, r


def vote_shares(blue_votes, red_votes, p_true) -> list:
    """Per-urn vote probability ``p B_j + (1 - p) R_j`` when the true urn has blue fraction ``p``."""
    return [p_true * bj + (1 - p_true) * rj for bj, rj in zip(blue_votes, red_votes)]


@dataclass(frozen=True)
class PluralityScheme:
    b_weights: tuple
    r_weights: tuple
    m_norm: object
    blue_votes: tuple
    red_votes: tuple

    @property
    def n(self) -> int:
        return len(self.blue_votes)


def build_plurality_scheme(inst: BichromaticInstance) -> PluralityScheme:
    """Construct the symmetric two-signal strategy for a strict instance.

    Example:
        >>> from fractions import Fraction as F
        >>> from urnvote.model import make_bichromatic
        >>> s = build_plurality_scheme(make_bichromatic([F(1, 4), F(1, 2), F(3, 4)]))
        >>> s.m_norm, s.blue_votes
        (Fraction(13, 1), (Fraction(0, 1), Fraction(5, 13), Fraction(8, 13)))
    """
    require_strict(inst)
    n = inst.n
    b, r = gap_weights(inst.probs)
    total_b = sum(b)
    total_r = sum(r)
    m_norm = max(total_b, total_r)
    blue = tuple((bk + (m_norm - total_b) / n) / m_norm for bk in b)
    red = tuple((rk + (m_norm - total_r) / n) / m_norm for rk in r)
    return PluralityScheme(
        b_weights=tuple(b), r_weights=tuple(r), m_norm=m_norm, blue_votes=blue, red_votes=red
    )


def expected_shares(s: PluralityScheme, inst: BichromaticInstance, true_urn: int) -> list:
    """Probability that a single voter names each urn when ``true_urn`` is on the table."""
    p = inst.p(true_urn)
    return vote_shares(s.blue_votes, s.red_votes, p)


def margin(s: PluralityScheme, inst: BichromaticInstance, i: int, j: int):
    """Expected share advantage of the true urn ``i`` over urn ``j``."""
    check_urn(i, inst.n)
    check_urn(j, inst.n)
    if i == j:
        raise ValueError("margin needs two different urns")
    shares = expected_shares(s, inst, i)
    return shares[i - 1] - shares[j - 1]


def _check_eta(eta: float) -> None:
    if not 0 < eta < 1:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")


def plurality_budget(
    inst: BichromaticInstance,
    eta: float,
    scale: float = 1.0,
    constant: float = PLURALITY_CONSTANT,
) -> int:
    """Voters sufficient for failure probability at most ``eta``:
    ``ceil(scale * constant * M (n-1) / eps * ln(4/eta))``.

    ``constant`` defaults to the proven 108; ``scale`` shrinks it for
    desk-sized runs.
    """
    _check_eta(eta)
    if scale <= 0:
        raise ValueError("scale must be positive")
    s = build_plurality_scheme(inst)
    factor = float(s.m_norm * (inst.n - 1) / inst.eps)
    return math.ceil(scale * constant * factor * math.log(4 / eta))


def plurality_budget_cap(inst: BichromaticInstance, eta: float | None = None) -> int:
    """Cap implied by ``M <= 2n(n-1)/eps``: ``ceil(216 (n-1)^2 n / eps^2)``.

    Without ``eta`` this is the bare figure, which omits the ``ln(4/eta)``
    factor and so does not bound the budget by itself. Passing ``eta`` restores
    the factor, giving a true upper bound on :func:`plurality_budget`.
    """
    require_strict(inst)
    n = inst.n
    value = float(216 * (n - 1) ** 2 * n / inst.eps ** 2)
    if eta is not None:
        _check_eta(eta)
        value *= math.log(4 / eta)
    return math.ceil(value)
