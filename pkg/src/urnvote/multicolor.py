"""Plurality voting with C > 2 colors, reduced to two-color landmark schemes.

Each voter picks a color ``c`` uniformly and a resolution level ``t`` from a
geometric law, merges all other colors into one, and votes with the landmark
scheme built for that ``(c, t)`` view. Averaging over every ``(c, t)`` gives
the exact per-voter vote kernel, so the engine can tally with a single
multinomial draw per election.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from urnvote.landmarks import (
    FlexibleScheme,
    LandmarkSet,
    build_flexible_scheme,
    validate_landmarks,
)
from urnvote.model import MulticolorInstance

MULTICOLOR_CONSTANT = 7 * 10**12
KERNEL_MARGIN_CONSTANT = 26730
PAD_POINTS = 9  # widest gap is cut into ninths when fewer than 10 marks exist


def level_count(colors: int) -> int:
    """``T = ceil(log_3 C) + 1``, computed with integers."""
    if colors < 1:
        raise ValueError("need at least one color")
    power, exp = 1, 0
    while power < colors:
        power *= 3
        exp += 1
    return exp + 1


@dataclass(frozen=True)
class CtLevelDistribution:
    T: int
    alpha: Fraction
    level_probs: tuple


def level_distribution(colors: int) -> CtLevelDistribution:
    """``Pr[t = i] = 3^(i-T) / alpha`` for ``i = 0..T`` with ``alpha = sum_i 3^-i``."""
    T = level_count(colors)
    alpha = sum(Fraction(1, 3**i) for i in range(T + 1))
    probs = tuple(Fraction(3**i, 3**T) / alpha for i in range(T + 1))
    return CtLevelDistribution(T=T, alpha=alpha, level_probs=probs)


def _resolution(eps, t: int):
    return eps / 3**t if isinstance(eps, Fraction) else eps / float(3**t)


def marking_algorithm(probs: Sequence, t: int, eps) -> list:
    """Greedy marks ``w`` covering every probability within ``eps / 3^t``.

    ``w_1 = 0`` covers everything up to ``eps / 3^t``; each later mark is the
    smallest uncovered probability and covers the open window of that width
    to its right. The list ends at 1: a final mark closer to 1 than the
    window is moved onto 1 (it still covers its urns), otherwise 1 is appended.
    """
    delta = _resolution(eps, t)
    zero = delta - delta
    marks = [zero]
    pending = sorted(p for p in probs if p > delta)
    while pending:
        head = pending[0]
        marks.append(head)
        pending = [p for p in pending if p - head >= delta]
    if marks[-1] != 1:
        if len(marks) > 1 and 1 - marks[-1] < delta:
            marks[-1] = zero + 1
        else:
            marks.append(zero + 1)
    return marks


def pad_marks(marks: list) -> list:
    """Cut the widest gap into ninths when fewer than 10 marks exist."""
    if len(marks) >= 10:
        return list(marks)
    gaps = [b - a for a, b in zip(marks, marks[1:])]
    i = gaps.index(max(gaps))
    lo, width = marks[i], gaps[i]
    extra = [lo + width * k / PAD_POINTS for k in range(1, PAD_POINTS)]
    return marks[: i + 1] + extra + marks[i + 1:]


def add_thirds(marks: list) -> list:
    out = [marks[0]]
    for a, b in zip(marks, marks[1:]):
        out.extend([(2 * a + b) / 3, (a + 2 * b) / 3, b])
    return out


def fill_gaps(points: list, eps) -> list:
    """Insert points until the first ``ceil(n'/3)`` gaps and the gaps from
    ``floor(2n'/3)`` on are all at most ``2 eps``.

    Low-end gaps are repaired at the smallest offending index by inserting
    ``y_i + eps``; high-end gaps at the largest offending index by inserting
    ``y_{i+1} - eps``. Both passes repeat until neither finds a violation.
    """
    y = list(points)
    limit = 2 * eps

    def low_violation():
        upto = math.ceil(len(y) / 3)
        for i in range(1, min(upto, len(y) - 1) + 1):
            if y[i] - y[i - 1] > limit:
                return i
        return None

    def high_violation():
        start = (2 * len(y)) // 3
        for i in range(len(y) - 1, max(start, 1) - 1, -1):
            if y[i] - y[i - 1] > limit:
                return i
        return None

    while True:
        changed = False
        i = low_violation()
        while i is not None:
            y.insert(i, y[i - 1] + eps)
            changed = True
            i = low_violation()
        i = high_violation()
        while i is not None:
            y.insert(i, y[i] - eps)
            changed = True
            i = high_violation()
        if not changed:
            return y


@dataclass(frozen=True)
class CtInstance:
    color: int
    level: int
    probs: tuple
    marks: tuple
    padded_marks: int
    landmark_set: LandmarkSet
    eps_ct: object
    n_ct: int

    @property
    def K_ct(self) -> int:
        return math.ceil(self.n_ct / 3)


def build_ct_landmarks(inst: MulticolorInstance, c: int, t: int) -> CtInstance:
    """Landmark grid of the two-color view of ``inst`` on color ``c`` at level ``t``."""
    T = level_count(inst.colors)
    if not 0 <= t <= T:
        raise ValueError(f"level t must lie in 0..{T}")
    probs = inst.column(c)
    marks = marking_algorithm(probs, t, inst.eps_l1)
    padded = pad_marks(marks)
    y = add_thirds(padded)
    eps_ct = min(b - a for a, b in zip(y, y[1:]))
    y = fill_gaps(y, eps_ct)
    lms = validate_landmarks(y)
    return CtInstance(
        color=c,
        level=t,
        probs=probs,
        marks=tuple(marks),
        padded_marks=len(padded),
        landmark_set=lms,
        eps_ct=eps_ct,
        n_ct=len(y),
    )


def ct_properties(ct: CtInstance, eps) -> dict[str, bool]:
    """Post-conditions of the landmark construction for one ``(c, t)`` view.

    Keys: ``a`` min gap kept, ``b``/``c`` low/high gaps at most ``2 eps_ct``,
    ``d`` at least 10 landmarks, ``e`` size at most ``3 i* - 2 + 2(K+1)``
    (``i*`` counting the padded marks), ``f`` both ends reached within
    ``(2K+1) eps_ct``, ``separation`` ``eps_ct >= eps / 3^(t+3)``, and
    ``covered`` every urn within ``eps / 3^t`` of a mark.
    """
    y = ct.landmark_set.points
    n = len(y)
    e = ct.eps_ct
    K = ct.K_ct
    gaps = [b - a for a, b in zip(y, y[1:])]
    delta = _resolution(eps, ct.level)
    return {
        "a": min(gaps) >= e,
        "b": all(gaps[i - 1] <= 2 * e for i in range(1, min(K, n - 1) + 1)),
        "c": all(gaps[i - 1] <= 2 * e for i in range(max((2 * n) // 3, 1), n)),
        "d": n >= 10,
        "e": n <= 3 * ct.padded_marks - 2 + 2 * (K + 1),
        "f": y[K] <= (2 * K + 1) * e and y[n - K - 1] >= 1 - (2 * K + 1) * e,
        "separation": e >= _resolution(eps, ct.level + 3),
        "covered": all(any(abs(p - w) <= delta for w in ct.marks) for p in ct.probs),
    }


def ct_schemes(inst: MulticolorInstance, workers: int = 1):
    """``[(c, t, weight, CtInstance, FlexibleScheme)]`` over every view, in ``(c, t)`` order."""
    dist = level_distribution(inst.colors)
    exact = inst.exact
    pairs = [(c, t) for c in range(1, inst.colors + 1) for t in range(dist.T + 1)]

    def build(ct_pair):
        c, t = ct_pair
        ct = build_ct_landmarks(inst, c, t)
        return ct, build_flexible_scheme(ct.probs, ct.landmark_set)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            built = list(pool.map(build, pairs))
    else:
        built = [build(pair) for pair in pairs]
    out = []
    for (c, t), (ct, scheme) in zip(pairs, built):
        w = Fraction(1, inst.colors) * dist.level_probs[t]
        out.append((c, t, w if exact else float(w), ct, scheme))
    return out


def multicolor_vote_kernel(inst: MulticolorInstance, workers: int = 1) -> list[list]:
    """``E[i][j]``: probability that one voter names urn ``j+1`` when urn ``i+1`` is true.

    Exact (``Fraction``) for exact instances.
    """
    n = inst.n
    zero = Fraction(0) if inst.exact else 0.0
    kernel = [[zero] * n for _ in range(n)]
    for _c, _t, w, _ct, scheme in ct_schemes(inst, workers):
        for i, row in enumerate(scheme.kernel()):
            for j, v in enumerate(row):
                kernel[i][j] += w * v
    return kernel


def kernel_margin_floor(inst: MulticolorInstance):
    """``eps / (26730 C T n^2)``, the guaranteed per-voter margin of the true urn."""
    C, n = inst.colors, inst.n
    denom = KERNEL_MARGIN_CONSTANT * C * level_count(C) * n * n
    return inst.eps_l1 / denom


def useful_colors(inst: MulticolorInstance, i: int, j: int) -> list[int]:
    """Colors on which urns ``i`` and ``j`` differ by more than ``eps / (3C)``."""
    threshold = inst.eps_l1 / (3 * inst.colors)
    a, b = inst.rows[i - 1], inst.rows[j - 1]
    return [c for c in range(1, inst.colors + 1) if abs(a[c - 1] - b[c - 1]) > threshold]


def pair_level(inst: MulticolorInstance, i: int, j: int, c: int) -> int:
    """Smallest ``t >= 0`` with ``|p_ic - p_jc| >= eps / 3^t``."""
    diff = abs(inst.rows[i - 1][c - 1] - inst.rows[j - 1][c - 1])
    if diff == 0:
        raise ValueError("urns agree on this color")
    t = 0
    while diff < _resolution(inst.eps_l1, t):
        t += 1
    return t


def multicolor_budget(inst: MulticolorInstance, eta: float, scale: float = 1.0) -> int:
    """``ceil(scale * 7e12 * C^2 T^2 n^3 / eps^2 * ln(n / eta))``."""
    if not 0 < eta < 1:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    if scale <= 0:
        raise ValueError("scale must be positive")
    C, n = inst.colors, inst.n
    T = level_count(C)
    core = MULTICOLOR_CONSTANT * C**2 * T**2 * n**3 / float(inst.eps_l1) ** 2
    return math.ceil(scale * core * math.log(n / eta))


__all__ = [
    "CtInstance",
    "CtLevelDistribution",
    "FlexibleScheme",
    "build_ct_landmarks",
    "ct_properties",
    "ct_schemes",
    "kernel_margin_floor",
    "level_count",
    "level_distribution",
    "marking_algorithm",
    "multicolor_budget",
    "multicolor_vote_kernel",
    "pair_level",
    "useful_colors",
]
