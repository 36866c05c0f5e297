"""Two-signal plurality over a fixed grid of landmarks.

Urns may share a blue fraction here. Each urn is attached to the landmark
that maximises ``p b_k + (1 - p) r_k`` and votes are spread using the
landmark weights, so urns with the same fraction get identical vote
probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from urnvote.model import coerce_all, is_exact
from urnvote.plurality2 import gap_weights, vote_shares

MIN_LANDMARKS = 10


class LandmarkError(ValueError):
    """A landmark grid violates one of its structural conditions.

    Attributes:
        condition: ``"length"``, ``"order"``, ``"a"`` (local gap) or ``"b"`` (end reach).
        indices: 1-based indices where the condition fails.
    """

    def __init__(self, condition: str, indices: Sequence[int], message: str):
        super().__init__(f"condition ({condition}) violated: {message}")
        self.condition = condition
        self.indices = list(indices)


@dataclass(frozen=True)
class LandmarkSet:
    points: tuple
    eps_lm: object
    K: int

    @property
    def size(self) -> int:
        return len(self.points)


def landmark_violations(points) -> dict[str, list[int]]:
    """Indices breaking the local-gap condition (a) and end-reach condition (b)."""
    n = len(points)
    eps = min(b - a for a, b in zip(points, points[1:]))
    K = math.ceil((n - 1) / 3)
    bad_a = []
    for k in range(1, K + 1):
        if points[k] - points[k - 1] > 2 * eps:
            bad_a.append(k)
        if points[n - k] - points[n - k - 1] > 2 * eps:
            bad_a.append(n - k)
    bad_b = []
    if points[K] > (2 * K + 1) * eps:
        bad_b.append(K + 1)
    if points[n - K - 1] < 1 - (2 * K + 1) * eps:
        bad_b.append(n - K)
    return {"a": sorted(set(bad_a)), "b": bad_b}


def validate_landmarks(points: Sequence) -> LandmarkSet:
    """Check a landmark grid and wrap it.

    The grid must be strictly increasing inside [0, 1], hold at least 10
    points, have its first and last ``K = ceil((n'-1)/3)`` gaps at most twice
    the minimal gap (a), and reach within ``(2K+1) eps`` of both ends by the
    ``K+1``-th point from either side (b).
    """
    pts = coerce_all(points)
    if len(pts) < MIN_LANDMARKS:
        raise LandmarkError("length", [], f"need at least {MIN_LANDMARKS} landmarks, got {len(pts)}")
    out_of_range = [i for i, v in enumerate(pts, start=1) if not 0 <= v <= 1]
    if out_of_range:
        raise LandmarkError("order", out_of_range, "landmarks must lie in [0, 1]")
    unsorted = [i for i in range(1, len(pts)) if pts[i] <= pts[i - 1]]
    if unsorted:
        raise LandmarkError("order", unsorted, "landmarks must be strictly increasing")
    bad = landmark_violations(pts)
    for cond in ("a", "b"):
        if bad[cond]:
            raise LandmarkError(cond, bad[cond], f"at landmark indices {bad[cond]}")
    eps = min(b - a for a, b in zip(pts, pts[1:]))
    return LandmarkSet(points=tuple(pts), eps_lm=eps, K=math.ceil((len(pts) - 1) / 3))


def flanking_landmarks(p, points) -> tuple[int | None, int | None]:
    """``(k_minus, k_plus)``: largest landmark index at or below ``p`` and
    smallest at or above it (1-based, ``None`` when absent)."""
    below = [k for k, x in enumerate(points, start=1) if x <= p]
    above = [k for k, x in enumerate(points, start=1) if x >= p]
    return (below[-1] if below else None, above[0] if above else None)


def attach(p, b, r) -> int:
    """Landmark index maximising ``p b_k + (1 - p) r_k``; ties go to the smaller index."""
    best_k, best_v = 1, p * b[0] + (1 - p) * r[0]
    for k in range(2, len(b) + 1):
        v = p * b[k - 1] + (1 - p) * r[k - 1]
        if v > best_v:
            best_k, best_v = k, v
    return best_k


@dataclass(frozen=True)
class FlexibleScheme:
    probs: tuple
    landmarks: LandmarkSet
    phi: tuple
    b_weights: tuple
    r_weights: tuple
    m_norm: object
    blue_votes: tuple
    red_votes: tuple
    weighted_b: object = field(repr=False)
    weighted_r: object = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.probs)

    def shares(self, i: int) -> list:
        """Vote probabilities for every urn when urn ``i`` (1-based) is true."""
        return vote_shares(self.blue_votes, self.red_votes, self.probs[i - 1])

    def margin(self, i: int, j: int):
        s = self.shares(i)
        return s[i - 1] - s[j - 1]

    def kernel(self) -> list[list]:
        return [self.shares(i) for i in range(1, self.n + 1)]


def build_flexible_scheme(probs: Sequence, lms: LandmarkSet) -> FlexibleScheme:
    """Attach urns to landmarks and derive per-urn blue/red vote probabilities.

    ``M`` is the larger of the landmark weight totals counted with
    multiplicity ``|phi^-1(k)| + 1``. The uniform top-up that completes each
    vote vector to a distribution is ``(M - sum_j b_phi(j)) / n`` (blue; red
    alike), i.e. it uses the weight actually assigned to the ``n`` urns.
    """
    values = coerce_all(probs)
    if not values:
        raise ValueError("need at least one urn")
    if any(not 0 <= v <= 1 for v in values):
        raise ValueError("urn probabilities must lie in [0, 1]")
    points = lms.points
    if is_exact(values) != is_exact(points):
        values = [float(v) for v in values]
        points = tuple(float(x) for x in points)
    b, r = gap_weights(points)
    phi = tuple(attach(p, b, r) for p in values)
    mult = [1] * len(points)
    for k in phi:
        mult[k - 1] += 1
    weighted_b = sum(m * bk for m, bk in zip(mult, b))
    weighted_r = sum(m * rk for m, rk in zip(mult, r))
    m_norm = max(weighted_b, weighted_r)
    n = len(values)
    used_b = sum(b[k - 1] for k in phi)
    used_r = sum(r[k - 1] for k in phi)
    blue = tuple((b[k - 1] + (m_norm - used_b) / n) / m_norm for k in phi)
    red = tuple((r[k - 1] + (m_norm - used_r) / n) / m_norm for k in phi)
    return FlexibleScheme(
        probs=tuple(values),
        landmarks=lms,
        phi=phi,
        b_weights=tuple(b),
        r_weights=tuple(r),
        m_norm=m_norm,
        blue_votes=blue,
        red_votes=red,
        weighted_b=weighted_b,
        weighted_r=weighted_r,
    )


def margin_floor(scheme: FlexibleScheme, i: int, j: int):
    """Guaranteed lower bound on ``margin(i, j)``: ``|phi_i - phi_j| / M`` when
    urn ``i`` sits exactly on a landmark, else ``max(|phi_i - phi_j| - 1, 0) / M``."""
    d = abs(scheme.phi[i - 1] - scheme.phi[j - 1])
    on_landmark = scheme.probs[i - 1] in scheme.landmarks.points
    steps = d if on_landmark else max(d - 1, 0)
    return steps / scheme.m_norm


def m_bounds(lms: LandmarkSet, n: int) -> tuple:
    """Bracket for the weighted ``M`` of any scheme on ``lms`` with ``n`` urns:
    ``(n'-1)(n+n')/(81 eps) <= M <= 2(n'-1)(n+n')/eps``."""
    size = lms.size
    core = (size - 1) * (n + size) / lms.eps_lm
    if isinstance(core, Fraction):
        return core / 81, 2 * core
    return core / 81.0, 2.0 * core
