"""Ranking ballots for Condorcet elections on two-color urns.

A voter who draws blue ranks urns by independent draws ``X_{p_i}``; on red
they use ``X_{1 - p_i}``. Higher draws rank higher. Ties (probability zero
for distinct ``p``) go to the larger urn index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from urnvote.condorcet.sampler import DEFAULT_TERMS, XpSampler, build_sampler
from urnvote.model import BichromaticInstance, require_strict

CONDORCET_CONSTANT = 150


@dataclass(frozen=True)
class PermutationBallot:
    """``ranking[i]`` is the rank of urn ``i+1``; ``n - 1`` is the favourite."""

    ranking: tuple

    def __post_init__(self):
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError(f"not a permutation: {self.ranking}")

    def order(self) -> list[int]:
        """Urns (1-based) from most to least preferred."""
        return [i + 1 for i in sorted(range(len(self.ranking)), key=lambda i: -self.ranking[i])]

    def prefers(self, i: int, j: int) -> bool:
        return self.ranking[i - 1] > self.ranking[j - 1]


def rank_draws(draws: np.ndarray) -> np.ndarray:
    """Ranks of each row of ``draws`` (shape ``(voters, n)``), ties broken by index."""
    order = np.argsort(draws, axis=-1, kind="stable")
    ranks = np.empty_like(order)
    np.put_along_axis(ranks, order, np.broadcast_to(np.arange(draws.shape[-1]), order.shape), axis=-1)
    return ranks


def _check_distinct(samplers: Sequence[XpSampler]) -> None:
    ps = [s.p for s in samplers]
    if len(set(ps)) != len(ps):
        raise ValueError("samplers need pairwise distinct p values")


def sample_permutation(samplers: Sequence[XpSampler], rng: np.random.Generator) -> PermutationBallot:
    _check_distinct(samplers)
    draws = np.array([s.sample(rng, 1)[0] for s in samplers])
    return PermutationBallot(tuple(int(r) for r in rank_draws(draws[None, :])[0]))


def sample_draws(samplers: Sequence[XpSampler], rng: np.random.Generator, voters: int) -> np.ndarray:
    """``(voters, n)`` matrix of independent draws, one column per sampler."""
    if voters == 0:
        return np.zeros((0, len(samplers)))
    return np.stack([s.sample(rng, voters) for s in samplers], axis=1)


def beats_counts(draws: np.ndarray) -> np.ndarray:
    """``N[i, j]``: number of rows ranking urn ``i`` above urn ``j``."""
    n = draws.shape[1]
    counts = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            above = draws[:, i] > draws[:, j]
            if i > j:
                above |= draws[:, i] == draws[:, j]
            counts[i, j] = int(above.sum())
    return counts


@dataclass(frozen=True)
class CondorcetSamplers:
    """Blue samplers on ``p_i`` and red samplers on ``1 - p_i``, built once per instance."""

    blue: tuple
    red: tuple

    @property
    def n(self) -> int:
        return len(self.blue)


def build_condorcet_samplers(inst: BichromaticInstance, terms: int = DEFAULT_TERMS) -> CondorcetSamplers:
    require_strict(inst)
    probs = [float(p) for p in inst.probs]
    cache: dict[float, XpSampler] = {}

    def get(p):
        if p not in cache:
            cache[p] = build_sampler(p, terms)
        return cache[p]

    blue = tuple(get(p) for p in probs)
    red = tuple(get(1.0 - p) for p in probs)
    _check_distinct(blue)
    _check_distinct(red)
    return CondorcetSamplers(blue=blue, red=red)


def condorcet_ballot(
    samplers: CondorcetSamplers, color_draw: str, rng: np.random.Generator
) -> PermutationBallot:
    if color_draw not in ("blue", "red"):
        raise ValueError("color_draw must be 'blue' or 'red'")
    side = samplers.blue if color_draw == "blue" else samplers.red
    return sample_permutation(side, rng)


def _above(a: float, b: float) -> float:
    """``Pr[X_a > X_b]`` for ``a != b``."""
    low_below = min(1.0, 1.0 / (a + b))
    return low_below if a > b else 1.0 - low_below


def beat_probability(inst: BichromaticInstance, i: int, j: int) -> float:
    """Chance that one voter ranks the true urn ``i`` above urn ``j``."""
    pi, pj = float(inst.p(i)), float(inst.p(j))
    return pi * _above(pi, pj) + (1 - pi) * _above(1 - pi, 1 - pj)


def condorcet_budget(inst: BichromaticInstance, eta: float) -> int:
    """``ceil(150 / eps^2 * ln(3 / eta))``."""
    if not 0 < eta < 1:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    eps = float(inst.eps)
    if eps <= 0:
        raise ValueError("instance separation must be positive")
    return math.ceil(CONDORCET_CONSTANT / eps**2 * math.log(3 / eta))
