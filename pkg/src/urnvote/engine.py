"""Seeded Monte Carlo elections.

Every trial owns a Philox stream keyed by ``(seed, stream..., true_urn, trial)``,
so results do not depend on how trials are spread over worker threads.
Vote tallies are drawn in one shot from their sufficient statistic
(multinomial counts, or the number of blue draws) rather than voter by voter.
Ties never count as a win.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from urnvote.condorcet.ballots import (
    CondorcetSamplers,
    beats_counts,
    build_condorcet_samplers,
    condorcet_budget,
    sample_draws,
)
from urnvote.condorcet.sampler import DEFAULT_TERMS
from urnvote.cumulative import CumulativeScheme, cumulative_budget, scheme_for
from urnvote.model import BichromaticInstance, MulticolorInstance, check_urn
from urnvote.multicolor import multicolor_budget, multicolor_vote_kernel
from urnvote.plurality2 import build_plurality_scheme, expected_shares, plurality_budget
from urnvote.scoring import induced_kernel, induced_strategy

SYSTEMS = ("plurality", "cumulative", "condorcet", "scoring", "multicolor")
CHUNK = 64


@dataclass(frozen=True)
class TrialOutcome:
    winner: int | None
    true_urn: int
    success: bool


@dataclass(frozen=True)
class TrialStats:
    system: str
    m: int
    trials: int
    failures: int
    rate: float
    ci95: tuple
    seed: int
    true_urn: int | None = None  # None: worst case over every urn
    per_urn_failures: tuple = field(default=())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ci95"] = list(self.ci95)
        d["per_urn_failures"] = list(self.per_urn_failures)
        return d


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for one trial, keyed by a tuple of counters."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def wilson_interval(failures: int, trials: int) -> tuple[float, float]:
    ci = stats.binomtest(failures, trials).proportion_ci(confidence_level=0.95, method="wilson")
    return float(ci.low), float(ci.high)


def unique_argmax(values: Sequence) -> int | None:
    """1-based index of the strict maximum, or ``None`` on a tie."""
    best = max(values)
    hits = [i for i, v in enumerate(values, start=1) if v == best]
    return hits[0] if len(hits) == 1 else None


def _as_distribution(row) -> np.ndarray:
    arr = np.array([float(v) for v in row])
    if (arr < 0).any() or not math.isclose(arr.sum(), 1.0, abs_tol=1e-9):
        raise ValueError("kernel row is not a probability distribution")
    return arr / arr.sum()


def _outcome(winner, true_urn, same: Callable[[int, int], bool] | None) -> TrialOutcome:
    if winner is None:
        return TrialOutcome(None, true_urn, False)
    ok = winner == true_urn or (same is not None and same(winner, true_urn))
    return TrialOutcome(winner, true_urn, ok)


def run_trial_plurality(kernel_row, m: int, rng: np.random.Generator, true_urn: int = 1, same=None) -> TrialOutcome:
    """Tally ``V ~ Multinomial(m, kernel_row)``; the strict leader wins.

    ``same(a, b)`` may declare two distinct urns interchangeable (identical
    distributions); electing such a twin still counts as success.
    """
    probs = kernel_row if isinstance(kernel_row, np.ndarray) else _as_distribution(kernel_row)
    votes = rng.multinomial(m, probs)
    return _outcome(unique_argmax(votes.tolist()), true_urn, same)


def run_trial_cumulative(scheme: CumulativeScheme, p_true, m: int, rng: np.random.Generator, true_urn: int = 1) -> TrialOutcome:
    """``m_b ~ Binomial(m, p_true)`` blue ballots, the rest red; scores kept exact."""
    m_blue = int(rng.binomial(m, float(p_true)))
    scores = scheme.scores(m_blue, m - m_blue)
    return _outcome(unique_argmax(scores), true_urn, None)


def condorcet_winner(counts: np.ndarray, m: int) -> int | None:
    """Urn (1-based) beating every other by a strict majority, else ``None``."""
    n = counts.shape[0]
    for i in range(n):
        if all(2 * counts[i, j] > m for j in range(n) if j != i):
            return i + 1
    return None


def run_trial_condorcet(
    inst: BichromaticInstance, true_urn: int, m: int, samplers: CondorcetSamplers, rng: np.random.Generator
) -> TrialOutcome:
    m_blue = int(rng.binomial(m, float(inst.p(true_urn))))
    counts = beats_counts(sample_draws(samplers.blue, rng, m_blue))
    counts += beats_counts(sample_draws(samplers.red, rng, m - m_blue))
    return _outcome(condorcet_winner(counts, m), true_urn, None)


def _run_many(run_one: Callable[[int], TrialOutcome], trials: int, workers: int) -> int:
    """Number of failed trials among ``0..trials-1``."""

    def chunk(start):
        return sum(not run_one(t).success for t in range(start, min(start + CHUNK, trials)))

    starts = range(0, trials, CHUNK)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(chunk, starts))
    return sum(chunk(s) for s in starts)


def kernel_failures(kernel, true_urn: int, m: int, trials: int, seed: int, stream=(), workers: int = 1, same=None) -> int:
    row = _as_distribution(kernel[true_urn - 1])

    def one(t):
        return run_trial_plurality(row, m, trial_rng(seed, *stream, true_urn, t), true_urn, same)

    return _run_many(one, trials, workers)


def worst_case_failure(kernel, m: int, trials: int, seed: int, stream=(), workers: int = 1) -> float:
    """Largest failure rate over true urns for a vote kernel."""
    n = len(kernel)
    return max(kernel_failures(kernel, i, m, trials, seed, stream, workers) for i in range(1, n + 1)) / trials


def minimal_voters(failure_at: Callable[[int], float], target_success: float, limit: int = 2**40) -> int:
    """Smallest ``m`` with ``1 - failure_at(m) >= target_success``: double from 1,
    then bisect between the last failing and first passing power of two."""
    if not 0 < target_success <= 1:
        raise ValueError("target success must lie in (0, 1]")

    def ok(m):
        return 1 - failure_at(m) >= target_success

    hi = 1
    while not ok(hi):
        hi *= 2
        if hi > limit:
            raise RuntimeError(f"no electorate up to {limit} reaches the target")
    lo = hi // 2
    if hi == 1:
        return 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass
class SimulationConfig:
    system: str
    instance: BichromaticInstance | MulticolorInstance
    trials: int
    seed: int
    m: int | None = None
    eta: float | None = None
    true_urn: int | None = None
    scale: float = 1.0
    workers: int = 1
    terms: int = DEFAULT_TERMS

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise ValueError(f"unknown system {self.system!r}; choose from {', '.join(SYSTEMS)}")
        if (self.m is None) == (self.eta is None):
            raise ValueError("set exactly one of m and eta")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.m is not None and self.m < 1:
            raise ValueError("m must be at least 1")
        multi = isinstance(self.instance, MulticolorInstance)
        if multi != (self.system == "multicolor"):
            raise ValueError(f"system {self.system!r} does not match the instance type")
        if self.true_urn is not None:
            check_urn(self.true_urn, self.instance.n)


def voter_budget(config: SimulationConfig) -> int:
    if config.m is not None:
        return config.m
    inst, eta = config.instance, config.eta
    if config.system == "plurality":
        return plurality_budget(inst, eta, scale=config.scale)
    if config.system == "cumulative":
        return cumulative_budget(inst, eta)
    if config.system == "condorcet":
        return condorcet_budget(inst, eta)
    if config.system == "multicolor":
        return multicolor_budget(inst, eta, scale=config.scale)
    raise ValueError("the scoring scheme has no proven budget; pass m explicitly")


def system_kernel(system: str, inst):
    """Per-voter vote distribution rows for the single-vote systems."""
    if system == "plurality":
        s = build_plurality_scheme(inst)
        return [expected_shares(s, inst, i) for i in range(1, inst.n + 1)]
    if system == "scoring":
        return induced_kernel(induced_strategy(inst), inst)
    if system == "multicolor":
        return multicolor_vote_kernel(inst)
    raise ValueError(f"{system} does not reduce to a vote kernel")


def _urn_runner(config: SimulationConfig, m: int) -> Callable[[int], Callable[[int], TrialOutcome]]:
    inst, seed = config.instance, config.seed
    if config.system == "cumulative":
        scheme = scheme_for(inst)
        return lambda u: lambda t: run_trial_cumulative(scheme, inst.p(u), m, trial_rng(seed, u, t), u)
    if config.system == "condorcet":
        samplers = build_condorcet_samplers(inst, config.terms)
        return lambda u: lambda t: run_trial_condorcet(inst, u, m, samplers, trial_rng(seed, u, t))
    kernel = system_kernel(config.system, inst)
    rows = [_as_distribution(r) for r in kernel]
    same = None
    if config.system == "multicolor":
        same = lambda a, b: inst.rows[a - 1] == inst.rows[b - 1]  # noqa: E731
    return lambda u: lambda t: run_trial_plurality(rows[u - 1], m, trial_rng(seed, u, t), u, same)


def estimate_failure(config: SimulationConfig) -> TrialStats:
    """Failure rate with a Wilson 95% interval.

    With ``true_urn`` unset every urn is tried as the true one and the worst
    rate is reported.
    """
    m = voter_budget(config)
    runner = _urn_runner(config, m)
    urns = [config.true_urn] if config.true_urn else list(range(1, config.instance.n + 1))
    per_urn = tuple(_run_many(runner(u), config.trials, config.workers) for u in urns)
    failures = max(per_urn)
    return TrialStats(
        system=config.system,
        m=m,
        trials=config.trials,
        failures=failures,
        rate=failures / config.trials,
        ci95=wilson_interval(failures, config.trials),
        seed=config.seed,
        true_urn=config.true_urn,
        per_urn_failures=per_urn,
    )
