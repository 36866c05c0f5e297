"""Rankings with prescribed pairwise odds, and a Condorcet election built on them."""

import numpy as np

from urnvote.condorcet import (
    build_sampler,
    catalan_rhs,
    coeff_b,
    condorcet_budget,
    conjecture_scan,
    diagonal_sum,
    rank_draws,
    sample_draws,
)
from urnvote.engine import SimulationConfig, estimate_failure
from urnvote.model import lower_bound_instance

# the first corner of the coefficient table, exact
for k in range(6):
    print(" ".join(f"{str(coeff_b(k, l)):>8}" for l in range(6)))

# diagonal sums land on the closed form
print([diagonal_sum(n) == catalan_rhs(n + 1) for n in range(12)])

# how the truncated density behaves across p
for row in conjecture_scan([0.6, 0.75, 0.9, 0.95]):
    print(f"p={row.p:.2f} min density {row.min_beta:.4f} mass residual {row.mass_residual:.1e} last term {row.tail_at_K:.1e}")

# urn i ranks below urn j with probability min(1, 1/(p_i + p_j))
ps = [0.2, 0.55, 0.7, 0.85]
ranks = rank_draws(sample_draws([build_sampler(p) for p in ps], np.random.default_rng(0), 50_000))
for i in range(len(ps)):
    for j in range(i + 1, len(ps)):
        print(f"p=({ps[i]}, {ps[j]}): {(ranks[:, i] < ranks[:, j]).mean():.4f} vs {min(1, 1 / (ps[i] + ps[j])):.4f}")

# a full election on the hard family
inst = lower_bound_instance(4, 0.15)
m = condorcet_budget(inst, 0.1)
stats = estimate_failure(SimulationConfig("condorcet", inst, trials=200, seed=2, m=m))
print(f"\nm = {m}, worst-case failure {stats.rate:.3f}")
stats = estimate_failure(SimulationConfig("condorcet", inst, trials=200, seed=2, m=m // 50))
print(f"m = {m // 50}, worst-case failure {stats.rate:.3f}")
