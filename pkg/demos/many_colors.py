"""More than two colors: one two-color view per (color, resolution), averaged."""

from fractions import Fraction as F

from urnvote.model import make_multicolor
from urnvote.multicolor import (
    build_ct_landmarks,
    ct_properties,
    kernel_margin_floor,
    level_distribution,
    multicolor_budget,
    multicolor_vote_kernel,
)
from urnvote.engine import SimulationConfig, estimate_failure

inst = make_multicolor(
    [
        [F(1, 2), F(1, 4), F(1, 4)],
        [F(1, 4), F(1, 2), F(1, 4)],
        [F(1, 3), F(1, 3), F(1, 3)],
    ]
)
dist = level_distribution(inst.colors)
print("levels 0..T with T =", dist.T, "weights", [str(w) for w in dist.level_probs])

ct = build_ct_landmarks(inst, 1, 1)
print("color 1, level 1 marks:", [str(w) for w in ct.marks], "grid size", ct.n_ct)
print("construction checks:", ct_properties(ct, inst.eps_l1))

kernel = multicolor_vote_kernel(inst)
floor = kernel_margin_floor(inst)
for i, row in enumerate(kernel):
    print(f"true urn {i + 1}:", [f"{float(v):.5f}" for v in row])
print("smallest margin / proven floor:",
      min(float((kernel[i][i] - kernel[i][j]) / floor) for i in range(3) for j in range(3) if i != j))

# the proven budget is astronomically large; scale it down for a desk run
print("proven budget:", f"{multicolor_budget(inst, 0.1):.3e}")
stats = estimate_failure(SimulationConfig("multicolor", inst, trials=300, seed=0, eta=0.1, scale=1e-9))
print(f"scaled budget m={stats.m}: worst-case failure {stats.rate:.3f}")
