"""Why a proper scoring rule makes a wasteful voting strategy."""

from fractions import Fraction as F

from urnvote.model import lower_bound_instance
from urnvote.scoring import brier_pair, induced_kernel, induced_strategy, is_proper_on_grid, efficiency_experiment
from urnvote.plurality2 import build_plurality_scheme, expected_shares

pair = brier_pair()
print("Brier pair proper on the grid:", is_proper_on_grid(pair))

for eps in (F(1, 5), F(1, 10), F(1, 20)):
    inst = lower_bound_instance(4, eps)
    score = induced_kernel(induced_strategy(inst, pair), inst)
    plur = build_plurality_scheme(inst)
    gap_score = min(score[1][1] - v for j, v in enumerate(score[1]) if j != 1)
    gap_plur = min(expected_shares(plur, inst, 2)[1] - v for j, v in enumerate(expected_shares(plur, inst, 2)) if j != 1)
    # scoring margins shrink like eps^2, gap weights like eps
    print(f"eps={float(eps):.2f}  scoring margin {float(gap_score):.2e}  gap-weight margin {float(gap_plur):.2e}")

rows = efficiency_experiment(4, [F(1, 5), F(1, 10), F(1, 20)], target_success=0.9, trials=300, seed=0)
for r in rows:
    print(f"eps={r['eps']:.2f}  scoring m={r['m_scoring']:>8d}  gap weights m={r['m_plurality']:>6d}  ratio {r['ratio']:.1f}")
