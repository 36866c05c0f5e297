"""Plurality with two ball colors: build the gap-weight scheme, inspect it, run elections."""

from fractions import Fraction as F

from urnvote import build_plurality_scheme, expected_shares, lower_bound_instance, make_bichromatic
from urnvote.engine import SimulationConfig, estimate_failure
from urnvote.plurality2 import margin, plurality_budget

# three urns with a quarter, a half and three quarters blue balls
inst = make_bichromatic([F(1, 4), F(1, 2), F(3, 4)])
s = build_plurality_scheme(inst)
print("M =", s.m_norm)
print("vote on blue:", [str(v) for v in s.blue_votes])
print("vote on red: ", [str(v) for v in s.red_votes])

# each voter's chance of naming each urn, for every possible true urn
for t in range(1, inst.n + 1):
    print(f"true urn {t}:", [str(v) for v in expected_shares(s, inst, t)])

# margins never drop below |i - j| / M
for i in range(1, 4):
    for j in range(1, 4):
        if i != j:
            print(f"margin({i},{j}) = {margin(s, inst, i, j)}  floor = {F(abs(i - j)) / s.m_norm}")

# the evenly spaced family around 1/2 is the hard case
hard = lower_bound_instance(5, F(1, 5))
m = plurality_budget(hard, eta=0.1)
print("\nI(5, 1/5) budget for 10% failure:", m)
stats = estimate_failure(SimulationConfig("plurality", hard, trials=500, seed=1, m=m))
print("worst-case failure rate at that budget:", stats.rate, "ci95", stats.ci95)

# shrink the electorate until the vote stops being reliable
for frac in (0.1, 0.01, 0.001):
    small = max(1, int(m * frac))
    st = estimate_failure(SimulationConfig("plurality", hard, trials=500, seed=1, m=small))
    print(f"m = {small:>7d}: failure {st.rate:.3f}")
