"""
Completely mixed stochastic games
=================================

Which games force every optimal strategy to use every action?  The answer
can differ between the discounted and the undiscounted game.
"""

from cmstoch import (beta_threshold_search, check_cm_undiscounted, theorem11_verify, theorem13_verify,
                     vanishing_discount)
from cmstoch.fixtures import load_fixture

for name in ("example9", "example14", "example15"):
    game = load_fixture(name)
    thr = beta_threshold_search(game)
    cmu = check_cm_undiscounted(game)
    print(f"{name}: discounted CM at", [str(b) for b, ok in thr.flags if ok],
          "| undiscounted CM:", cmu.completely_mixed)
    if cmu.witness:
        w = cmu.witness
        print("   optimal strategy avoiding an action:", f"player {w['player']}, s{w['state'] + 1},",
              [[str(p) for p in vec] for vec in w["strategy"]])

# The discounted strategies converge as beta -> 1, and the limit pair is
# optimal in the undiscounted game
trace = vanishing_discount(load_fixture("example9"))
print()
print("status:", trace.status)
for b, u in list(zip(trace.betas, trace.normalized))[::5]:
    print(f"  beta=1-{1 - b}: (1-beta) v_beta = {[float(x) for x in u]}")
print("limit value:", [str(v) for v in trace.limit_values])
print("limit f:", [[str(p) for p in vec] for vec in trace.f0])

# symmetric stage games of a CM game are CM as matrix games
t11 = theorem11_verify(load_fixture("example14"))
print()
print("symmetric check: applicable", t11.applicable, "passed", t11.passed)

# nonzero undiscounted value shows up in the discounted values; the
# converse fails in the three-state game
t13 = theorem13_verify(load_fixture("example15"))
print("undiscounted values:", [str(v) for v in t13.values])
print("v_beta(s1) on the grid:", [str(v[0]) for v in t13.discounted_values])
print("converse violations:", [f"s{s + 1}" for s in t13.converse_violations])
