"""
Limiting-average payoffs
========================

Cesaro limits of Markov chains, exact undiscounted values and the
optimality check for a stationary pair.
"""

from fractions import Fraction

import numpy as np

from cmstoch import cesaro_limit, make_strategy, solve_undiscounted, verify_optimal_undiscounted
from cmstoch.fixtures import load_fixture

# A periodic chain has no limit of powers, but the averages converge
Q = [[0, 1], [1, 0]]
print("Q* =", cesaro_limit(Q))

# one transient state feeding two absorbing ones
h, q = Fraction(1, 2), Fraction(1, 4)
Q = [[h, q, q], [0, 1, 0], [0, 0, 1]]
S = cesaro_limit(Q)
print("Q* =", [[str(x) for x in row] for row in S])
P = np.linalg.matrix_power(np.array(Q, dtype=float), 200)
print("Q^200 (float) =", P.round(6).tolist())

# Undiscounted game: player 1 may do anything in the transient state s1
game = load_fixture("example9")
g = make_strategy(game, [[h, h], [h, h]], 2)
for row in ([1, 0], [0, 1]):
    f = make_strategy(game, [row, [h, h]], 1)
    check = verify_optimal_undiscounted(game, f, g)
    print(f"f(s1)={row}: optimal={check.optimal} value={[str(v) for v in check.value]}")

# a wrong choice in the recurrent state s2 is caught with the exact gap
f = make_strategy(game, [[1, 0], [1, 0]], 1)
check = verify_optimal_undiscounted(game, f, g)
print("f(s2)=(1,0): optimal", check.optimal, "player 2 saves", [str(x) for x in check.gap_p2])

sol = solve_undiscounted(load_fixture("example15"))
print("three-state game value:", [str(v) for v in sol.values])
