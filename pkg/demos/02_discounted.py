"""
Discounted single-controller games
==================================

Exact discounted values from a linear program, a fixed-point certificate,
and plain Shapley value iteration for comparison.
"""

from fractions import Fraction

from cmstoch import auxiliary_matrix, shapley_iterate, solve_discounted_exact
from cmstoch.fixtures import fixture_text, load_fixture

# Game files are JSON with rationals written as strings
print(fixture_text("example9"))
game = load_fixture("example9")
print("controller:", game.controller.value)

beta = Fraction(1, 2)
sol = solve_discounted_exact(game, beta)
print("v_beta =", [str(v) for v in sol.values], "residual", sol.residual)

# the certificate: each state's auxiliary game has exactly v(s) as its value
for s in range(game.n_states):
    R = auxiliary_matrix(game, s, beta, sol.values)
    print(f"R_beta(s{s + 1}) =", [[str(x) for x in row] for row in R])

# value iteration gets within tol, with far more work
approx = shapley_iterate(game, beta, tol=Fraction(1, 10**9))
print("value iteration:", [float(v) for v in approx.values],
      f"after {approx.iterations} steps (bound {approx.iteration_bound})")

# v_beta(s1) = beta/(1-beta) + 3/2 on this game
for beta in (Fraction(3, 4), Fraction(9, 10), Fraction(99, 100)):
    v = solve_discounted_exact(game, beta).values
    print(f"beta={beta}: v(s1)={v[0]}  closed form {beta / (1 - beta) + Fraction(3, 2)}")
