"""
Matrix games, exactly
=====================

Solve small zero-sum matrix games with rational arithmetic, list every
optimal strategy, and decide whether a game is completely mixed.
"""

from fractions import Fraction

from cmstoch import column_shift, equalizer_check, kaplansky_value, lemma2_reduce, solve_matrix_game


def show(vertices):
    return [[str(p) for p in v] for v in vertices]


# A symmetric game: both players mix 50/50 and the value is 3/2
A = [[1, 2], [2, 1]]
sol = solve_matrix_game(A)
print("value of A:", sol.value)
print("player 1 optima:", show(sol.p1_vertices))
print("player 2 optima:", show(sol.p2_vertices))
print("completely mixed:", sol.completely_mixed)

# for a completely mixed game the determinant formula gives the same number
print("det / cofactor sum:", kaplansky_value(A))

# Shift the columns by b = (1, 2).  The shifted game has a whole edge of
# optimal strategies for player 2, so it is no longer completely mixed.
C = column_shift(A, [1, 2])
sc = solve_matrix_game(C)
print()
print("C =", [[str(x) for x in row] for row in C])
print("value of C:", sc.value)
print("player 2 optimal vertices:", show(sc.p2_vertices))
print("why not completely mixed:", sc.certificate["reason"])

# The reduction from a shifted game back to A only works when the shifted
# game is itself completely mixed
print("reduction from C applicable:", lemma2_reduce(A, [1, 2]).applicable)
red = lemma2_reduce([[2, 1], [1, 2]], [1, 1])
print("reduction for [[2,1],[1,2]] + (1,1): delta =", red.delta, "consistent:", red.consistent)

# An optimal strategy of player 1 against a completely mixed opponent
# equalizes every column
half = Fraction(1, 2)
print()
print("equalizer check:", equalizer_check(A, (half, half), (half, half)))
