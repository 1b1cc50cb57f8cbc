"""beta-discounted games: payoff evaluation, Shapley iteration, exact solving.

The auxiliary (Shapley) matrix of state ``s`` at continuation values ``v``
is ``R(s)`` plus ``beta * sum_t v(t) q(t|s,i,j)`` entrywise.  The value
vector ``v_beta`` is the unique fixed point of ``v(s) = val R_beta(s)(v)``,
and the optimal stationary strategies are exactly the per-state optimal
strategies of the auxiliary games at ``v_beta``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import SupportVerificationError
from .lp import linprog
from .matrix import matrix_game_value, solve_matrix_game
from .model import require_player_two, reward_vector, transition_matrix

DEFAULT_TOL = Fraction(1, 10**9)


def as_discount(beta):
    beta = Fraction(beta)
    if not 0 <= beta < 1:
        raise ValueError(f"discount factor must lie in [0, 1), got {beta}")
    return beta


@dataclass(frozen=True)
class DiscountedSolution:
    beta: Fraction
    values: tuple
    p1_strategy: tuple
    p2_strategy: tuple
    residual: Fraction
    exact: bool
    state_solutions: tuple = field(default=(), compare=False, repr=False)
    iterations: int | None = None
    iteration_bound: int | None = None

    @property
    def p1_vertices(self):
        return tuple(sol.p1_vertices for sol in self.state_solutions)

    @property
    def p2_vertices(self):
        return tuple(sol.p2_vertices for sol in self.state_solutions)


def discounted_payoff(game, f, g, beta):
    """``I_beta(f, g)``: solves ``(I - beta Q(g)) x = r(f, g)`` exactly."""
    beta = as_discount(beta)
    Q = transition_matrix(game, g)
    K = game.n_states
    A = [[(1 if s == t else 0) - beta * Q[s][t] for t in range(K)] for s in range(K)]
    return tuple(linalg.solve(A, list(reward_vector(game, f, g))))


def auxiliary_matrix(game, s, beta, v):
    """Shapley matrix ``R_beta(s)`` at continuation values ``v``."""
    beta = as_discount(beta)
    v = [Fraction(x) for x in v]
    if len(v) != game.n_states:
        raise ValueError("value vector length does not match the number of states")
    R, T = game.payoff[s], game.transition[s]
    return tuple(
        tuple(R[i][j] + beta * sum((p * w for p, w in zip(T[i][j], v) if p), Fraction(0))
              for j in range(len(R[0])))
        for i in range(len(R))
    )


def shapley_operator(game, beta, v):
    """One step of value iteration, ``T(v)(s) = val R_beta(s)(v)``."""
    return tuple(matrix_game_value(auxiliary_matrix(game, s, beta, v)) for s in range(game.n_states))


def _sup_distance(u, w):
    return max(abs(a - b) for a, b in zip(u, w))


def _iteration_bound(game, beta, tol):
    span = max(abs(x) for R in game.payoff for row in R for x in row)
    if beta == 0 or span == 0:
        return 1
    target = float(tol * (1 - beta) ** 2 / (4 * span))
    if target >= 1:
        return 1
    return math.ceil(math.log(target) / math.log(float(beta))) + 1


def _grid(beta, tol):
    """Dyadic rounding step for the iterates, at most ``tol (1 - beta)^2 / 4``."""
    bound = tol * (1 - beta) ** 2 / 4
    k = 0
    while Fraction(1, 2**k) > bound:
        k += 1
    return Fraction(1, 2**k)


def shapley_iterate(game, beta, tol=DEFAULT_TOL, max_iter=None):
    """Value iteration from ``v = 0`` until the result is within ``tol`` of ``v_beta``.

    Stops once ``T(v)`` and ``v`` differ by at most ``tol (1 - beta) / beta``,
    which by the contraction property puts ``T(v)`` within ``tol`` of the
    fixed point whatever ``v`` is.  That lets the iterates be rounded to a
    dyadic grid, which keeps denominators small; the grid is fine enough
    that the stopping test is reached within ``iteration_bound`` steps.
    Inner matrix games are solved exactly.  Accepts games without a single
    controller.
    """
    beta = as_discount(beta)
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    bound = _iteration_bound(game, beta, tol)
    delta = _grid(beta, tol)
    v = tuple(Fraction(0) for _ in range(game.n_states))
    n = 0
    while True:
        new = shapley_operator(game, beta, v)
        n += 1
        step = _sup_distance(new, v)
        if beta == 0 or step * beta <= tol * (1 - beta):
            break
        if max_iter is not None and n >= max_iter:
            break
        v = tuple(round(x / delta) * delta for x in new)
    sols = tuple(solve_matrix_game(auxiliary_matrix(game, s, beta, v)) for s in range(game.n_states))
    return DiscountedSolution(
        beta, new,
        tuple(sol.p1_strategy for sol in sols),
        tuple(sol.p2_strategy for sol in sols),
        residual=beta * step, exact=False, state_solutions=sols,
        iterations=n, iteration_bound=bound,
    )


def discounted_lp(game, beta):
    """Exact ``v_beta`` and an optimal player-1 strategy from one linear program.

    With player 2 controlling transitions, player 1's guarantee constraints
    ``v(s) <= f(s)^T R(s) e_j + beta q(.|s,j) . v`` are linear in ``(v, f)``
    jointly, so maximizing ``sum(v)`` gives the value vector.
    """
    require_player_two(game)
    beta = as_discount(beta)
    K = game.n_states
    m1, m2 = game.actions_p1, game.actions_p2
    offsets = []
    k = K
    for s in range(K):
        offsets.append(k)
        k += m1[s]
    n = k
    A_ub = []
    for s in range(K):
        for j in range(m2[s]):
            row = [Fraction(0)] * n
            row[s] += 1
            for t, p in enumerate(game.q(s, j)):
                row[t] -= beta * p
            for i in range(m1[s]):
                row[offsets[s] + i] = -game.payoff[s][i][j]
            A_ub.append(row)
    A_eq = []
    for s in range(K):
        row = [0] * n
        for i in range(m1[s]):
            row[offsets[s] + i] = 1
        A_eq.append(row)
    res = linprog([-1] * K + [0] * (n - K), A_ub, [0] * len(A_ub), A_eq, [1] * K, free=range(K))
    if not res.success:
        raise SupportVerificationError(f"discounted program is {res.status}")
    f = tuple(tuple(res.x[offsets[s]:offsets[s] + m1[s]]) for s in range(K))
    return tuple(res.x[:K]), f


def solve_discounted_exact(game, beta):
    """Exact ``v_beta`` with a zero-residual fixed-point certificate.

    The candidate comes from :func:`discounted_lp`; it is accepted only if
    every auxiliary game at that candidate has exactly the candidate as its
    value.  Strategies are the first (lowest-index) optimal vertices of the
    auxiliary games; the full vertex sets stay available on the result.
    """
    beta = as_discount(beta)
    values, _ = discounted_lp(game, beta)
    sols = tuple(solve_matrix_game(auxiliary_matrix(game, s, beta, values)) for s in range(game.n_states))
    residual = max(abs(sol.value - v) for sol, v in zip(sols, values))
    if residual:
        raise SupportVerificationError("fixed-point certificate failed", residual=residual)
    return DiscountedSolution(
        beta, values,
        tuple(sol.p1_strategy for sol in sols),
        tuple(sol.p2_strategy for sol in sols),
        residual=Fraction(0), exact=True, state_solutions=sols,
    )


def normalized_values(sol):
    """``(1 - beta) v_beta``, comparable across discount factors."""
    return tuple((1 - sol.beta) * v for v in sol.values)
