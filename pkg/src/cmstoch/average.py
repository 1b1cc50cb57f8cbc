"""Limiting-average (undiscounted) payoffs for player-2 controlled games.

The long-run behaviour of a stationary pair ``(f, g)`` only depends on the
chain ``Q(g)``: the payoff is ``Q*(g) r(f, g)`` where ``Q*`` is the Cesaro
limit of the powers of ``Q(g)``.  ``Q*`` is computed exactly from the
recurrent-class decomposition; power iteration would not even converge on
periodic chains.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import SupportVerificationError
from .lp import linprog
from .model import require_player_two, reward_vector, transition_matrix

ZERO = Fraction(0)


def _reachable(Q):
    K = len(Q)
    out = []
    for s in range(K):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for t in range(K):
                if Q[u][t] > 0 and t not in seen:
                    seen.add(t)
                    stack.append(t)
        out.append(frozenset(seen))
    return out


def recurrent_classes(Q):
    """Closed communicating classes of ``Q``, each as a sorted list, ordered by first state."""
    reach = _reachable(Q)
    classes = []
    for s in range(len(Q)):
        if all(s in reach[t] for t in reach[s]):
            cls = sorted(reach[s])
            if cls not in classes:
                classes.append(cls)
    classes.sort()
    return classes


def cesaro_limit(Q):
    """Exact ``Q* = lim (1/(N+1)) sum_{n<=N} Q^n`` of a row-stochastic matrix.

    Each recurrent class contributes its stationary distribution; transient
    states spread over the classes according to their absorption
    probabilities.
    """
    Q = [[Fraction(p) for p in row] for row in Q]
    K = len(Q)
    classes = recurrent_classes(Q)
    recurrent = {s for cls in classes for s in cls}
    transient = [s for s in range(K) if s not in recurrent]
    Qstar = [[ZERO] * K for _ in range(K)]
    for cls in classes:
        n = len(cls)
        # pi (Q_CC - I) = 0 and sum(pi) = 1, written column-wise
        A = [[Q[cls[a]][cls[b]] - (1 if a == b else 0) for a in range(n)] for b in range(n)]
        A.append([Fraction(1)] * n)
        pi = linalg.solve(A, [ZERO] * n + [Fraction(1)])
        for s in cls:
            for b, t in enumerate(cls):
                Qstar[s][t] = pi[b]
        if transient:
            M = [[(1 if a == b else 0) - Q[a][b] for b in transient] for a in transient]
            rhs = [sum((Q[a][t] for t in cls), ZERO) for a in transient]
            absorb = linalg.solve(M, rhs)
            for a, p in zip(transient, absorb):
                for b, t in enumerate(cls):
                    Qstar[a][t] = p * pi[b]
    return Qstar


def limiting_average_payoff(game, f, g):
    """``Phi(f, g) = Q*(g) r(f, g)`` per starting state."""
    require_player_two(game)
    Qstar = cesaro_limit(transition_matrix(game, g))
    return tuple(linalg.matvec(Qstar, list(reward_vector(game, f, g))))


def best_response_value_p1(game, g):
    """``max_f Phi(f, g)``.

    Player 1 does not move the chain, so ``Q*(g)`` is fixed and the best
    reply is a per-state maximum of ``R(s) g(s)``.
    """
    require_player_two(game)
    Qstar = cesaro_limit(transition_matrix(game, g))
    best = [max(sum((R[i][j] * g[s][j] for j in range(len(R[0]))), ZERO) for i in range(len(R)))
            for s, R in enumerate(game.payoff)]
    return tuple(linalg.matvec(Qstar, best))


def _evaluate(cost, trans, policy):
    """Gain and bias of a pure policy (bias pinned to 0 at each class's first state)."""
    K = len(policy)
    P = [list(trans[s][policy[s]]) for s in range(K)]
    c = [cost[s][policy[s]] for s in range(K)]
    gain = linalg.matvec(cesaro_limit(P), c)
    A = [[(1 if s == t else 0) - P[s][t] for t in range(K)] for s in range(K)]
    b = [c[s] - gain[s] for s in range(K)]
    for cls in recurrent_classes(P):
        A.append([Fraction(int(t == cls[0])) for t in range(K)])
        b.append(ZERO)
    bias = linalg.solve(A, b)
    return gain, bias


def _improve(choices, current):
    if current in choices:
        return current
    return min(choices)


def average_cost_policy_iteration(cost, trans):
    """Multichain average-cost policy iteration (minimization).

    ``cost[s][a]`` is the one-step cost and ``trans[s][a]`` the next-state
    distribution.  Improvement is lexicographic: first on the gain, then on
    the bias among gain-minimizing actions; the current action is kept on
    ties, otherwise the lowest index wins.

    Returns ``(gain, policy)``.
    """
    K = len(cost)
    policy = [0] * K
    while True:
        gain, bias = _evaluate(cost, trans, policy)
        new = list(policy)
        for s in range(K):
            scores = [sum((p * gn for p, gn in zip(trans[s][a], gain)), ZERO)
                      for a in range(len(cost[s]))]
            lo = min(scores)
            new[s] = _improve([a for a, x in enumerate(scores) if x == lo], policy[s])
        if new == policy:
            for s in range(K):
                scores = {a: cost[s][a] + sum((p * h for p, h in zip(trans[s][a], bias)), ZERO)
                          for a in range(len(cost[s]))
                          if sum((p * gn for p, gn in zip(trans[s][a], gain)), ZERO) == gain[s]}
                lo = min(scores.values())
                new[s] = _improve([a for a, x in scores.items() if x == lo], policy[s])
            if new == policy:
                return tuple(gain), tuple(policy)
        policy = new


def best_response_value_p2(game, f):
    """``min_g Phi(f, g)``: player 2 solves an average-cost MDP against ``f``."""
    require_player_two(game)
    cost = [[sum((f[s][i] * R[i][j] for i in range(len(R))), ZERO) for j in range(len(R[0]))]
            for s, R in enumerate(game.payoff)]
    trans = [[game.q(s, j) for j in range(game.actions_p2[s])] for s in range(game.n_states)]
    gain, _ = average_cost_policy_iteration(cost, trans)
    return gain


@dataclass(frozen=True)
class UndiscountedCheck:
    optimal: bool
    value: tuple
    gap_p1: tuple
    gap_p2: tuple

    def __bool__(self):
        return self.optimal


def verify_optimal_undiscounted(game, f, g):
    """Exact test that ``(f, g)`` is an optimal stationary pair.

    ``gap_p1`` is what player 1 could gain by deviating, ``gap_p2`` what
    player 2 could save; both are zero exactly when the pair is optimal.
    """
    value = limiting_average_payoff(game, f, g)
    br1 = best_response_value_p1(game, g)
    br2 = best_response_value_p2(game, f)
    gap1 = tuple(a - b for a, b in zip(br1, value))
    gap2 = tuple(a - b for a, b in zip(value, br2))
    return UndiscountedCheck(all(x == 0 for x in gap1 + gap2), value, gap1, gap2)


# --- exact LP solution of the undiscounted single-controller game -------------

def _p1_program(game):
    """Maximize sum(v) over (v, h, f) with v a lower bound on player 2's best reply to f."""
    K = game.n_states
    m1, m2 = game.actions_p1, game.actions_p2
    f_off = []
    k = 2 * K
    for s in range(K):
        f_off.append(k)
        k += m1[s]
    n = k
    A_ub, b_ub = [], []
    for s in range(K):
        for j in range(m2[s]):
            q = game.q(s, j)
            row = [ZERO] * n
            row[s] += 1
            for t in range(K):
                row[t] -= q[t]
            A_ub.append(row)
            b_ub.append(0)
            row = [ZERO] * n
            row[s] += 1
            row[K + s] += 1
            for t in range(K):
                row[K + t] -= q[t]
            for i in range(m1[s]):
                row[f_off[s] + i] -= game.payoff[s][i][j]
            A_ub.append(row)
            b_ub.append(0)
    A_eq = []
    for s in range(K):
        row = [0] * n
        for i in range(m1[s]):
            row[f_off[s] + i] = 1
        A_eq.append(row)
    c = [-1] * K + [0] * (n - K)
    res = linprog(c, A_ub, b_ub, A_eq, [1] * K, free=range(2 * K))
    if not res.success:
        raise SupportVerificationError(f"undiscounted player-1 program is {res.status}")
    values = tuple(res.x[:K])
    f = tuple(tuple(res.x[f_off[s]:f_off[s] + m1[s]]) for s in range(K))
    return values, f


def _p2_program(game):
    """Dual program: occupation measures (x, y) give player 2's optimal strategy."""
    K = game.n_states
    m1, m2 = game.actions_p1, game.actions_p2
    x_off, y_off = [], []
    k = 0
    for s in range(K):
        x_off.append(k)
        k += m2[s]
    for s in range(K):
        y_off.append(k)
        k += m2[s]
    z_off = k
    n = k + K
    A_eq, b_eq = [], []
    for t in range(K):
        row = [ZERO] * n
        for j in range(m2[t]):
            row[x_off[t] + j] += 1
            row[y_off[t] + j] += 1
        for s in range(K):
            for j in range(m2[s]):
                row[y_off[s] + j] -= game.q(s, j)[t]
        A_eq.append(row)
        b_eq.append(1)
    for t in range(K):
        row = [ZERO] * n
        for j in range(m2[t]):
            row[x_off[t] + j] += 1
        for s in range(K):
            for j in range(m2[s]):
                row[x_off[s] + j] -= game.q(s, j)[t]
        A_eq.append(row)
        b_eq.append(0)
    A_ub, b_ub = [], []
    for s in range(K):
        for i in range(m1[s]):
            row = [ZERO] * n
            for j in range(m2[s]):
                row[x_off[s] + j] = game.payoff[s][i][j]
            row[z_off + s] = Fraction(-1)
            A_ub.append(row)
            b_ub.append(0)
    c = [0] * z_off + [1] * K
    res = linprog(c, A_ub, b_ub, A_eq, b_eq, free=range(z_off, n))
    if not res.success:
        raise SupportVerificationError(f"undiscounted player-2 program is {res.status}")
    g = []
    for s in range(K):
        x = res.x[x_off[s]:x_off[s] + m2[s]]
        y = res.x[y_off[s]:y_off[s] + m2[s]]
        w = x if sum(x) > 0 else y
        total = sum(w)
        g.append(tuple(a / total for a in w))
    return res.fun, tuple(g)


def undiscounted_value(game):
    """Exact limiting-average value vector of a player-2 controlled game."""
    require_player_two(game)
    return _p1_program(game)[0]


@dataclass(frozen=True)
class UndiscountedSolution:
    values: tuple
    p1_strategy: tuple
    p2_strategy: tuple


def solve_undiscounted(game, verify=True):
    """Exact value and an optimal stationary pair, both from linear programs.

    With ``verify`` the pair is re-checked by :func:`verify_optimal_undiscounted`,
    which shares no code with the programs beyond the rational arithmetic.
    """
    require_player_two(game)
    values, f = _p1_program(game)
    total, g = _p2_program(game)
    if total != sum(values):
        raise SupportVerificationError("primal and dual undiscounted programs disagree",
                                       residual=abs(total - sum(values)))
    if verify:
        check = verify_optimal_undiscounted(game, f, g)
        if not check.optimal or check.value != values:
            raise SupportVerificationError("LP strategies failed the optimality check",
                                           residual=max(check.gap_p1 + check.gap_p2))
    return UndiscountedSolution(values, f, g)
