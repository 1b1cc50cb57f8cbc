"""Exact solution of zero-sum matrix games.

Player 1 picks a row and maximizes, player 2 picks a column and minimizes.
The value comes from an exact simplex solve; the optimal strategy sets are
then listed completely by enumerating the vertices of the two optimal
polytopes, which is what makes "unique" and "strictly positive" decidable.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from . import linalg
from .errors import KaplanskyInapplicable, SizeGuardError
from .lp import linprog

DEFAULT_GUARD = 10**6


def enumeration_guard():
    """Largest number of candidate vertex systems we are willing to try.

    Overridable through the ``CMSTOCH_GUARD`` environment variable.
    """
    env = os.environ.get("CMSTOCH_GUARD")
    return int(env) if env else DEFAULT_GUARD


def _as_matrix(M):
    M = tuple(tuple(Fraction(x) for x in row) for row in M)
    if not M or not M[0] or any(len(r) != len(M[0]) for r in M):
        raise ValueError("payoff matrix must be non-empty and rectangular")
    return M


def _transpose(M):
    return tuple(zip(*M))


def matrix_game_value(M):
    """Exact minimax value of ``M`` (maximizer picks rows)."""
    M = _as_matrix(M)
    m, n = len(M), len(M[0])
    # variables x_0..x_{m-1} >= 0 and the free value v (last)
    c = [0] * m + [-1]
    A_ub = [[-M[i][j] for i in range(m)] + [1] for j in range(n)]
    res = linprog(c, A_ub, [0] * n, [[1] * m + [0]], [1], free=[m])
    assert res.success, res.status
    return res.x[m]


def _maximizer_vertices(M, v, guard):
    m, n = len(M), len(M[0])
    if m == 1:
        return [(Fraction(1),)] if all(a >= v for a in M[0]) else []
    # inequalities a.x >= rhs: x_i >= 0, then column payoffs >= v
    ineqs = [([Fraction(int(k == i)) for k in range(m)], Fraction(0)) for i in range(m)]
    ineqs += [([M[i][j] for i in range(m)], v) for j in range(n)]
    count = comb(len(ineqs), m - 1)
    if count > guard:
        raise SizeGuardError(
            f"vertex enumeration needs {count} candidate systems, guard is {guard}")
    ones = [Fraction(1)] * m
    found = set()
    for active in combinations(range(len(ineqs)), m - 1):
        A = [ones] + [ineqs[k][0] for k in active]
        b = [Fraction(1)] + [ineqs[k][1] for k in active]
        try:
            x = tuple(linalg.solve(A, b))
        except linalg.SingularMatrixError:
            continue
        if all(sum((a * xi for a, xi in zip(row, x)), Fraction(0)) >= rhs for row, rhs in ineqs):
            found.add(x)
    return sorted(found, reverse=True)


def enumerate_optimal_vertices(M, value, guard=None):
    """All extreme optimal strategies of both players, given the exact value.

    Returns ``(p1_vertices, p2_vertices)``, each sorted so that vertices
    weighting lower-index actions come first.
    """
    M = _as_matrix(M)
    value = Fraction(value)
    guard = enumeration_guard() if guard is None else guard
    p1 = _maximizer_vertices(M, value, guard)
    neg_t = tuple(tuple(-a for a in row) for row in _transpose(M))
    p2 = _maximizer_vertices(neg_t, -value, guard)
    return p1, p2


def _certificate(M, p1, p2):
    square = len(M) == len(M[0])
    cert = {
        "square": square,
        "p1_vertex_count": len(p1),
        "p2_vertex_count": len(p2),
        "p1_positive": [x > 0 for x in p1[0]] if len(p1) == 1 else None,
        "p2_positive": [y > 0 for y in p2[0]] if len(p2) == 1 else None,
    }
    if not square:
        reason = "matrix is not square"
    elif len(p1) != 1:
        reason = "player 1 has more than one optimal strategy"
    elif len(p2) != 1:
        reason = "player 2 has more than one optimal strategy"
    elif not all(cert["p1_positive"]):
        reason = "player 1's optimal strategy has a zero coordinate"
    elif not all(cert["p2_positive"]):
        reason = "player 2's optimal strategy has a zero coordinate"
    else:
        reason = None
    cert["reason"] = reason
    return reason is None, cert


@dataclass(frozen=True)
class MatrixGameSolution:
    value: Fraction
    p1_vertices: tuple
    p2_vertices: tuple
    completely_mixed: bool
    certificate: dict = field(compare=False)

    @property
    def p1_strategy(self):
        """Canonical optimal strategy for player 1 (first vertex)."""
        return self.p1_vertices[0]

    @property
    def p2_strategy(self):
        return self.p2_vertices[0]


def solve_matrix_game(M, guard=None):
    """Value, complete optimal vertex sets and completely-mixed certificate of ``M``."""
    M = _as_matrix(M)
    v = matrix_game_value(M)
    p1, p2 = enumerate_optimal_vertices(M, v, guard)
    cm, cert = _certificate(M, p1, p2)
    return MatrixGameSolution(v, tuple(p1), tuple(p2), cm, cert)


def is_completely_mixed(M, guard=None):
    """``(flag, certificate)``: square, unique optima, all coordinates positive."""
    sol = solve_matrix_game(M, guard)
    return sol.completely_mixed, sol.certificate


def kaplansky_value(M):
    """``det(M) / (sum of cofactors)`` for a completely mixed game with nonzero value.

    Serves as an independent cross-check of the LP value; raises
    :class:`KaplanskyInapplicable` when the formula does not apply.
    """
    M = _as_matrix(M)
    if len(M) != len(M[0]):
        raise KaplanskyInapplicable("matrix is not square")
    sol = solve_matrix_game(M)
    if not sol.completely_mixed:
        raise KaplanskyInapplicable(f"game is not completely mixed: {sol.certificate['reason']}")
    if sol.value == 0:
        raise KaplanskyInapplicable("game value is zero, determinant formula does not apply")
    rows = [list(r) for r in M]
    total = linalg.cofactor_sum(rows)
    if total == 0:
        raise KaplanskyInapplicable("cofactor sum is zero for a nonzero-value completely mixed game; "
                                    "input is inconsistent")
    return linalg.det(rows) / total


@dataclass(frozen=True)
class EqualizerCheck:
    holds: bool
    violating_column: int | None
    x_optimal: bool
    y_optimal: bool | None

    def __bool__(self):
        return self.holds


def equalizer_check(M, x, y=None, v=None):
    """Does ``x`` pay exactly ``v`` against every column of ``M``?

    ``v`` defaults to the game value.  The result also reports whether ``x``
    (and ``y`` if given) are actually optimal, since the equalizer property
    is only promised for optimal ``x`` against a completely mixed ``y``.
    """
    M = _as_matrix(M)
    v = matrix_game_value(M) if v is None else Fraction(v)
    x = [Fraction(a) for a in x]
    cols = linalg.vecmat(x, [list(r) for r in M])
    bad = next((j for j, c in enumerate(cols) if c != v), None)
    x_opt = all(c >= v for c in cols)
    y_opt = None
    if y is not None:
        rows = linalg.matvec([list(r) for r in M], [Fraction(a) for a in y])
        y_opt = all(r <= v for r in rows)
    return EqualizerCheck(bad is None, bad, x_opt, y_opt)


def column_shift(A, b):
    """``C`` with ``c_ij = a_ij + b_j``; ``b`` must be nonnegative."""
    A = _as_matrix(A)
    b = [Fraction(x) for x in b]
    if len(b) != len(A[0]):
        raise ValueError("shift vector length must match the number of columns")
    if any(x < 0 for x in b):
        raise ValueError("column shift must be nonnegative")
    return tuple(tuple(a + bj for a, bj in zip(row, b)) for row in A)


@dataclass(frozen=True)
class Lemma2Result:
    """Outcome of reading a symmetric game off its column-shifted version."""

    applicable: bool
    shifted: tuple
    shifted_solution: MatrixGameSolution
    delta: Fraction | None = None
    y: tuple | None = None
    det_nonzero: bool | None = None
    equalizes: bool | None = None
    a_completely_mixed: bool | None = None
    a_value: Fraction | None = None

    @property
    def consistent(self):
        """All exact checks agree with the reduction."""
        return bool(self.applicable and self.det_nonzero and self.equalizes
                    and self.a_completely_mixed and self.a_value == self.delta)


def lemma2_reduce(A, b):
    """Recover the value and optimal strategy of symmetric ``A`` from ``C = A + b``.

    If the column-shifted game ``C`` is completely mixed with value ``v`` and
    optimal ``y``, then ``A y = (v - b.y) e`` and ``A`` is completely mixed.
    When ``C`` is not completely mixed the reduction is inapplicable (which
    says nothing about ``A``).  The claim about ``A`` is re-checked exactly
    by solving ``A`` directly.
    """
    A = _as_matrix(A)
    n = len(A)
    if n != len(A[0]) or any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise ValueError("A must be a symmetric square matrix")
    if any(a <= 0 for row in A for a in row):
        raise ValueError("A must have strictly positive entries")
    C = column_shift(A, b)
    sol_c = solve_matrix_game(C)
    if not sol_c.completely_mixed:
        return Lemma2Result(False, C, sol_c)
    b = [Fraction(x) for x in b]
    y = sol_c.p2_vertices[0]
    delta = sol_c.value - sum((bj * yj for bj, yj in zip(b, y)), Fraction(0))
    Ay = linalg.matvec([list(r) for r in A], list(y))
    sol_a = solve_matrix_game(A)
    return Lemma2Result(
        True, C, sol_c, delta, y,
        det_nonzero=linalg.det([list(r) for r in A]) != 0,
        equalizes=all(t == delta for t in Ay),
        a_completely_mixed=sol_a.completely_mixed,
        a_value=sol_a.value,
    )
