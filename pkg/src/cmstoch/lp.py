"""Exact two-phase primal simplex with Bland's anti-cycling rule.

The interface loosely follows :func:`scipy.optimize.linprog` (minimize
``c @ x`` subject to ``A_ub @ x <= b_ub`` and ``A_eq @ x == b_eq``), but all
arithmetic is done in :class:`fractions.Fraction` so the optimum, the
optimal point and every comparison along the way are exact.  Variables are
nonnegative unless listed in ``free``.
"""

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list | None = None
    fun: Fraction | None = None

    @property
    def success(self):
        return self.status == OPTIMAL


def _pivot(T, basis, r, c):
    piv = T[r][c]
    if piv != 1:
        T[r] = [a / piv for a in T[r]]
    row = T[r]
    for i, other in enumerate(T):
        if i != r and other[c] != 0:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, cost, allowed):
    """Bland's rule on the tableau ``T`` for the cost vector ``cost``."""
    rhs = len(T[0]) - 1
    while True:
        in_basis = set(basis)
        entering = None
        for j in allowed:
            if j in in_basis:
                continue
            d = cost[j] - sum((cost[b] * T[i][j] for i, b in enumerate(basis) if cost[b]),
                              Fraction(0))
            if d < 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                key = (row[rhs] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], entering)


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), free=()):
    """Minimize ``c @ x`` exactly.

    Parameters
    ----------
    c : sequence of rationals
        Objective coefficients, one per variable.
    A_ub, b_ub : rows and right-hand sides of ``<=`` constraints.
    A_eq, b_eq : rows and right-hand sides of ``==`` constraints.
    free : iterable of int
        Indices of variables that are unrestricted in sign.

    Returns
    -------
    LPResult
        ``status`` is one of ``"optimal"``, ``"infeasible"``, ``"unbounded"``.
    """
    c = [Fraction(v) for v in c]
    n = len(c)
    free = sorted(set(free))
    neg_col = {k: n + t for t, k in enumerate(free)}
    n_struct = n + len(free)

    def struct_row(coeffs):
        row = [Fraction(0)] * n_struct
        for k, a in enumerate(coeffs):
            a = Fraction(a)
            row[k] = a
            if k in neg_col:
                row[neg_col[k]] = -a
        return row

    rows = []  # (struct coefficients, rhs, slack sign or 0)
    for coeffs, b in zip(A_ub, b_ub):
        rows.append((struct_row(coeffs), Fraction(b), 1))
    for coeffs, b in zip(A_eq, b_eq):
        rows.append((struct_row(coeffs), Fraction(b), 0))

    n_slack = sum(1 for _, _, s in rows if s)
    m = len(rows)
    # column layout: structural | slacks | artificials
    slack_of = {}
    k = n_struct
    for i, (_, _, s) in enumerate(rows):
        if s:
            slack_of[i] = k
            k += 1
    prepared = []
    for i, (coeffs, b, s) in enumerate(rows):
        sign = 1
        if b < 0:
            sign = -1
            coeffs = [-a for a in coeffs]
            b = -b
        prepared.append((coeffs, b, sign if s else 0))

    need_art = [i for i, (_, _, s) in enumerate(prepared) if s != 1]
    art_of = {i: n_struct + n_slack + t for t, i in enumerate(need_art)}
    N = n_struct + n_slack + len(need_art)

    T = []
    basis = []
    for i, (coeffs, b, s) in enumerate(prepared):
        row = coeffs + [Fraction(0)] * (N - n_struct) + [b]
        if i in slack_of:
            row[slack_of[i]] = Fraction(s)
        if i in art_of:
            row[art_of[i]] = Fraction(1)
            basis.append(art_of[i])
        else:
            basis.append(slack_of[i])
        T.append(row)

    artificial = set(art_of.values())
    if artificial:
        cost1 = [Fraction(0)] * N
        for j in artificial:
            cost1[j] = Fraction(1)
        _run(T, basis, cost1, range(N))
        infeas = sum((T[i][N] for i, b in enumerate(basis) if b in artificial), Fraction(0))
        if infeas > 0:
            return LPResult(INFEASIBLE)
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(T):
            if basis[i] in artificial:
                j = next((j for j in range(n_struct + n_slack) if T[i][j] != 0), None)
                if j is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, basis, i, j)
            i += 1

    cost2 = [Fraction(0)] * N
    for j in range(n):
        cost2[j] = c[j]
    for k, j in neg_col.items():
        cost2[j] = -c[k]
    status = _run(T, basis, cost2, range(n_struct + n_slack))
    if status != OPTIMAL:
        return LPResult(status)

    values = [Fraction(0)] * N
    for i, b in enumerate(basis):
        values[b] = T[i][N]
    x = values[:n]
    for k, j in neg_col.items():
        x[k] -= values[j]
    fun = sum((a * b for a, b in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, fun)
