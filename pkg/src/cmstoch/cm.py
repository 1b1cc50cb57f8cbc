"""Completely-mixed analysis of discounted and undiscounted games.

A stochastic game is completely mixed when every optimal stationary
strategy of either player puts positive weight on every action in every
state.  For a discounted game this is decided state by state on the
auxiliary matrices at the exact value.  For the undiscounted game we ask,
for each action, whether the player can still guarantee the value with
that action deleted; the answer is yes exactly when some optimal strategy
avoids it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .average import _p1_program, _p2_program, solve_undiscounted, verify_optimal_undiscounted
from .discounted import as_discount, discounted_payoff, normalized_values, solve_discounted_exact
from .errors import SupportVerificationError
from .matrix import is_completely_mixed
from .model import delete_action, insert_zero, require_player_two

DEFAULT_GRID = (Fraction(1, 2), Fraction(3, 4), Fraction(9, 10), Fraction(99, 100), Fraction(999, 1000))
DEFAULT_SCHEDULE_N = 20
DEFAULT_LIMIT_TOL = Fraction(1, 2**10)
STABLE_SUPPORT_STEPS = 3
# search radii for the limit guess, relative to the last step
SHRINK = (Fraction(1), Fraction(1, 2**8), Fraction(1, 2**16), Fraction(1, 2**24))


@dataclass(frozen=True)
class CMReport:
    completely_mixed: bool
    values: tuple
    beta: Fraction | None = None
    certificates: tuple = ()
    witness: dict | None = None
    zero_tests: tuple = ()


def _with_vertex(strategy, s, vertex):
    out = list(strategy)
    out[s] = vertex
    return tuple(out)


def check_cm_discounted(game, beta):
    """Exact completely-mixed test of the beta-discounted game."""
    require_player_two(game)
    sol = solve_discounted_exact(game, as_discount(beta))
    certs = tuple(s.certificate for s in sol.state_solutions)
    cm = all(s.completely_mixed for s in sol.state_solutions)
    witness = None
    if not cm:
        for s, st in enumerate(sol.state_solutions):
            for player, verts, own, other in ((1, st.p1_vertices, sol.p1_strategy, sol.p2_strategy),
                                              (2, st.p2_vertices, sol.p2_strategy, sol.p1_strategy)):
                vert = next((x for x in verts if any(p == 0 for p in x)), None)
                if vert is None:
                    continue
                strat = _with_vertex(own, s, vert)
                f, g = (strat, other) if player == 1 else (other, strat)
                if discounted_payoff(game, f, g, sol.beta) != sol.values:
                    raise SupportVerificationError("discounted witness does not attain the value")
                witness = {"player": player, "state": s, "strategy": strat}
                break
            if witness:
                break
    return CMReport(cm, sol.values, sol.beta, certs, witness)


def check_cm_undiscounted(game):
    """Exact completely-mixed test of the limiting-average game.

    ``zero_tests`` lists, per (player, state, action), whether some optimal
    stationary strategy plays that action with probability zero.  Witnesses
    are re-verified with :func:`verify_optimal_undiscounted`.
    """
    require_player_two(game)
    sol = solve_undiscounted(game)
    total = sum(sol.values)
    tests = []
    witness = None
    for s in range(game.n_states):
        for i in range(game.actions_p1[s] if game.actions_p1[s] > 1 else 0):
            values, f = _p1_program(delete_action(game, 1, s, i))
            possible = sum(values) == total
            tests.append({"player": 1, "state": s, "action": i, "zero_possible": possible})
            if possible and witness is None:
                f = insert_zero(f, s, i)
                if not verify_optimal_undiscounted(game, f, sol.p2_strategy):
                    raise SupportVerificationError("player-1 witness failed verification")
                witness = {"player": 1, "state": s, "action": i, "strategy": f}
    for s in range(game.n_states):
        for j in range(game.actions_p2[s] if game.actions_p2[s] > 1 else 0):
            reduced_total, g = _p2_program(delete_action(game, 2, s, j))
            possible = reduced_total == total
            tests.append({"player": 2, "state": s, "action": j, "zero_possible": possible})
            if possible and witness is None:
                g = insert_zero(g, s, j)
                if not verify_optimal_undiscounted(game, sol.p1_strategy, g):
                    raise SupportVerificationError("player-2 witness failed verification")
                witness = {"player": 2, "state": s, "action": j, "strategy": g}
    cm = not any(t["zero_possible"] for t in tests)
    return CMReport(cm, sol.values, None, (), witness, tuple(tests))


# --- vanishing discount ----------------------------------------------------

def simplest_between(lo, hi):
    """The rational with the smallest denominator in the closed interval ``[lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = floor(lo)
    if fl == lo or fl + 1 <= hi:
        return Fraction(fl if fl == lo else fl + 1)
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


def _extrapolate(prev, last, ratio, shrink=1):
    """Limit guess for a sequence behaving like ``a + c (1 - beta)``.

    Richardson's estimate is rounded to the simplest rational within
    ``shrink * |last - prev|`` of it.
    """
    if last == prev:
        return last
    est = (last - ratio * prev) / (1 - ratio)
    radius = abs(last - prev) * shrink
    return simplest_between(est - radius, est + radius)


def _support(strategy):
    return tuple(tuple(p > 0 for p in vec) for vec in strategy)


@dataclass(frozen=True)
class VanishingDiscountTrace:
    betas: tuple
    solutions: tuple = field(repr=False)
    normalized: tuple
    status: str
    limit_values: tuple | None = None
    f0: tuple | None = None
    g0: tuple | None = None
    check: object = None

    @property
    def certified(self):
        return self.status == "certified"


def default_schedule(n=DEFAULT_SCHEDULE_N):
    return tuple(1 - Fraction(1, 2**k) for k in range(1, n + 1))


def vanishing_discount(game, schedule=None, tol=DEFAULT_LIMIT_TOL):
    """Follow ``(1 - beta) v_beta`` and the optimal strategies as ``beta -> 1``.

    Status is ``"certified"`` when the values settle within ``tol``, the
    strategy supports are identical over the last three discount factors,
    and the extrapolated limit pair is an exactly verified optimal pair of
    the undiscounted game with the declared limit as its value.  Limit
    guesses are tried with shrinking rounding radii (see ``SHRINK``) until
    one verifies.
    ``"values-only"`` means the limit value was declared but the strategies
    could not be certified, ``"inconclusive"`` that not even the values
    settled.
    """
    require_player_two(game)
    betas = tuple(as_discount(b) for b in (schedule if schedule is not None else default_schedule()))
    if len(betas) < 2 or any(b2 <= b1 for b1, b2 in zip(betas, betas[1:])):
        raise ValueError("schedule needs at least two strictly increasing discount factors")
    sols = tuple(solve_discounted_exact(game, b) for b in betas)
    normalized = tuple(normalized_values(s) for s in sols)
    prev, last = normalized[-2], normalized[-1]
    ratio = (1 - betas[-1]) / (1 - betas[-2])

    if max(abs(a - b) for a, b in zip(last, prev)) > tol:
        return VanishingDiscountTrace(betas, sols, normalized, "inconclusive")
    limit = tuple(_extrapolate(a, b, ratio) for a, b in zip(prev, last))
    if max(abs(a - b) for a, b in zip(last, limit)) > tol:
        return VanishingDiscountTrace(betas, sols, normalized, "inconclusive")

    def limit_strategy(attr, shrink):
        seq = [getattr(s, attr) for s in sols]
        if len(seq) >= STABLE_SUPPORT_STEPS and len({_support(x) for x in seq[-STABLE_SUPPORT_STEPS:]}) != 1:
            return None
        a, b = seq[-2], seq[-1]
        if max(abs(x - y) for va, vb in zip(a, b) for x, y in zip(va, vb)) > tol:
            return None
        out = tuple(tuple(_extrapolate(x, y, ratio, shrink) for x, y in zip(va, vb)) for va, vb in zip(a, b))
        if any(p < 0 for vec in out for p in vec) or any(sum(vec) != 1 for vec in out):
            return None
        return out

    # coarse guesses are tried first; only an exactly verified pair certifies
    first = None
    for shrink in SHRINK:
        guess = tuple(_extrapolate(a, b, ratio, shrink) for a, b in zip(prev, last))
        f0, g0 = limit_strategy("p1_strategy", shrink), limit_strategy("p2_strategy", shrink)
        if first is None:
            first = (f0, g0)
        if f0 is None or g0 is None:
            continue
        check = verify_optimal_undiscounted(game, f0, g0)
        if check.optimal and check.value == guess:
            return VanishingDiscountTrace(betas, sols, normalized, "certified", guess, f0, g0, check)
    return VanishingDiscountTrace(betas, sols, normalized, "values-only", limit, *first)


# --- empirical threshold and theorem checks --------------------------------

@dataclass(frozen=True)
class ThresholdReport:
    flags: tuple
    beta0: Fraction | None
    cm_for_all_tested: bool


def beta_threshold_search(game, grid=DEFAULT_GRID):
    """Discounted CM flag per grid point and the smallest tested ``beta`` after which all are CM."""
    grid = sorted(as_discount(b) for b in grid)
    flags = tuple((b, check_cm_discounted(game, b).completely_mixed) for b in grid)
    beta0 = None
    for b, ok in reversed(flags):
        if not ok:
            break
        beta0 = b
    return ThresholdReport(flags, beta0, all(ok for _, ok in flags))


def _is_symmetric(R):
    n = len(R)
    return n == len(R[0]) and all(R[i][j] == R[j][i] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class Theorem11Result:
    applicable: bool
    symmetric: bool
    cm_undiscounted: bool | None
    per_state_cm: tuple
    passed: bool


def theorem11_verify(game):
    """Symmetric stage games of a CM undiscounted game must be CM matrix games.

    Passes vacuously when the hypothesis (all ``R(s)`` symmetric and the
    undiscounted game completely mixed) does not hold.
    """
    symmetric = all(_is_symmetric(R) for R in game.payoff)
    per_state = tuple(is_completely_mixed(R)[0] for R in game.payoff)
    cm_u = None
    if symmetric and game.player_two_controlled:
        cm_u = check_cm_undiscounted(game).completely_mixed
    applicable = bool(symmetric and cm_u)
    return Theorem11Result(applicable, symmetric, cm_u, per_state, all(per_state) if applicable else True)


@dataclass(frozen=True)
class Theorem13Result:
    values: tuple
    value_source: str
    grid: tuple
    discounted_values: tuple
    per_state: tuple
    converse_violations: tuple
    passed: bool


def theorem13_verify(game, grid=DEFAULT_GRID, schedule=None):
    """Nonzero undiscounted value must give nonzero discounted values near 1.

    The undiscounted value comes from the vanishing-discount trace when it
    declares a limit, otherwise from the exact program.  States with
    ``v(s) = 0`` but some ``v_beta(s) != 0`` are listed as converse
    violations; they are informational and do not fail the check.
    """
    require_player_two(game)
    trace = vanishing_discount(game, schedule)
    if trace.limit_values is not None:
        values, source = trace.limit_values, "vanishing-discount"
    else:
        values, source = solve_undiscounted(game).values, "linear-program"
    grid = tuple(sorted(as_discount(b) for b in grid))
    vbetas = tuple(solve_discounted_exact(game, b).values for b in grid)
    per_state, converse = [], []
    passed = True
    for s, v in enumerate(values):
        column = [vb[s] for vb in vbetas]
        zeros = [b for b, x in zip(grid, column) if x == 0]
        last_zero = max(zeros) if zeros else None
        ok = True
        if v != 0:
            ok = column[-1] != 0
            passed = passed and ok
        elif any(x != 0 for x in column):
            converse.append(s)
        per_state.append({"state": s, "value": v, "nonzero": [x != 0 for x in column],
                          "last_zero_beta": last_zero, "ok": ok})
    return Theorem13Result(values, source, grid, vbetas, tuple(per_state), tuple(converse), passed)
