import random
from fractions import Fraction
from itertools import combinations

import pytest

from cmstoch import linalg
from cmstoch.fixtures import load_fixture
from cmstoch.model import StochasticGame


ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(n, title, checks)``.

    ``checks`` is a list of ``(label, ok)``; every check is evaluated before
    the assertion so the printed line lists all failures.
    """
    def record(n, title, checks):
        failed = [label for label, ok in checks if not ok]
        line = f"criterion {n}: {'PASS' if not failed else 'FAIL'}  {title}"
        if failed:
            line += "  [failed: " + "; ".join(failed) + "]"
        ACCEPTANCE[n] = line
        print("\n" + line)
        assert not failed, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])


@pytest.fixture
def example9():
    return load_fixture("example9")


@pytest.fixture
def example14():
    return load_fixture("example14")


@pytest.fixture
def example15():
    return load_fixture("example15")


def F(*a):
    return Fraction(*a)


def random_distribution(rng, K, max_support=None):
    support = rng.sample(range(K), rng.randint(1, max_support or K))
    weights = [rng.randint(1, 4) for _ in support]
    total = sum(weights)
    vec = [Fraction(0)] * K
    for s, w in zip(support, weights):
        vec[s] = Fraction(w, total)
    return vec


def random_stochastic_matrix(rng, K):
    return [random_distribution(rng, K, max_support=rng.randint(1, K)) for _ in range(K)]


def random_single_controller_game(rng, max_states=3, max_actions=3, payoff_range=5):
    K = rng.randint(1, max_states)
    payoff, q = [], []
    for _ in range(K):
        m1, m2 = rng.randint(1, max_actions), rng.randint(1, max_actions)
        payoff.append([[rng.randint(-payoff_range, payoff_range) for _ in range(m2)] for _ in range(m1)])
        q.append([random_distribution(rng, K) for _ in range(m2)])
    return StochasticGame.single_controller(payoff, q)


def random_strategy(rng, counts):
    out = []
    for m in counts:
        w = [rng.randint(0, 3) for _ in range(m)]
        if not any(w):
            w[0] = 1
        out.append(tuple(Fraction(x, sum(w)) for x in w))
    return tuple(out)


def random_matrix(rng, m, n, lo=-5, hi=5):
    return [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(m)]


def brute_force_matrix_value(M):
    """Value by Shapley-Snow support enumeration over square submatrices.

    Independent of the simplex: tries every pair of equal-size supports,
    solves the equalizer systems, and returns the first pair that is
    optimal for both players.
    """
    m, n = len(M), len(M[0])
    for k in range(1, min(m, n) + 1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                # x on rows, value v: sum_i x_i M[i][j] = v for j in cols, sum x = 1
                A = [[M[i][j] for i in rows] + [Fraction(-1)] for j in cols] + [[Fraction(1)] * k + [Fraction(0)]]
                B = [[M[i][j] for j in cols] + [Fraction(-1)] for i in rows] + [[Fraction(1)] * k + [Fraction(0)]]
                rhs = [Fraction(0)] * k + [Fraction(1)]
                try:
                    xs = linalg.solve(A, rhs)
                    ys = linalg.solve(B, rhs)
                except linalg.SingularMatrixError:
                    continue
                v, w = xs[-1], ys[-1]
                if v != w or any(a < 0 for a in xs[:-1]) or any(a < 0 for a in ys[:-1]):
                    continue
                x = [Fraction(0)] * m
                y = [Fraction(0)] * n
                for i, a in zip(rows, xs):
                    x[i] = a
                for j, a in zip(cols, ys):
                    y[j] = a
                if all(sum(x[i] * M[i][j] for i in range(m)) >= v for j in range(n)) and \
                        all(sum(M[i][j] * y[j] for j in range(n)) <= v for i in range(m)):
                    return v
    raise AssertionError("support enumeration found no equilibrium")
