"""Exact linear algebra over the rationals.

Everything here works on lists of :class:`fractions.Fraction` and never
rounds.  The matrices that show up in this package are tiny (a handful of
states and actions), so plain Gaussian elimination is all we need.
"""

from fractions import Fraction


class SingularMatrixError(ArithmeticError):
    pass


def as_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(A, B):
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]


def matvec(A, x):
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A]


def vecmat(x, A):
    return [sum((x[i] * A[i][j] for i in range(len(x))), Fraction(0)) for j in range(len(A[0]))]


def rref(M):
    """Reduced row echelon form of ``M`` (copied).  Returns ``(R, pivot_columns)``."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        if piv != 1:
            R[r] = [x / piv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def solve(A, b):
    """Solve ``A x = b`` exactly.

    ``A`` may have more rows than columns as long as the system is
    consistent and the solution is unique.  Raises
    :class:`SingularMatrixError` otherwise.
    """
    n = len(A[0])
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        raise SingularMatrixError("inconsistent linear system")
    if len(pivots) < n:
        raise SingularMatrixError("linear system has no unique solution")
    x = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    return x


def det(A):
    """Determinant by fraction-exact elimination."""
    M = [list(row) for row in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        piv = M[c][c]
        d *= piv
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / piv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def minor(A, i, j):
    return [row[:j] + row[j + 1:] for k, row in enumerate(A) if k != i]


def cofactor_sum(A):
    """Sum of all cofactors of a square matrix (the entry sum of its adjugate)."""
    n = len(A)
    if n == 1:
        return Fraction(1)
    return sum(((-1) ** (i + j) * det(minor(A, i, j)) for i in range(n) for j in range(n)),
               Fraction(0))
