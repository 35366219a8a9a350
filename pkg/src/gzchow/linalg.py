"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Integer matrices hold Python ``int``
entries, rational ones hold :class:`fractions.Fraction`. Functions never
mutate their arguments.

Hermite normal form convention (row style): nonzero rows come first, each
pivot is positive and strictly to the right of the pivot above it, zero rows
sit at the bottom, and every entry above a pivot lies in ``[0, pivot)``.
Two row lattices are equal exactly when their HNFs agree.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]
QMatrix = list[list[Fraction]]

INFINITE = math.inf


class InconsistentSystemError(ValueError):
    """Raised by :func:`solve` when ``M x = b`` has no solution."""


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for a in v:
        g = math.gcd(g, a)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


def clear_denominators(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = 1
    for a in v:
        den = math.lcm(den, Fraction(a).denominator)
    return primitive([int(Fraction(a) * den) for a in v])


def _ncols(M: Sequence[Sequence], ncols: int | None) -> int:
    if ncols is not None:
        return ncols
    if not M:
        raise ValueError("ncols is required for a matrix with no rows")
    return len(M[0])


# ---------------------------------------------------------------------------
# Integer normal forms


def hermite_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None
                        ) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ M`` and ``U`` unimodular.
    """
    n = _ncols(M, ncols)
    A = [list(map(int, row)) for row in M]
    m = len(A)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = A[i][c]
            if b == 0:
                continue
            a = A[r][c]
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            Ar, Ai = A[r], A[i]
            A[r] = [x * s + y * t for s, t in zip(Ar, Ai)]
            A[i] = [p * s + q * t for s, t in zip(Ar, Ai)]
            Ur, Ui = U[r], U[i]
            U[r] = [x * s + y * t for s, t in zip(Ur, Ui)]
            U[i] = [p * s + q * t for s, t in zip(Ur, Ui)]
        piv = A[r][c]
        if piv == 0:
            continue
        if piv < 0:
            A[r] = [-s for s in A[r]]
            U[r] = [-s for s in U[r]]
            piv = -piv
        for i in range(r):
            f = A[i][c] // piv
            if f:
                A[i] = [s - f * t for s, t in zip(A[i], A[r])]
                U[i] = [s - f * t for s, t in zip(U[i], U[r])]
        r += 1
    return A, U


def hnf(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Nonzero rows of the HNF: the canonical basis of the row lattice."""
    H, _ = hermite_normal_form(M, ncols)
    return [row for row in H if any(row)]


def smith_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None
                      ) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``D == U @ M @ V`` with ``d_1 | d_2 | ...``, all ``d_i >= 0``."""
    n = _ncols(M, ncols)
    D = [list(map(int, row)) for row in M]
    m = len(D)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return D, U, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    D[i] = [a - q * b for a, b in zip(D[i], D[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                if D[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    for row in D:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                if D[t][j]:
                    clean = False
            if not clean:
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            D[t] = [a + b for a, b in zip(D[t], D[bad[0]])]
            U[t] = [a + b for a, b in zip(U[t], U[bad[0]])]
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return D, U, V


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Lattice basis (in HNF) of ``{x in Z^ncols : M x = 0}``; always saturated."""
    n = _ncols(M, ncols)
    if not M:
        return identity(n)
    H, U = hermite_normal_form(transpose(M), len(M))
    basis = [U[i] for i, row in enumerate(H) if not any(row)]
    return hnf(basis, n) if basis else []


def saturate(L: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of ``span_Q(L) ∩ Z^n`` in HNF."""
    n = _ncols(L, ncols)
    if not L:
        return []
    return integer_kernel(integer_kernel(L, n), n)


def lattice_index(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], n: int):
    """Index ``[Z^n : A + B]`` of the lattice spanned by the rows of A and B.

    Returns :data:`INFINITE` when the sum has rank below ``n``.
    """
    H = hnf(list(A) + list(B), n)
    if len(H) < n:
        return INFINITE
    index = 1
    for i, row in enumerate(H):
        index *= row[i]
    return index


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[-1][-1]


def int_rank(M: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    A = [list(row) for row in M]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pr = A[r]
        piv = pr[c]
        # Bareiss step: every entry stays a minor, so the division is exact
        for i in range(r + 1, m):
            f = A[i][c]
            A[i] = [(a * piv - f * b) // prev for a, b in zip(A[i], pr)]
        prev = piv
        r += 1
        if r == m:
            break
    return r


# ---------------------------------------------------------------------------
# Rational linear algebra


def rref(M: Sequence[Sequence], ncols: int | None = None) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form over Q; returns ``(R, pivot_columns)``."""
    n = _ncols(M, ncols)
    A = [[Fraction(a) for a in row] for row in M]
    m = len(A)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [a * inv for a in A[r]]
        pr = A[r]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], pr)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rational_rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    if all(isinstance(a, int) for row in M for a in row):
        return int_rank(M)
    return len(rref(M)[1])


def rational_kernel(M: Sequence[Sequence], ncols: int | None = None) -> QMatrix:
    """Basis (rows) of ``{x : M x = 0}`` over Q, one vector per free column."""
    n = _ncols(M, ncols)
    R, pivots = rref(M, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(M: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> list[Fraction]:
    """Some exact solution of ``M x = b`` (free variables set to zero)."""
    n = _ncols(M, ncols)
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        raise InconsistentSystemError("inconsistent system")
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def solve_many(M: Sequence[Sequence], B: Sequence[Sequence], ncols: int | None = None
               ) -> list[list[Fraction]]:
    """Solve ``M x = b`` for every column ``b`` of B; returns solutions as rows."""
    n = _ncols(M, ncols)
    k = len(B[0]) if B else 0
    aug = [list(row) + list(brow) for row, brow in zip(M, B)]
    R, pivots = rref(aug, n + k)
    if any(p >= n for p in pivots):
        raise InconsistentSystemError("inconsistent system")
    out = []
    for j in range(k):
        x = [Fraction(0)] * n
        for row, p in zip(R, pivots):
            x[p] = row[n + j]
        out.append(x)
    return out


def coordinates(basis: Sequence[Sequence], vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Express each vector in the given (independent) row basis."""
    if not vectors:
        return []
    if not basis:
        if any(any(v) for v in vectors):
            raise InconsistentSystemError("vector outside the span of an empty basis")
        return [[] for _ in vectors]
    return solve_many(transpose(basis), transpose(vectors), len(basis))


def row_basis(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal independent subset, chosen greedily in order."""
    if not vectors:
        return []
    R, pivots = rref(transpose(vectors), len(vectors))
    return pivots
