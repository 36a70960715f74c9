"""Exact integer and rational matrix helpers.

Matrices are tuples of row tuples of Python ints (or Fractions).  Nothing in
here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

IntMatrix = Tuple[Tuple[int, ...], ...]
Vector = Tuple[int, ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, m: int) -> IntMatrix:
    return tuple((0,) * m for _ in range(n))


def transpose(M):
    if not M:
        return ()
    return tuple(zip(*M))


def ncols(M, default: int = 0) -> int:
    return len(M[0]) if M else default


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in A)


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def column(M, j: int):
    return tuple(row[j] for row in M)


def columns(M):
    return transpose(M)


def from_columns(cols, nrows: int):
    if not cols:
        return tuple(() for _ in range(nrows))
    return transpose(cols)


def block_diag(*blocks) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return as_matrix(out)


def is_symmetric(M) -> bool:
    n = len(M)
    return all(len(row) == n for row in M) and all(
        M[i][j] == M[j][i] for i in range(n) for j in range(i)
    )


def vec_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive_part(v) -> Vector:
    g = vec_gcd(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def first_nonzero_positive(v):
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def det(M) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i = A[i]
            row_k = A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def rational_inverse(M) -> Tuple[IntMatrix, int]:
    """Inverse of a nonsingular integer matrix as (N, d) with M^-1 = N / d, d > 0 minimal."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                rc = A[c]
                A[r] = [x - f * y for x, y in zip(A[r], rc)]
    inv = [row[n:] for row in A]
    return common_denominator(inv)


def common_denominator(F) -> Tuple[IntMatrix, int]:
    d = 1
    for row in F:
        for x in row:
            x = Fraction(x)
            d = d * x.denominator // gcd(d, x.denominator)
    return tuple(tuple(int(Fraction(x) * d) for x in row) for row in F), d


def solve_rational(M, b) -> Tuple[Fraction, ...]:
    """Solve M x = b for square nonsingular M over Q."""
    N, d = rational_inverse(M)
    return tuple(Fraction(s, d) for s in matvec(N, b))


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def row_echelon_with_transform(M) -> Tuple[List[List[int]], List[List[int]], List[int]]:
    """Integer row echelon form H = U M with U unimodular.

    Returns (H, U, pivot_columns).  Rows of H below len(pivot_columns) are zero.
    """
    n = len(M)
    m = ncols(M)
    H = [list(r) for r in M]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    pivots: List[int] = []
    r = 0
    for c in range(m):
        if r >= n:
            break
        for i in range(r + 1, n):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, x, y = _xgcd(a, b)
            if a == 0:
                H[r], H[i] = H[i], H[r]
                U[r], U[i] = U[i], U[r]
                continue
            p, q = a // g, b // g
            hr, hi = H[r], H[i]
            H[r] = [x * s + y * t for s, t in zip(hr, hi)]
            H[i] = [-q * s + p * t for s, t in zip(hr, hi)]
            ur, ui = U[r], U[i]
            U[r] = [x * s + y * t for s, t in zip(ur, ui)]
            U[i] = [-q * s + p * t for s, t in zip(ur, ui)]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [s - f * t for s, t in zip(H[i], H[r])]
                U[i] = [s - f * t for s, t in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return H, U, pivots


def integer_kernel(M, n: int | None = None) -> IntMatrix:
    """Basis (as columns of an n x k matrix) of {x in Z^n : M x = 0}.

    The basis is part of a unimodular matrix, so the kernel lattice returned is
    saturated in Z^n.
    """
    if n is None:
        n = ncols(M)
    if not M:
        return identity(n)
    Mt = transpose(M)
    H, U, piv = row_echelon_with_transform(Mt)
    rank = len(piv)
    kern_rows = [U[i] for i in range(rank, n)]
    kern_rows = lll_rows(kern_rows) if kern_rows else kern_rows
    return from_columns([tuple(r) for r in kern_rows], n)


def lll_rows(rows: List[List[int]]) -> List[List[int]]:
    """Size-reduce integer row vectors with the standard inner product (LLL, delta = 3/4)."""
    from .reduction import lll_gram

    k = len(rows)
    n = len(rows[0])
    gram = [[sum(a * b for a, b in zip(rows[i], rows[j])) for j in range(k)] for i in range(k)]
    U = lll_gram(gram)
    return [[sum(U[a][i] * rows[a][c] for a in range(k)) for c in range(n)] for i in range(k)]


def saturate_columns(B, n: int) -> IntMatrix:
    """Primitive closure (B tensor Q) meet Z^n of the column span of B."""
    r = ncols(B)
    if r == 0:
        return B
    K = integer_kernel(transpose(B), n)  # vectors orthogonal (std dot) to span(B)
    if ncols(K) == 0:
        return identity(n)
    return integer_kernel(transpose(K), n)


def column_rank(B) -> int:
    if not B or ncols(B) == 0:
        return 0
    H, _, piv = row_echelon_with_transform(transpose(B))
    return len(piv)


def express_in_basis(B, v) -> Tuple[Fraction, ...] | None:
    """Rational coordinates c with B c = v for a full column rank B, or None if v is outside span(B)."""
    r = ncols(B)
    G = matmul(transpose(B), B)
    c = solve_rational(G, matvec(transpose(B), v))
    recon = tuple(sum(Fraction(B[i][j]) * c[j] for j in range(r)) for i in range(len(B)))
    if recon != tuple(Fraction(x) for x in v):
        return None
    return c


def smith_normal_form(M) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form D = A M B with A, B unimodular.

    Pivots on the entry of minimal absolute value.  The diagonal is non-negative
    with d_1 | d_2 | ...
    """
    n = len(M)
    m = ncols(M)
    D = [list(r) for r in M]
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    B = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        A[i], A[j] = A[j], A[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in B:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        D[dst] = [x + f * y for x, y in zip(D[dst], D[src])]
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]

    def add_col(dst, src, f):
        for row in D:
            row[dst] += f * row[src]
        for row in B:
            row[dst] += f * row[src]

    t = 0
    while t < min(n, m):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            piv = D[t][t]
            for i in range(t + 1, n):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // piv))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, m):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // piv))
                    if D[t][j]:
                        done = False
            if not done:
                best = None
                for i in range(t, n):
                    if D[i][t] and (best is None or abs(D[i][t]) < abs(D[best][t])):
                        best = i
                bestc = None
                for j in range(t, m):
                    if D[t][j] and (bestc is None or abs(D[t][j]) < abs(D[t][bestc])):
                        bestc = j
                if abs(D[best][t]) <= abs(D[t][bestc]):
                    swap_rows(t, best)
                else:
                    swap_cols(t, bestc)
                continue
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if D[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            A[t] = [-x for x in A[t]]
        t += 1
    return as_matrix(D), as_matrix(A), as_matrix(B)


def elementary_divisors(M) -> List[int]:
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), ncols(D)))]
