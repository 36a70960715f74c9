"""LLL reduction of a positive definite Gram matrix, in exact rationals.

Only used to precondition enumeration; results never depend on the reduced
basis because enumerated vectors are mapped back to the caller's basis.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence


def gram_schmidt(G: Sequence[Sequence]) -> tuple[list, list]:
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(G[i][j])
            for t in range(j):
                s -= mu[j][t] * mu[i][t] * B[t]
            mu[i][j] = s / B[j]
        s = Fraction(G[i][i])
        for t in range(i):
            s -= mu[i][t] * mu[i][t] * B[t]
        if s <= 0:
            raise ValueError("Gram matrix is not positive definite")
        B[i] = s
        mu[i][i] = Fraction(1)
    return mu, B


def lll_gram(G: Sequence[Sequence], delta: Fraction = Fraction(3, 4)) -> List[List[int]]:
    """Return unimodular U (U[a][i] = coefficient of old vector a in new vector i)."""
    n = len(G)
    H = [[int(i == j) for j in range(n)] for i in range(n)]  # H[i] = coefficients of b_i
    if n <= 1:
        return H
    mu, B = gram_schmidt(G)

    def reduce(k: int, j: int) -> None:
        q = round(mu[k][j])
        if q:
            H[k] = [x - q * y for x, y in zip(H[k], H[j])]
            for t in range(j):
                mu[k][t] -= q * mu[j][t]
            mu[k][j] -= q

    k = 1
    while k < n:
        reduce(k, k - 1)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            for j in range(k - 2, -1, -1):
                reduce(k, j)
            k += 1
            continue
        m = mu[k][k - 1]
        Bk = B[k] + m * m * B[k - 1]
        mu[k][k - 1] = m * B[k - 1] / Bk
        B[k] = B[k - 1] * B[k] / Bk
        B[k - 1] = Bk
        H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        for i in range(k + 1, n):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
        k = max(k - 1, 1)
    return [[H[i][a] for i in range(n)] for a in range(n)]
