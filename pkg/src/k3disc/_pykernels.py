"""Pure-Python reference versions of the hot loops in ``_kernels.pyx``."""
from __future__ import annotations

from typing import List, Sequence, Tuple


def box_hits(gram: Sequence[Sequence[int]], bound: int, target: int, offset: Sequence[int] | None = None,
             step: int = 1, limit: int = 1, skip_zero: bool = True) -> List[Tuple[int, ...]]:
    """z in [-bound, bound]^n (lexicographic, first coordinate slowest) with Q(offset + step z) == target."""
    n = len(gram)
    if n == 0:
        return []
    off = [int(x) for x in offset] if offset is not None else [0] * n
    z = [-bound] * n
    y = [o - step * bound for o in off]
    w = [sum(gram[i][j] * y[j] for j in range(n)) for i in range(n)]
    q = sum(y[i] * w[i] for i in range(n))
    hits: List[Tuple[int, ...]] = []
    last = n - 1
    while True:
        if q == target and not (skip_zero and not any(y)):
            hits.append(tuple(z))
            if limit and len(hits) >= limit:
                return hits
        k = last
        while k >= 0 and z[k] == bound:
            k -= 1
        if k < 0:
            return hits
        # reset coordinates after k to -bound, then bump coordinate k
        for i in range(k + 1, n):
            d = -2 * bound * step
            col = gram[i]
            q += 2 * d * w[i] + d * d * col[i]
            for j in range(n):
                w[j] += d * gram[j][i]
            y[i] += d
            z[i] = -bound
        d = step
        q += 2 * d * w[k] + d * d * gram[k][k]
        for j in range(n):
            w[j] += d * gram[j][k]
        y[k] += d
        z[k] += 1


def affine_values_mod(gram: Sequence[Sequence[int]], m: int, offset: Sequence[int], step: int, span: int) -> bytes:
    """Indicator (length m) of {Q(offset + step z) mod m : z in [0, span)^k}."""
    k = len(gram)
    mask = bytearray(m)
    if k == 0:
        mask[0] = 1
        return bytes(mask)
    g = [[x % m for x in row] for row in gram]
    z = [0] * k
    while True:
        y = [(offset[i] + step * z[i]) % m for i in range(k)]
        v = 0
        for i in range(k):
            if y[i]:
                v += y[i] * sum(g[i][j] * y[j] for j in range(k))
        mask[v % m] = 1
        i = k - 1
        while i >= 0 and z[i] == span - 1:
            z[i] = 0
            i -= 1
        if i < 0:
            return bytes(mask)
        z[i] += 1


def sumset_mod(a: bytes, b: bytes, m: int) -> bytes:
    out = bytearray(m)
    bs = [j for j in range(m) if b[j]]
    for i in range(m):
        if a[i]:
            for j in bs:
                out[(i + j) % m] = 1
    return bytes(out)
