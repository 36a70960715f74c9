"""Value sets of integral quadratic forms modulo m, on the whole lattice or on a coset.

Value sets mod p^k are computed after a congruence block diagonalization over
Z/p^k (1x1 blocks, plus 2x2 blocks when p = 2), so the cost is a sumset over
blocks rather than a scan of (Z/m)^n.
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from . import kernels

DEFAULT_MODULI = (4, 8, 9, 16, 25, 27, 32, 49, 64)
MAX_PRIME_POWER = 1 << 14  # sumsets cost q^2
MAX_ENTRIES = 10 ** 6


def factorize(m: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def valuation(x: int, p: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


def block_decomposition(G: Sequence[Sequence[int]], p: int, k: int):
    """Return (blocks, A, P, Pinv) with P^T G P = A block diagonal mod p^k.

    ``blocks`` lists index tuples of the 1x1 or 2x2 diagonal blocks of A.
    """
    q = p ** k
    n = len(G)
    A = [[x % q for x in row] for row in G]
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Pinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in P:
            row[i], row[j] = row[j], row[i]
        Pinv[i], Pinv[j] = Pinv[j], Pinv[i]

    def add(i, j, f):
        # x_j <- x_j + f x_i, i.e. column j += f * column i
        f %= q
        if not f:
            return
        for row in A:
            row[j] = (row[j] + f * row[i]) % q
        A[j] = [(a + f * b) % q for a, b in zip(A[j], A[i])]
        for row in P:
            row[j] = (row[j] + f * row[i]) % q
        Pinv[i] = [(a - f * b) % q for a, b in zip(Pinv[i], Pinv[j])]

    blocks: List[Tuple[int, ...]] = []
    t = 0
    while t < n:
        best = None
        for i in range(t, n):
            for j in range(i, n):
                v = valuation(A[i][j], p, k)
                if best is None or v < best[0] or (v == best[0] and i == j and best[1] != best[2]):
                    best = (v, i, j)
        v, i, j = best
        if v >= k:
            blocks.extend((s,) for s in range(t, n))
            break
        if i != j:
            diag = next((s for s in range(t, n) if valuation(A[s][s], p, k) == v), None)
            if diag is not None:
                i = j = diag
        if i == j:
            swap(t, i)
            pv = p ** v
            u_inv = pow(A[t][t] // pv, -1, q)
            for r in range(t + 1, n):
                if A[t][r]:
                    add(t, r, -(A[t][r] // pv) * u_inv)
            blocks.append((t,))
            t += 1
            continue
        if p != 2:
            add(j, i, 1)
            continue
        swap(t, i)
        swap(t + 1, j if j != t else i)
        a, b, c = A[t][t], A[t][t + 1], A[t + 1][t + 1]
        det = a * c - b * b
        pv2 = p ** (2 * v)
        u_inv = pow(det // pv2, -1, q)
        for r in range(t + 2, n):
            x, y = A[t][r], A[t + 1][r]
            if x or y:
                f1 = -((c * x - b * y) // pv2) * u_inv
                f2 = -((a * y - b * x) // pv2) * u_inv
                add(t, r, f1)
                add(t + 1, r, f2)
        blocks.append((t, t + 1))
        t += 2
    return blocks, A, P, Pinv


def _prime_power_value_set(G, p: int, k: int, offset: Sequence[int], step_val: int, max_entries: int) -> bytes | None:
    q = p ** k
    if q > MAX_PRIME_POWER:
        return None
    n = len(G)
    s = min(step_val, k)
    ps = p ** s
    span = q // ps
    blocks, A, _, Pinv = block_decomposition(G, p, k)
    y0 = [sum(Pinv[i][j] * offset[j] for j in range(n)) % q for i in range(n)]
    acc = bytearray(q)
    acc[0] = 1
    acc = bytes(acc)
    for blk in blocks:
        if span ** len(blk) > max_entries:
            return None
        sub = [[A[i][j] for j in blk] for i in blk]
        vals = kernels.affine_values_mod(sub, q, [y0[i] for i in blk], ps, span)
        acc = kernels.sumset_mod(acc, vals, q)
    return acc


def residue_tables(G, m: int, offset, step: int, max_entries: int):
    n = len(G)
    off = [int(x) for x in offset] if offset is not None else [0] * n
    out = []
    for p, k in sorted(factorize(m).items()):
        vals = _prime_power_value_set(G, p, k, off, valuation(step, p, k), max_entries)
        if vals is None:
            return None
        out.append((p ** k, vals))
    return out


def value_set(G: Sequence[Sequence[int]], m: int, offset: Sequence[int] | None = None, step: int = 1,
              max_entries: int = MAX_ENTRIES) -> frozenset | None:
    """{Q(offset + step z) mod m : z in Z^n}, or None if a block exceeds ``max_entries``."""
    if m <= 1:
        raise ValueError("modulus must exceed 1")
    per_prime = residue_tables(G, m, offset, step, max_entries)
    if per_prime is None or m > 1 << 22:
        return None
    return frozenset(r for r in range(m) if all(vals[r % q] for q, vals in per_prime))


def attains(G: Sequence[Sequence[int]], m: int, residue: int, offset: Sequence[int] | None = None, step: int = 1,
            max_entries: int = MAX_ENTRIES) -> bool | None:
    """Whether ``residue`` lies in the value set mod m (None when the tables are too large)."""
    if m <= 1:
        raise ValueError("modulus must exceed 1")
    per_prime = residue_tables(G, m, offset, step, max_entries)
    if per_prime is None:
        return None
    return all(vals[residue % q] for q, vals in per_prime)


def brute_value_set(G: Sequence[Sequence[int]], m: int, offset: Sequence[int] | None = None, step: int = 1) -> frozenset:
    """Direct scan of (Z/m)^n; exponential in n, kept as an independent check."""
    n = len(G)
    off = [int(x) for x in offset] if offset is not None else [0] * n
    mask = kernels.affine_values_mod([list(r) for r in G], m, off, step, m)
    return frozenset(i for i in range(m) if mask[i])


def find_obstruction(G, target: int, moduli: Sequence[int], offset=None, step: int = 1,
                     max_entries: int = MAX_ENTRIES) -> dict | None:
    """First modulus whose value set misses ``target``; the returned record is a NO-certificate."""
    for m in moduli:
        if m <= 1:
            raise ValueError(f"modulus must exceed 1, got {m}")
        if attains(G, m, target, offset, step, max_entries) is False:
            return {"modulus": int(m), "residue": int(target % m)}
    return None


def check_obstruction(G, target: int, record: dict, offset=None, step: int = 1) -> bool:
    m = int(record["modulus"])
    if m <= 1 or int(record["residue"]) != target % m:
        return False
    return attains(G, m, target, offset, step, max_entries=MAX_ENTRIES * 16) is False


def default_moduli(exponent: int = 1) -> Tuple[int, ...]:
    extra = 2 * exponent * exponent
    mods = list(DEFAULT_MODULI)
    if extra > 1 and extra not in mods:
        mods.append(extra)
    return tuple(mods)
