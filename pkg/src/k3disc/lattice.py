"""Even integral lattices given by Gram matrices, and standard constructions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Tuple

from . import intmat
from .intmat import IntMatrix

# Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
E8_EDGES = ((1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8))


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __iter__(self):
        yield self.p
        yield self.q

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class DiscriminantGroup:
    cyclic_orders: Tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.cyclic_orders:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.cyclic_orders[-1] if self.cyclic_orders else 1

    @property
    def length(self) -> int:
        return len(self.cyclic_orders)

    def __str__(self) -> str:
        if not self.cyclic_orders:
            return "trivial"
        parts = []
        for d in sorted(set(self.cyclic_orders)):
            k = self.cyclic_orders.count(d)
            parts.append(f"(Z/{d})^{k}" if k > 1 else f"Z/{d}")
        return " + ".join(parts)


@dataclass(frozen=True)
class Lattice:
    """Nondegenerate integral lattice.  Degenerate Gram matrices are rejected."""

    gram: IntMatrix
    label: str = ""
    even: bool = field(default=True, compare=False)

    def __post_init__(self):
        g = intmat.as_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        if not intmat.is_symmetric(g):
            raise LatticeError("Gram matrix is not symmetric")
        if intmat.det(g) == 0:
            raise LatticeError(f"degenerate Gram matrix for lattice {self.label!r}")
        if self.even and any(g[i][i] % 2 for i in range(len(g))):
            raise LatticeError(f"lattice {self.label!r} declared even but has odd diagonal")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def inner(self, x: Sequence, y: Sequence):
        return inner(self, x, y)

    def norm(self, x: Sequence):
        return inner(self, x, x)

    @cached_property
    def determinant(self) -> int:
        return intmat.det(self.gram)

    @cached_property
    def signature(self) -> Signature:
        return signature(self)

    @cached_property
    def discriminant_group(self) -> DiscriminantGroup:
        return discriminant_group(self)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    def is_negative_definite(self) -> bool:
        return self.signature.p == 0

    def is_positive_definite(self) -> bool:
        return self.signature.q == 0

    def is_hyperbolic(self) -> bool:
        return self.signature.p == 1

    def __repr__(self) -> str:
        return f"Lattice({self.label or 'unnamed'}, rank={self.rank})"


def inner(L: Lattice, x: Sequence, y: Sequence):
    n = L.rank
    if len(x) != n or len(y) != n:
        raise LatticeError(f"dimension mismatch: lattice rank {n}, vectors of length {len(x)} and {len(y)}")
    G = L.gram
    total = 0
    for i in range(n):
        xi = x[i]
        if xi:
            row = G[i]
            total += xi * sum(row[j] * y[j] for j in range(n) if y[j])
    return total


def gram_signature(G) -> Signature:
    """Signature of a symmetric rational matrix by congruence diagonalization."""
    n = len(G)
    A = [[Fraction(x) for x in row] for row in G]
    p = q = 0
    k = 0
    while k < n:
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    raise LatticeError("degenerate Gram matrix")
                # x_k <- x_k + x_j makes the pivot 2 a_kj
                for i in range(n):
                    A[i][k] += A[i][j]
                for i in range(n):
                    A[k][i] += A[j][i]
        piv = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            f = rowk[i] / piv
            if f:
                row = A[i]
                for j in range(k + 1, n):
                    row[j] -= f * rowk[j]
        for i in range(k + 1, n):
            A[i][k] = A[k][i] = Fraction(0)
        if piv > 0:
            p += 1
        else:
            q += 1
        k += 1
    return Signature(p, q)


def signature(L: Lattice) -> Signature:
    return gram_signature(L.gram)


def determinant(L: Lattice) -> int:
    return L.determinant


def smith_normal_form(M):
    return intmat.smith_normal_form(M)


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    divs = [abs(d) for d in intmat.elementary_divisors(L.gram)]
    return DiscriminantGroup(tuple(d for d in divs if d > 1))


def direct_sum(*parts: Lattice, label: str | None = None) -> Lattice:
    g = intmat.block_diag(*(p.gram for p in parts))
    lab = label if label is not None else "+".join(p.label or "?" for p in parts)
    return Lattice(g, lab, even=all(p.even for p in parts))


def rescale(L: Lattice, k: int, label: str | None = None) -> Lattice:
    if k == 0:
        raise LatticeError("rescaling factor must be nonzero")
    g = tuple(tuple(k * x for x in row) for row in L.gram)
    return Lattice(g, label if label is not None else f"{L.label}({k})", even=L.even or k % 2 == 0)


def hyperbolic_plane() -> Lattice:
    return Lattice(((0, 1), (1, 0)), "U")


def hyperbolic_plane_scaled(k: int) -> Lattice:
    return rescale(hyperbolic_plane(), k, f"U({k})")


def e8_cartan() -> IntMatrix:
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for a, b in E8_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return intmat.as_matrix(g)


def e8_minus() -> Lattice:
    return Lattice(tuple(tuple(-x for x in row) for row in e8_cartan()), "E8(-1)")


def rank_one(n: int, even: bool = True) -> Lattice:
    if even and n % 2:
        raise LatticeError(f"<{n}> is not even")
    return Lattice(((n,),), f"<{n}>", even=even)


def k3_lattice() -> Lattice:
    """U + U + U + E8(-1) + E8(-1); coordinates 0..5 are (e_i, f_i) pairs, 6..13 and 14..21 the E8 blocks."""
    U = hyperbolic_plane()
    E = e8_minus()
    return direct_sum(U, U, U, E, E, label="L_K3")


K3_U_OFFSETS = (0, 2, 4)
K3_E8_OFFSETS = (6, 14)


# JSON lattice files -------------------------------------------------------

def lattice_from_json(obj) -> Lattice:
    if not isinstance(obj, dict):
        raise LatticeError("lattice description must be a JSON object")
    if "construct" in obj:
        kind = obj["construct"]
        if kind == "k3":
            L = k3_lattice()
        elif kind == "U":
            s = int(obj.get("scale", 1))
            L = hyperbolic_plane() if s == 1 else hyperbolic_plane_scaled(s)
        elif kind == "E8minus":
            L = e8_minus()
            if "scale" in obj:
                L = rescale(L, int(obj["scale"]), f"E8(-{int(obj['scale'])})")
        elif kind == "rank1":
            L = rank_one(int(obj["n"]))
        elif kind == "sum":
            L = direct_sum(*(lattice_from_json(p) for p in obj["parts"]))
        else:
            raise LatticeError(f"unknown construct {kind!r}")
        if "label" in obj:
            L = Lattice(L.gram, obj["label"])
        return L
    if "gram" not in obj:
        raise LatticeError("lattice object needs 'gram' or 'construct'")
    gram = obj["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise LatticeError("'gram' must be a list of rows")
    n = len(gram)
    if any(len(r) != n for r in gram):
        raise LatticeError("'gram' must be square")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in gram for x in r):
        raise LatticeError("'gram' entries must be integers")
    return Lattice(intmat.as_matrix(gram), str(obj.get("label", "")), even=bool(obj.get("even", True)))


def lattice_to_json(L: Lattice) -> dict:
    return {"label": L.label, "gram": [list(r) for r in L.gram]}
