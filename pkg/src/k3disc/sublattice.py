"""Sublattice embeddings, saturation, orthogonal complements, projections and glue."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd
from typing import Dict, List, Sequence, Tuple

from . import intmat
from .intmat import IntMatrix
from .lattice import Lattice, LatticeError, Signature, lattice_from_json, lattice_to_json

FracVec = Tuple[Fraction, ...]


class EmbeddingError(LatticeError):
    pass


@dataclass(frozen=True)
class RationalMatrix:
    """Rational matrix num / den with a single positive common denominator."""

    num: IntMatrix
    den: int

    @classmethod
    def from_fractions(cls, rows) -> "RationalMatrix":
        num, den = intmat.common_denominator(rows)
        return cls(num, den)

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.num[i][j], self.den)

    def apply(self, v: Sequence) -> FracVec:
        return tuple(Fraction(x, self.den) for x in intmat.matvec(self.num, v))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix.from_fractions(
            [[Fraction(x, self.den * other.den) for x in row] for row in intmat.matmul(self.num, other.num)]
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        rows = [
            [Fraction(a, self.den) + Fraction(b, other.den) for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.num, other.num)
        ]
        return RationalMatrix.from_fractions(rows)

    def is_identity(self) -> bool:
        n = len(self.num)
        return all(self.num[i][j] == (self.den if i == j else 0) for i in range(n) for j in range(n))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.num for x in row)


@dataclass(frozen=True)
class SublatticeEmbedding:
    """Columns of ``basis`` (an n x r integer matrix) span S inside ``ambient``."""

    ambient: Lattice
    basis: IntMatrix
    label: str = ""

    def __post_init__(self):
        B = intmat.as_matrix(self.basis)
        n = self.ambient.rank
        if len(B) != n:
            raise EmbeddingError(f"basis has {len(B)} rows, ambient rank is {n}")
        object.__setattr__(self, "basis", B)
        r = intmat.ncols(B)
        if r and intmat.column_rank(B) != r:
            raise EmbeddingError("basis columns are linearly dependent")
        if r and intmat.det(self.gram) == 0:
            raise EmbeddingError("induced form is degenerate")

    @classmethod
    def from_vectors(cls, ambient: Lattice, vectors: Sequence[Sequence[int]], label: str = "") -> "SublatticeEmbedding":
        vecs = [tuple(int(x) for x in v) for v in vectors]
        return cls(ambient, intmat.from_columns(vecs, ambient.rank), label)

    @property
    def rank(self) -> int:
        return intmat.ncols(self.basis)

    @property
    def vectors(self) -> Tuple[Tuple[int, ...], ...]:
        return intmat.columns(self.basis) if self.rank else ()

    @cached_property
    def gram(self) -> IntMatrix:
        if self.rank == 0:
            return ()
        B = self.basis
        return intmat.matmul(intmat.transpose(B), intmat.matmul(self.ambient.gram, B))

    @cached_property
    def lattice(self) -> Lattice:
        return induced_gram(self)

    @property
    def signature(self) -> Signature:
        return self.lattice.signature if self.rank else Signature(0, 0)

    @cached_property
    def _gram_inverse(self) -> Tuple[IntMatrix, int]:
        return intmat.rational_inverse(self.gram)

    def vector(self, coords: Sequence) -> tuple:
        """Ambient coordinates of the element with the given S-coordinates."""
        return tuple(sum(c * b for c, b in zip(coords, row)) for row in self.basis)

    def dual_coords(self, v: Sequence) -> FracVec:
        """S-coordinates of the orthogonal projection of ambient v onto S tensor Q."""
        pairing = intmat.matvec(intmat.transpose(self.basis), intmat.matvec(self.ambient.gram, v))
        N, d = self._gram_inverse
        return tuple(Fraction(x, d) for x in intmat.matvec(N, pairing))

    def coords_of(self, v: Sequence) -> FracVec | None:
        """S-coordinates of v if v lies in S tensor Q, else None."""
        c = self.dual_coords(v)
        if self.vector(c) != tuple(Fraction(x) for x in v):
            return None
        return c

    def contains(self, v: Sequence) -> bool:
        c = self.coords_of(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def to_json(self) -> dict:
        return {"ambient": lattice_to_json(self.ambient), "basis": [list(r) for r in self.basis], "label": self.label}

    def __repr__(self) -> str:
        return f"SublatticeEmbedding({self.label or 'S'}, rank={self.rank} in {self.ambient.label})"


def embedding_from_json(obj, ambient: Lattice | None = None) -> SublatticeEmbedding:
    if ambient is None:
        ambient = lattice_from_json(obj["ambient"]) if isinstance(obj.get("ambient"), dict) else None
    if ambient is None:
        raise EmbeddingError("embedding needs an 'ambient' lattice")
    basis = obj["basis"]
    if not isinstance(basis, list) or any(not isinstance(r, list) for r in basis):
        raise EmbeddingError("'basis' must be a list of rows")
    return SublatticeEmbedding(ambient, intmat.as_matrix(basis), str(obj.get("label", "")))


def induced_gram(E: SublatticeEmbedding) -> Lattice:
    return Lattice(E.gram, E.label or "S", even=E.ambient.even)


def is_primitive(E: SublatticeEmbedding) -> bool:
    if E.rank == 0:
        return True
    return all(d == 1 for d in intmat.elementary_divisors(E.basis))


def saturate(E: SublatticeEmbedding) -> SublatticeEmbedding:
    if E.rank == 0 or is_primitive(E):
        return E
    sat = intmat.saturate_columns(E.basis, E.ambient.rank)
    return SublatticeEmbedding(E.ambient, sat, E.label)


def orthogonal_complement(E: SublatticeEmbedding, label: str | None = None) -> SublatticeEmbedding:
    n = E.ambient.rank
    lab = label if label is not None else (f"{E.label}^perp" if E.label else "T")
    if E.rank == 0:
        return SublatticeEmbedding(E.ambient, intmat.identity(n), lab)
    M = intmat.matmul(intmat.transpose(E.basis), E.ambient.gram)
    K = intmat.integer_kernel(M, n)
    return SublatticeEmbedding(E.ambient, K, lab)


def projection_matrices(E: SublatticeEmbedding) -> Tuple[RationalMatrix, RationalMatrix]:
    """(pi_S, pi_T) acting on ambient coordinates."""
    n = E.ambient.rank
    if E.rank == 0:
        zero = RationalMatrix(intmat.zeros(n, n), 1)
        return zero, RationalMatrix(intmat.identity(n), 1)
    N, d = E._gram_inverse
    B = E.basis
    Bt_G = intmat.matmul(intmat.transpose(B), E.ambient.gram)
    num = intmat.matmul(B, intmat.matmul(N, Bt_G))
    pi_s = RationalMatrix.from_fractions([[Fraction(x, d) for x in row] for row in num])
    pi_t = RationalMatrix.from_fractions(
        [[Fraction(int(i == j)) - pi_s.entry(i, j) for j in range(n)] for i in range(n)]
    )
    return pi_s, pi_t


def projection_denominator(E: SublatticeEmbedding, check: bool = True) -> int:
    """The exponent a of disc(S), so that a * pi_S(L) lies in S.

    pi_S(L) sits inside S*, with equality for unimodular L; there a is the least such denominator.
    """
    if E.rank == 0:
        return 1
    a = E.lattice.discriminant_group.exponent
    if check:
        n = E.ambient.rank
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            if any((a * c).denominator != 1 for c in E.dual_coords(e)):
                raise AssertionError("projection denominator postcondition failed")
    return a


def projection_norm_bounds(E: SublatticeEmbedding) -> Tuple[int, int]:
    a = projection_denominator(E)
    b = projection_denominator(orthogonal_complement(saturate(E)))
    return 2 * a * a, 2 * b * b


def frac_mod1(v: Sequence[Fraction]) -> FracVec:
    return tuple(Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator) for x in v)


@dataclass(frozen=True)
class GlueGroup:
    """L / (S + T), recorded by generators with their S- and T-coordinate classes mod 1."""

    S: SublatticeEmbedding
    T: SublatticeEmbedding
    generators: Tuple[Tuple[int, ...], ...]
    orders: Tuple[int, ...]
    s_parts: Tuple[FracVec, ...]
    t_parts: Tuple[FracVec, ...]
    index: int = field(default=1)

    @property
    def order(self) -> int:
        return self.index

    @cached_property
    def pairs(self) -> Dict[FracVec, Tuple[FracVec, ...]]:
        """Map each disc(S)-class of the group to the disc(T)-classes it is glued to."""
        r, k = self.S.rank, self.T.rank
        table: Dict[FracVec, set] = {}
        for mult in product(*(range(d) for d in self.orders)):
            s = [Fraction(0)] * r
            t = [Fraction(0)] * k
            for m, sp, tp in zip(mult, self.s_parts, self.t_parts):
                if m:
                    s = [x + m * y for x, y in zip(s, sp)]
                    t = [x + m * y for x, y in zip(t, tp)]
            table.setdefault(frac_mod1(s), set()).add(frac_mod1(t))
        return {key: tuple(sorted(val)) for key, val in table.items()}

    def partners(self, s_class: Sequence[Fraction]) -> Tuple[FracVec, ...]:
        return self.pairs.get(frac_mod1(s_class), ())


def glue_group(S: SublatticeEmbedding, T: SublatticeEmbedding) -> GlueGroup:
    L = S.ambient
    n = L.rank
    if T.ambient != L:
        raise EmbeddingError("S and T live in different ambient lattices")
    if S.rank + T.rank != n:
        raise EmbeddingError("rank(S) + rank(T) must equal the ambient rank")
    for u in S.vectors:
        for v in T.vectors:
            if L.inner(u, v):
                raise EmbeddingError("S and T are not orthogonal")
    M = intmat.from_columns(list(S.vectors) + list(T.vectors), n)
    D, A, _ = intmat.smith_normal_form(M)
    Ainv_num, Ainv_den = intmat.rational_inverse(A)
    assert Ainv_den == 1
    gens, orders, sp, tp = [], [], [], []
    r = S.rank
    for i in range(n):
        d = D[i][i]
        if d > 1:
            g = intmat.column(Ainv_num, i)
            c = intmat.solve_rational(M, g)
            gens.append(g)
            orders.append(d)
            sp.append(frac_mod1(c[:r]))
            tp.append(frac_mod1(c[r:]))
    index = 1
    for d in orders:
        index *= d
    dS = abs(intmat.det(S.gram)) if S.rank else 1
    dT = abs(intmat.det(T.gram)) if T.rank else 1
    if index * index * abs(L.determinant) != dS * dT:
        raise AssertionError("glue index check failed")
    return GlueGroup(S, T, tuple(gens), tuple(orders), tuple(sp), tuple(tp), index)


# Catalog of explicit primitive embeddings --------------------------------

def embed_vectors(L: Lattice, vectors, label: str = "") -> SublatticeEmbedding:
    E = SublatticeEmbedding.from_vectors(L, vectors, label)
    if not is_primitive(E):
        raise EmbeddingError(f"catalog embedding {label!r} is not primitive")
    return E


def unit_vector(n: int, i: int, k: int = 1) -> Tuple[int, ...]:
    return tuple(k if j == i else 0 for j in range(n))


def rank_one_in_u(L: Lattice, n: int, u_offset: int = 0, label: str | None = None) -> SublatticeEmbedding:
    """<n> spanned by e + (n/2) f in the hyperbolic plane at coordinates (u_offset, u_offset+1)."""
    if n % 2:
        raise EmbeddingError("n must be even")
    h = [0] * L.rank
    h[u_offset] = 1
    h[u_offset + 1] = n // 2
    return embed_vectors(L, [h], label or f"<{n}>")


def coordinate_block(L: Lattice, coords: Sequence[int], label: str = "") -> SublatticeEmbedding:
    """Sublattice spanned by a subset of the ambient basis (always primitive)."""
    return embed_vectors(L, [unit_vector(L.rank, i) for i in coords], label)


def direct_sum_embeddings(*parts: SublatticeEmbedding, label: str = "") -> SublatticeEmbedding:
    L = parts[0].ambient
    vecs = [v for p in parts for v in p.vectors]
    return SublatticeEmbedding.from_vectors(L, vecs, label)


def gcd_list(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
