"""Bounded-norm enumeration, modular obstructions and three-valued representation verdicts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, Tuple

from . import intmat, kernels, modular
from .lattice import Lattice, LatticeError
from .reduction import gram_schmidt, lll_gram

YES, NO, UNKNOWN = "YES", "NO", "UNKNOWN"


class EnumerationError(LatticeError):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


@dataclass(frozen=True)
class Verdict:
    """Certified three-valued answer to "is this value represented?"."""

    tag: str
    witness: Optional[tuple] = None
    obstruction: Optional[dict] = None
    bound: Optional[int] = None

    def __post_init__(self):
        if self.tag not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict tag {self.tag!r}")
        need = {YES: self.witness, NO: self.obstruction, UNKNOWN: self.bound}[self.tag]
        if need is None:
            raise ValueError(f"{self.tag} verdict without its certificate")

    @classmethod
    def yes(cls, witness) -> "Verdict":
        return cls(YES, witness=witness)

    @classmethod
    def no(cls, obstruction: dict) -> "Verdict":
        return cls(NO, obstruction=obstruction)

    @classmethod
    def unknown(cls, bound: int) -> "Verdict":
        return cls(UNKNOWN, bound=bound)

    @property
    def is_yes(self) -> bool:
        return self.tag == YES

    @property
    def is_no(self) -> bool:
        return self.tag == NO

    @property
    def is_unknown(self) -> bool:
        return self.tag == UNKNOWN

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.obstruction is not None:
            out["obstruction"] = _jsonable(self.obstruction)
        if self.bound is not None:
            out["bound"] = self.bound
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Verdict":
        w = obj.get("witness")
        return cls(obj["tag"], witness=_freeze(w) if w is not None else None,
                   obstruction=obj.get("obstruction"), bound=obj.get("bound"))


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(y) for y in x)
    if isinstance(x, str) and "/" in x:
        return Fraction(x)
    return x


def combine(verdicts: Sequence[Verdict], bound: int | None = None) -> str:
    """YES dominates, then UNKNOWN, then NO (an empty family is NO)."""
    tags = {v.tag for v in verdicts}
    if YES in tags:
        return YES
    if UNKNOWN in tags:
        return UNKNOWN
    return NO


# Fincke-Pohst --------------------------------------------------------------

def _ceil_sqrt_window(u: Fraction, T: Fraction) -> Tuple[int, int]:
    """Integer interval of z with (z - u)^2 <= T, possibly empty (lo > hi)."""
    if T < 0:
        return 1, 0
    r = isqrt(T.numerator // T.denominator)
    lo = (u.numerator // u.denominator) - r - 1
    hi = -((-u.numerator) // u.denominator) + r + 1
    while lo <= hi and (lo - u) ** 2 > T:
        lo += 1
    while hi >= lo and (hi - u) ** 2 > T:
        hi -= 1
    return lo, hi


def enumerate_positive(gram: Sequence[Sequence], upper, lower=None, shift: Sequence | None = None,
                       reduce: bool = True) -> List[tuple]:
    """All x in shift + Z^n with lower <= x^T gram x <= upper, for a positive definite rational gram.

    Exact Fincke-Pohst over an LLL-preconditioned basis; output is sorted.
    """
    n = len(gram)
    upper = Fraction(upper)
    lower = None if lower is None else Fraction(lower)
    # integer entries stay ints: much cheaper than Fraction arithmetic
    G = [[x if isinstance(x, int) else Fraction(x) for x in row] for row in gram]
    s = [Fraction(x) for x in shift] if shift is not None else [Fraction(0)] * n
    if n == 0:
        return [()] if (lower is None or lower <= 0) and upper >= 0 else []
    U = lll_gram(G) if reduce else [[int(i == j) for j in range(n)] for i in range(n)]
    GU = [[sum(G[a][b] * U[b][j] for b in range(n) if U[b][j]) for j in range(n)] for a in range(n)]
    Gr = [[sum(U[a][i] * GU[a][j] for a in range(n) if U[a][i]) for j in range(n)] for i in range(n)]
    Uinv_num, Uinv_den = intmat.rational_inverse(U)
    sr = [sum(Fraction(Uinv_num[i][j], Uinv_den) * s[j] for j in range(n)) for i in range(n)]
    mu, B = gram_schmidt(Gr)
    # level j uses mu[i][j] for i > j
    cols = [[(i, mu[i][j]) for i in range(j + 1, n)] for j in range(n)]
    x = [Fraction(0)] * n
    out: List[tuple] = []

    def rec(j: int, rem: Fraction):
        c = Fraction(0)
        for i, m in cols[j]:
            c -= m * x[i]
        u = c - sr[j]
        lo, hi = _ceil_sqrt_window(u, rem / B[j])
        for z in range(lo, hi + 1):
            xj = sr[j] + z
            d = xj - c
            r2 = rem - B[j] * d * d
            x[j] = xj
            if j == 0:
                out.append(tuple(x))
            else:
                rec(j - 1, r2)
        x[j] = Fraction(0)

    rec(n - 1, upper)
    res = []
    for xr in out:
        xo = tuple(sum(U[a][i] * xr[i] for i in range(n)) for a in range(n))
        val = sum(xo[a] * G[a][b] * xo[b] for a in range(n) for b in range(n))
        if val > upper or (lower is not None and val < lower):
            continue
        if shift is None:
            xo = tuple(int(v) for v in xo)
        res.append(xo)
    res.sort()
    return res


def coordinate_bound(pos_gram, t) -> int:
    """max_i floor(sqrt(t * (P^-1)_ii)): every x with x^T P x <= t lies in this box."""
    N, d = intmat.rational_inverse(pos_gram)
    best = 0
    for i in range(len(N)):
        q = Fraction(t) * Fraction(N[i][i], d)
        best = max(best, isqrt(q.numerator // q.denominator))
    return best


def canonical_sign(v: Sequence) -> tuple:
    return intmat.first_nonzero_positive(tuple(v))


def dedupe_signs(vectors: Sequence[tuple]) -> List[tuple]:
    seen = set()
    out = []
    for v in vectors:
        c = canonical_sign(v)
        if c not in seen:
            seen.add(c)
            out.append(c)
    out.sort()
    return out


@dataclass(frozen=True)
class EnumerationRequest:
    lattice: Lattice
    lo: int
    hi: int
    shift: Optional[Tuple[Fraction, ...]] = None
    dedupe_sign: bool = False

    def __post_init__(self):
        if Fraction(self.lo) > Fraction(self.hi) or Fraction(self.hi) > 0:
            raise EnumerationError("norm range must satisfy lo <= hi <= 0")
        if self.shift is not None and len(self.shift) != self.lattice.rank:
            raise EnumerationError("shift has the wrong length")


def definite_enumerate(req: EnumerationRequest) -> List[tuple]:
    L = req.lattice
    if L.rank and not L.is_negative_definite():
        raise EnumerationError(f"{L.label or 'lattice'} is not negative definite")
    neg = [[-x for x in row] for row in L.gram]
    vecs = enumerate_positive(neg, -Fraction(req.lo), -Fraction(req.hi), req.shift)
    return dedupe_signs(vecs) if req.dedupe_sign else vecs


def roots(L: Lattice, norm: int = -2, dedupe_sign: bool = False) -> List[tuple]:
    return definite_enumerate(EnumerationRequest(L, norm, norm, dedupe_sign=dedupe_sign))


# modular obstructions and indefinite search --------------------------------

def lattice_moduli(L: Lattice, moduli: Sequence[int] | None = None) -> Tuple[int, ...]:
    if moduli is not None:
        return tuple(moduli)
    return modular.default_moduli(L.discriminant_group.exponent)


def mod_obstruction(L: Lattice, target: int, moduli: Sequence[int] | None = None) -> dict | None:
    return modular.find_obstruction(L.gram, target, lattice_moduli(L, moduli))


def first_hit(gram, target: int, box_bound: int, offset=None, step: int = 1) -> tuple | None:
    """Smallest-shell hit: boxes of radius 0, 1, ..., box_bound are scanned in turn."""
    for b in range(0 if offset is not None else 1, box_bound + 1):
        hits = kernels.box_hits(gram, b, target, offset, step, limit=1, skip_zero=True)
        if hits:
            return hits[0]
    return None


def bounded_indefinite_search(L: Lattice, target: int, box_bound: int) -> Verdict:
    hit = first_hit(L.gram, target, box_bound)
    if hit is not None:
        return Verdict.yes(canonical_sign(hit))
    return Verdict.unknown(box_bound)


def represents(L: Lattice, target: int, moduli: Sequence[int] | None = None, box_bound: int = 4) -> Verdict:
    """Does some nonzero v in L have v^2 = target?  Decisive for definite L."""
    sig = L.signature
    if sig.p == 0 or sig.q == 0:
        sign = -1 if sig.p == 0 else 1
        if target == 0 or target * sign < 0:
            return Verdict.no({"kind": "definite-sign", "signature": [sig.p, sig.q]})
        neg = [[sign * x for x in row] for row in L.gram]
        vecs = enumerate_positive(neg, sign * target, sign * target)
        if vecs:
            return Verdict.yes(canonical_sign(vecs[0]))
        return Verdict.no({"kind": "definite-empty"})
    if target != 0:
        obs = mod_obstruction(L, target, moduli)
        if obs is not None:
            return Verdict.no(dict(kind="modular", **obs))
    return bounded_indefinite_search(L, target, box_bound)


def _anisotropic_modulus(G, moduli: Sequence[int], cap: int = 10 ** 6) -> int | None:
    """A prime power p^k with no primitive solution of Q(x) = 0 mod p^k, if one is found."""
    n = len(G)
    for m in moduli:
        fac = modular.factorize(m)
        if len(fac) != 1 or m ** n > cap:
            continue
        (p, _), = fac.items()
        found = False
        for x in _iter_box_mod(n, m):
            if all(c % p == 0 for c in x):
                continue
            v = sum(x[i] * G[i][j] * x[j] for i in range(n) for j in range(n))
            if v % m == 0:
                found = True
                break
        if not found:
            return m
    return None


def _iter_box_mod(n: int, m: int):
    x = [0] * n
    while True:
        yield x
        i = n - 1
        while i >= 0 and x[i] == m - 1:
            x[i] = 0
            i -= 1
        if i < 0:
            return
        x[i] += 1


def isotropic_rank2_search(T: Lattice, box_bound: int, moduli: Sequence[int] | None = None) -> Verdict:
    """Look for a rank-2 totally isotropic sublattice of T."""
    n = T.rank
    p, q = T.signature
    if n < 2:
        return Verdict.no({"kind": "rank", "rank": n})
    if min(p, q) < 2:
        return Verdict.no({"kind": "signature", "signature": [p, q]})
    d = T.determinant
    if n == 4 and (d < 0 or isqrt(d) ** 2 != d):
        return Verdict.no({"kind": "determinant-not-square", "det": d})
    hits = kernels.box_hits(T.gram, box_bound, 0, limit=0, skip_zero=True)
    iso = [canonical_sign(h) for h in hits]
    iso = sorted(set(iso))
    for i, u in enumerate(iso):
        for v in iso[i + 1:]:
            if T.inner(u, v) == 0 and intmat.column_rank(intmat.from_columns([u, v], n)) == 2:
                return Verdict.yes((u, v))
    m = _anisotropic_modulus(T.gram, lattice_moduli(T, moduli))
    if m is not None:
        return Verdict.no({"kind": "anisotropic", "modulus": m})
    return Verdict.unknown(box_bound)


def check_verdict_witness(L: Lattice, target: int, v: Verdict) -> bool:
    if not v.is_yes:
        return True
    w = v.witness
    return len(w) == L.rank and any(w) and L.norm(w) == target
