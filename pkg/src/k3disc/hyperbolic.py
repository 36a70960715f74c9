"""Rays, hyperplanes and the sinh^2 separation surrogate in the hyperbolic space of a hyperbolic lattice."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from . import intmat
from .enumeration import canonical_sign, enumerate_positive
from .lattice import Lattice, LatticeError


class GeometryError(LatticeError):
    pass


@dataclass(frozen=True)
class HyperbolicPoint:
    """Primitive representative of a ray in the positive half-cone."""

    rep: Tuple[int, ...]
    lattice: Lattice

    def __post_init__(self):
        rep = tuple(int(x) for x in self.rep)
        if len(rep) != self.lattice.rank:
            raise GeometryError("representative has the wrong length")
        if self.lattice.norm(rep) <= 0:
            raise GeometryError("not in the cone: x^2 <= 0")
        if intmat.vec_gcd(rep) != 1:
            raise GeometryError("representative must be primitive")
        object.__setattr__(self, "rep", rep)

    @property
    def norm(self) -> int:
        return self.lattice.norm(self.rep)

    def to_json(self) -> dict:
        return {"rep": list(self.rep), "lattice": self.lattice.label}


@dataclass(frozen=True)
class Hyperplane:
    """H_e for a normal e with e^2 < 0, stored as a primitive integral vector, sign normalized."""

    normal: Tuple[int, ...]
    lattice: Lattice

    def __post_init__(self):
        v = [Fraction(x) for x in self.normal]
        if len(v) != self.lattice.rank:
            raise GeometryError("normal has the wrong length")
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = tuple(int(x * den) for x in v)
        if not any(ints):
            raise GeometryError("zero normal")
        n = canonical_sign(intmat.primitive_part(ints))
        if self.lattice.norm(n) >= 0:
            raise GeometryError("normal must have negative square")
        object.__setattr__(self, "normal", n)

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "lattice": self.lattice.label}


def in_half_cone(L: Lattice, x: Sequence[int], cone_ref: Sequence[int]) -> bool:
    return L.norm(x) > 0 and L.inner(x, cone_ref) > 0


def ray_of(L: Lattice, x: Sequence[int], cone_ref: Sequence[int]) -> HyperbolicPoint:
    x = tuple(int(c) for c in x)
    if L.norm(x) <= 0:
        raise GeometryError("not in the cone: x^2 <= 0")
    rep = intmat.primitive_part(x)
    if L.inner(rep, cone_ref) < 0:
        rep = tuple(-c for c in rep)
    return HyperbolicPoint(rep, L)


def _same(p: HyperbolicPoint, H: Hyperplane):
    if p.lattice != H.lattice:
        raise GeometryError("point and hyperplane live in different lattices")


def on_hyperplane(p: HyperbolicPoint, H: Hyperplane) -> bool:
    _same(p, H)
    return p.lattice.inner(p.rep, H.normal) == 0


def separation(p: HyperbolicPoint, H: Hyperplane) -> Fraction:
    """(x.e)^2 / (x^2 (-e^2)), the squared hyperbolic sine of the distance from p to H."""
    _same(p, H)
    L = p.lattice
    xe = L.inner(p.rep, H.normal)
    return Fraction(xe * xe, p.norm * -L.norm(H.normal))


def hyperplanes_near(p: HyperbolicPoint, a: int, radius, norm_lo: int = -2) -> List[Tuple[int, ...]]:
    """All y = a e in the lattice with e^2 in [norm_lo, 0) and separation(p, H_e) <= radius, up to sign.

    Uses the positive definite majorant P(y) = 2 (x.y)^2 / x^2 - y^2 on the lattice.
    """
    L = p.lattice
    r = Fraction(radius)
    if r < 0:
        raise GeometryError("radius must be non-negative")
    x = p.rep
    x2 = p.norm
    Gx = intmat.matvec(L.gram, x)
    n = L.rank
    P = [[Fraction(2 * Gx[i] * Gx[j], x2) - L.gram[i][j] for j in range(n)] for i in range(n)]
    lo = Fraction(norm_lo) * a * a
    bound = -lo * (1 + 2 * r)
    out = set()
    for y in enumerate_positive(P, bound):
        y2 = L.norm(y)
        if not (lo <= y2 < 0):
            continue
        xy = L.inner(x, y)
        if Fraction(xy * xy, x2 * -y2) <= r:
            out.add(canonical_sign(y))
    return sorted(out)
