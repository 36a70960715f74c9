from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from k3disc import kernels
from k3disc.enumeration import canonical_sign, coordinate_bound
from k3disc.hyperbolic import (
    GeometryError, HyperbolicPoint, Hyperplane, hyperplanes_near, in_half_cone, on_hyperplane, ray_of, separation,
)
from k3disc.lattice import direct_sum, hyperbolic_plane, rank_one


U = hyperbolic_plane()
L3 = direct_sum(U, rank_one(-2))


def test_basic_examples():
    p = HyperbolicPoint((1, 1), U)
    H = Hyperplane((1, -1), U)
    assert on_hyperplane(p, H) and separation(p, H) == 0
    q = HyperbolicPoint((1, 2), U)
    assert separation(q, H) == Fraction(1, 8)
    assert Hyperplane((Fraction(-1, 2), Fraction(1, 2)), U).normal == (1, -1)


def test_validation():
    with pytest.raises(GeometryError):
        HyperbolicPoint((1, 0), U)
    with pytest.raises(GeometryError):
        HyperbolicPoint((2, 2), U)
    with pytest.raises(GeometryError):
        Hyperplane((1, 1), U)
    with pytest.raises(GeometryError):
        Hyperplane((0, 0), U)
    with pytest.raises(GeometryError):
        separation(HyperbolicPoint((1, 1), U), Hyperplane((0, 0, 1), L3))


def test_ray_of():
    r = ray_of(U, (-2, -4), (1, 1))
    assert r.rep == (1, 2)
    assert in_half_cone(U, (1, 2), (1, 1)) and not in_half_cone(U, (-1, -2), (1, 1))


@given(st.integers(1, 6), st.integers(1, 6), st.integers(-3, 3), st.integers(0, 3))
def test_hyperplanes_near_matches_box(x, y, z, r):
    v = (x, y, z)
    if L3.norm(v) <= 0:
        return
    from math import gcd
    g = gcd(gcd(x, y), abs(z))
    v = tuple(c // g for c in v)
    p = HyperbolicPoint(v, L3)
    got = set(hyperplanes_near(p, 1, r))
    # box from the majorant P(e) = 2 (v.e)^2 / v^2 - e^2 <= 2 (1 + 2r)
    Gv = [sum(L3.gram[i][j] * v[j] for j in range(3)) for i in range(3)]
    P = [[Fraction(2 * Gv[i] * Gv[j], L3.norm(v)) - L3.gram[i][j] for j in range(3)] for i in range(3)]
    box = coordinate_bound(P, 2 * (1 + 2 * r))
    want = set()
    for e in kernels.box_hits(L3.gram, box, -2, limit=0):
        if separation(p, Hyperplane(e, L3)) <= r:
            want.add(canonical_sign(e))
    assert got == want
    if r >= 1:
        assert got  # some root hyperplane is always this close
