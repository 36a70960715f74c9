import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from k3disc import kernels
from k3disc.enumeration import (
    NO, UNKNOWN, YES, EnumerationError, EnumerationRequest, Verdict, canonical_sign, check_verdict_witness,
    combine, coordinate_bound, definite_enumerate, dedupe_signs, enumerate_positive, first_hit,
    isotropic_rank2_search, represents, roots,
)
from k3disc.lattice import Lattice, direct_sum, e8_minus, hyperbolic_plane, hyperbolic_plane_scaled, rank_one
from strategies import negative_definite


def naive(L, lo, hi):
    P = [[-x for x in row] for row in L.gram]
    box = coordinate_bound(P, -lo)
    out = set()
    for t in range(lo, hi + 1):
        out |= set(kernels.box_hits(L.gram, box, t, limit=0))
    return sorted(out)


def test_e8_roots():
    r = roots(e8_minus())
    assert len(r) == 240
    assert len(roots(e8_minus(), dedupe_sign=True)) == 120
    assert all(e8_minus().norm(v) == -2 for v in r)


def test_a2_and_empty():
    A2 = Lattice([[-2, 1], [1, -2]])
    assert len(roots(A2)) == 6
    assert roots(rank_one(-4)) == []
    assert definite_enumerate(EnumerationRequest(rank_one(-4), -4, -4)) == [(-1,), (1,)]


@given(negative_definite(), st.integers(-12, -1))
def test_matches_naive(L, lo):
    got = definite_enumerate(EnumerationRequest(L, lo, -1))
    assert got == naive(L, lo, -1)
    assert got == sorted(got)


@given(negative_definite(n_max=3), st.data())
def test_shifted_enumeration(L, data):
    n = L.rank
    shift = tuple(Fraction(data.draw(st.integers(0, 3)), 4) for _ in range(n))
    P = [[-x for x in row] for row in L.gram]
    got = enumerate_positive(P, 10, shift=shift)
    # oracle: scaled lattice 4 x, x in shift + Z^n
    off = [int(4 * s) for s in shift]
    box = coordinate_bound(P, 10) + 2
    want = set()
    for t in range(0, 161):
        for z in kernels.box_hits(P, box, t, off, 4, limit=0, skip_zero=False):
            want.add(tuple(Fraction(o + 4 * zi, 4) for o, zi in zip(off, z)))
    assert set(got) == want


def test_request_validation():
    with pytest.raises(EnumerationError):
        EnumerationRequest(e8_minus(), -2, 1)
    with pytest.raises(EnumerationError):
        EnumerationRequest(e8_minus(), -1, -2)
    with pytest.raises(EnumerationError):
        definite_enumerate(EnumerationRequest(hyperbolic_plane(), -2, -2))


def test_sign_helpers():
    assert canonical_sign((0, -1, 2)) == (0, 1, -2)
    assert dedupe_signs([(1, 0), (-1, 0), (0, 1)]) == [(0, 1), (1, 0)]


@pytest.mark.parametrize("L, target, tag", [
    (hyperbolic_plane(), -2, YES),
    (hyperbolic_plane(), 0, YES),
    (direct_sum(rank_one(2), rank_one(-6)), -4, YES),
    (direct_sum(hyperbolic_plane_scaled(2), hyperbolic_plane_scaled(2)), -2, NO),
    (e8_minus(), -2, YES),
    (e8_minus(), 2, NO),
    (rank_one(-4), -2, NO),
])
def test_represents(L, target, tag):
    v = represents(L, target)
    assert v.tag == tag
    assert check_verdict_witness(L, target, v)


def test_represents_witnesses_are_small():
    assert represents(hyperbolic_plane(), -2, box_bound=1).witness == (1, -1)
    assert represents(direct_sum(rank_one(2), rank_one(-6)), -4).witness == (1, 1)
    v = represents(direct_sum(hyperbolic_plane_scaled(2), hyperbolic_plane_scaled(2)), -2)
    assert v.obstruction == {"kind": "modular", "modulus": 4, "residue": 2}


def test_unknown_when_box_too_small():
    # 6xy + 2z^2 = 8 at (1, 1, 1), outside a box of radius 0
    L = direct_sum(hyperbolic_plane_scaled(3), rank_one(2))
    v = represents(L, 8, box_bound=0)
    assert v.tag == UNKNOWN and v.bound == 0
    assert represents(L, 8, box_bound=1).tag == YES
    # 10 = 2z^2 mod 6 has no solution
    assert represents(L, 10).obstruction == {"kind": "modular", "modulus": 9, "residue": 1}


def test_first_hit_shells():
    U = hyperbolic_plane()
    assert first_hit(U.gram, 0, 3) == (-1, 0)
    assert first_hit(U.gram, 0, 3, offset=(1, 0)) == (0, 0)
    assert first_hit(U.gram, 100, 3) is None


def test_isotropic_rank2():
    UU2 = direct_sum(hyperbolic_plane_scaled(2), hyperbolic_plane_scaled(2))
    v = isotropic_rank2_search(UU2, 2)
    assert v.is_yes
    u, w = v.witness
    assert UU2.norm(u) == UU2.norm(w) == UU2.inner(u, w) == 0
    T = direct_sum(hyperbolic_plane_scaled(2), hyperbolic_plane_scaled(2), rank_one(-4))
    assert isotropic_rank2_search(T, 2).is_yes
    assert isotropic_rank2_search(direct_sum(hyperbolic_plane_scaled(2), rank_one(-4), rank_one(-4)), 2).obstruction["kind"] == "signature"
    # rank 4, determinant not a square
    L = direct_sum(hyperbolic_plane_scaled(2), rank_one(2), rank_one(-4))
    assert isotropic_rank2_search(L, 2).obstruction["kind"] in ("signature", "determinant-not-square")
    L = direct_sum(rank_one(2), rank_one(2), rank_one(-2), rank_one(-4))
    assert isotropic_rank2_search(L, 2).obstruction == {"kind": "determinant-not-square", "det": 32}


def test_verdict_json_and_combine():
    vs = [Verdict.no({"kind": "glue"}), Verdict.unknown(3), Verdict.yes((1, -1))]
    for v in vs:
        assert Verdict.from_json(json.loads(json.dumps(v.to_json()))) == v
    assert combine(vs) == YES
    assert combine(vs[:2]) == UNKNOWN
    assert combine(vs[:1]) == NO
    with pytest.raises(Exception):
        Verdict(YES, None, None, None)
