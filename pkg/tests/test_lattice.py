import json

import pytest
from hypothesis import given

from k3disc import intmat
from k3disc.lattice import (
    Lattice, LatticeError, direct_sum, e8_minus, gram_signature, hyperbolic_plane, hyperbolic_plane_scaled,
    k3_lattice, lattice_from_json, lattice_to_json, rank_one, rescale,
)
from k3disc.reduction import gram_schmidt, lll_gram
from strategies import even_lattices, negative_definite


def test_k3_lattice():
    L = k3_lattice()
    assert L.rank == 22
    assert L.is_even and L.is_unimodular
    assert tuple(L.signature) == (3, 19)
    assert L.determinant == -1
    assert str(L.discriminant_group) == "trivial"


def test_e8():
    E = e8_minus()
    assert E.determinant == 1 and tuple(E.signature) == (0, 8)
    assert E.is_negative_definite()


@pytest.mark.parametrize("L, orders", [
    (hyperbolic_plane_scaled(2), (2, 2)),
    (rank_one(-4), (4,)),
    (direct_sum(hyperbolic_plane_scaled(2), rank_one(4)), (2, 2, 4)),
    (Lattice([[-2, 1], [1, -2]]), (3,)),
])
def test_discriminant_groups(L, orders):
    d = L.discriminant_group
    assert d.cyclic_orders == orders
    assert d.order == abs(L.determinant)


def test_rejects_bad_input():
    with pytest.raises(LatticeError):
        Lattice([[1, 2], [3, 4]])
    with pytest.raises(LatticeError):
        Lattice([[0, 0], [0, 0]])
    with pytest.raises(LatticeError):
        rank_one(3)
    with pytest.raises(LatticeError):
        rescale(hyperbolic_plane(), 0)
    with pytest.raises(LatticeError):
        k3_lattice().inner((1, 0), (0, 1))


def test_json_roundtrip_and_constructs():
    L = direct_sum(hyperbolic_plane_scaled(2), rank_one(-4), label="T")
    assert lattice_from_json(json.loads(json.dumps(lattice_to_json(L)))) == L
    assert lattice_from_json({"construct": "k3"}) == k3_lattice()
    s = lattice_from_json({"construct": "sum", "parts": [{"construct": "U", "scale": 2}, {"construct": "rank1", "n": -4}]})
    assert s.gram == L.gram
    for bad in ([[1]], {"gram": [[2, 1]]}, {"gram": [[2.5]]}, {"construct": "nope"}, {"foo": 1}):
        with pytest.raises(LatticeError):
            lattice_from_json(bad)


@given(even_lattices())
def test_signature_and_disc_invariants(L):
    p, q = L.signature
    assert p + q == L.rank
    assert (-1) ** q * abs(L.determinant) == L.determinant
    assert L.discriminant_group.order == abs(L.determinant)
    # invariant under a unimodular change of basis
    n = L.rank
    U = [[int(i == j) + (1 if j == i + 1 else 0) for j in range(n)] for i in range(n)]
    G2 = intmat.matmul(intmat.transpose(U), intmat.matmul(L.gram, U))
    assert gram_signature(G2) == L.signature
    assert Lattice(G2).discriminant_group == L.discriminant_group


@given(negative_definite())
def test_lll_is_unimodular_and_preserves_form(L):
    P = [[-x for x in row] for row in L.gram]
    U = lll_gram(P)
    assert abs(intmat.det(U)) == 1
    R = intmat.matmul(intmat.transpose(U), intmat.matmul(P, U))
    mu, B = gram_schmidt(R)
    assert all(b > 0 for b in B)
    assert intmat.det(R) == intmat.det(P)
