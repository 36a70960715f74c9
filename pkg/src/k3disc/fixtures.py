"""The shipped demonstration instance: an admissible T1 of signature (2,3) inside the K3 lattice.

``search_t1`` scans direct sums of the blocks U(2), U(4), <4>, <-4> by rank and then
lexicographically, and keeps the first of signature (2,k), k >= 3, whose
admissibility is fully certified.  ``golden_condition`` embeds the winner explicitly
and returns S1 = T1^perp with a basis in which the whole coordinate box [1, B]^17
lies in the positive half-cone.
"""
from __future__ import annotations

import json
import random
from functools import lru_cache
from importlib import resources
from itertools import combinations_with_replacement
from typing import List, Sequence, Tuple

from . import intmat
from .conditions import PicardCondition, SearchParams, T1Record, make_condition, t1_admissible
from .lattice import (
    K3_E8_OFFSETS, K3_U_OFFSETS, Lattice, direct_sum, hyperbolic_plane_scaled, k3_lattice, rank_one,
)
from .sublattice import SublatticeEmbedding, is_primitive, orthogonal_complement

BLOCKS = ("U(2)", "U(4)", "<4>", "<-4>")
_SIG = {"U(2)": (1, 1), "U(4)": (1, 1), "<4>": (1, 0), "<-4>": (0, 1)}


def block_lattice(name: str) -> Lattice:
    return {"U(2)": lambda: hyperbolic_plane_scaled(2), "U(4)": lambda: hyperbolic_plane_scaled(4),
            "<4>": lambda: rank_one(4), "<-4>": lambda: rank_one(-4)}[name]()


def candidate_sums(max_rank: int = 6):
    """Multisets of blocks in order of rank, then lexicographic in BLOCKS order."""
    for rank in range(1, max_rank + 1):
        found = []
        for k in range(1, rank + 1):
            for combo in combinations_with_replacement(range(len(BLOCKS)), k):
                if sum(2 if BLOCKS[i].startswith("U") else 1 for i in combo) == rank:
                    found.append(combo)
        for combo in sorted(found):
            yield tuple(BLOCKS[i] for i in combo)


def search_t1(max_rank: int = 6, params: SearchParams = SearchParams()) -> Tuple[Tuple[str, ...], T1Record, List[dict]]:
    log = []
    for combo in candidate_sums(max_rank):
        p = sum(_SIG[b][0] for b in combo)
        q = sum(_SIG[b][1] for b in combo)
        if p != 2 or q < 3:
            continue
        T = direct_sum(*(block_lattice(b) for b in combo), label="+".join(combo))
        rec = t1_admissible(T, params)
        log.append({"blocks": list(combo), "admissible": rec.admissible, "summary": rec.summary()})
        if rec.admissible:
            return combo, rec, log
    raise RuntimeError("no admissible T1 among the candidate sums")


def _vec(n: int, entries) -> Tuple[int, ...]:
    v = [0] * n
    for i, x in entries:
        v[i] += x
    return tuple(v)


def t1_embedding() -> SublatticeEmbedding:
    """U(2) + U(2) + <-4> inside U + U + U + E8(-1) + E8(-1), written out by hand."""
    L = k3_lattice()
    n = L.rank
    u1, u2, u3 = K3_U_OFFSETS
    e8a, e8b = K3_E8_OFFSETS
    # first U(2): e1 + e2, f1 + f2
    a1 = _vec(n, [(u1, 1), (u2, 1)])
    b1 = _vec(n, [(u1 + 1, 1), (u2 + 1, 1)])
    # second U(2): e3, e3 + 2 f3 + w with w = alpha1 + alpha2 of norm -4 in the first E8(-1)
    a2 = _vec(n, [(u3, 1)])
    b2 = _vec(n, [(u3, 1), (u3 + 1, 2), (e8a, 1), (e8a + 1, 1)])
    # <-4>: alpha1 + alpha2 in the second E8(-1)
    g = _vec(n, [(e8b, 1), (e8b + 1, 1)])
    E = SublatticeEmbedding.from_vectors(L, [a1, b1, a2, b2, g], "T1")
    assert is_primitive(E)
    return E


MIX_SEED = 2024
MIX_RANGE = 40


def positive_basis(S: SublatticeEmbedding, seed: int = MIX_SEED, mix_range: int = MIX_RANGE) -> List[Tuple[int, ...]]:
    """Basis of S whose members have positive norms and positive pairwise products.

    v1 = e' + f', v2 = e' + 2f' span the U(2) part; the negative definite part is mixed by a
    seeded unipotent matrix (so that small coordinate boxes hold points in general position)
    and then shifted by k v1 with the least k making every pairwise product positive.
    """
    L = S.ambient
    u1, u2 = K3_U_OFFSETS[0], K3_U_OFFSETS[1]
    ep = _vec(L.rank, [(u1, 1), (u2, -1)])
    fp = _vec(L.rank, [(u1 + 1, 1), (u2 + 1, -1)])
    v1 = tuple(x + y for x, y in zip(ep, fp))
    v2 = tuple(x + 2 * y for x, y in zip(ep, fp))
    coords = [tuple(int(c) for c in S.coords_of(v)) for v in (v1, v2)]
    rows = [list(intmat.matvec(S.gram, c)) for c in coords]
    K = intmat.integer_kernel(rows, S.rank)
    negs = [S.vector(c) for c in intmat.columns(K)]
    rng = random.Random(seed)
    mixed = []
    for i, nv in enumerate(negs):
        v = list(nv)
        for w in negs[i + 1:]:
            t = rng.randint(-mix_range, mix_range)
            v = [x + t * y for x, y in zip(v, w)]
        mixed.append(tuple(v))
    k = 1
    while True:
        basis = [v1, v2] + [tuple(x + k * y for x, y in zip(nv, v1)) for nv in mixed]
        if all(L.inner(x, y) > 0 for x in basis for y in basis):
            break
        k += 1
    E = SublatticeEmbedding.from_vectors(L, basis)
    assert abs(intmat.det(E.gram)) == abs(intmat.det(S.gram)) and all(S.contains(v) for v in basis)
    return basis


@lru_cache(maxsize=1)
def golden_condition() -> PicardCondition:
    T1 = t1_embedding()
    S = orthogonal_complement(T1, label="S1")
    basis = positive_basis(S)
    S1 = SublatticeEmbedding.from_vectors(S.ambient, basis, "S1")
    cond = make_condition(S1, cone_ref=tuple(int(i == 0) for i in range(S1.rank)))
    return cond


def golden_json(params: SearchParams = SearchParams()) -> dict:
    combo, rec, log = search_t1(params=params)
    cond = golden_condition()
    T = cond.T.lattice
    return {
        "blocks": list(combo),
        "search_log": log,
        "t1_gram": [list(r) for r in direct_sum(*(block_lattice(b) for b in combo)).gram],
        "t1_basis": [list(v) for v in t1_embedding().vectors],
        "t1_induced_gram": [list(r) for r in t1_embedding().gram],
        "t1_admissibility": rec.to_json(),
        "s1_basis": [list(v) for v in cond.S.vectors],
        "s1_signature": list(cond.S.signature),
        "cone_ref": list(cond.cone_ref),
        "a": cond.a,
        "b": cond.b,
        "complement_signature": list(T.signature),
    }


def load_golden() -> dict:
    with resources.files("k3disc").joinpath("data/golden_t1.json").open() as fh:
        return json.load(fh)


def condition_from_golden(data: dict | None = None) -> PicardCondition:
    data = data or load_golden()
    L = k3_lattice()
    S1 = SublatticeEmbedding.from_vectors(L, data["s1_basis"], "S1")
    return make_condition(S1, cone_ref=data["cone_ref"])
