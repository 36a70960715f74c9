"""Serialization and replay of point-check certificates.

Replay does two things: it recomputes the check from the recorded inputs and
compares canonical JSON byte for byte, and it independently re-validates every
witness (exact norms and membership) and every obstruction (value sets,
glue tables, integrality).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List

from . import intmat, modular
from .conditions import (
    PicardCondition, PointCheck, SearchParams, delta2_membership, lemma22_point_check, make_condition,
    theorem23_check,
)
from .enumeration import enumerate_positive
from .lattice import lattice_from_json
from .sublattice import SublatticeEmbedding, frac_mod1

FORMAT = "k3disc-certificate/1"
KINDS = ("avoidance", "hyperplane", "thm23")


def canonical_bytes(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def certificate_json(pc: PointCheck) -> dict:
    return {"format": FORMAT, **pc.to_json()}


def dump(pc: PointCheck) -> str:
    return json.dumps(certificate_json(pc), sort_keys=True, indent=1) + "\n"


@dataclass
class ReplayReport:
    ok: bool = True
    errors: List[str] = field(default_factory=list)
    verdict: str | None = None

    def fail(self, msg: str):
        self.ok = False
        self.errors.append(msg)


def condition_from_json(obj: dict) -> PicardCondition:
    return _condition_cached(canonical_bytes(obj))


@lru_cache(maxsize=8)
def _condition_cached(key: bytes) -> PicardCondition:
    # conditions are immutable apart from memo tables of deterministic results
    obj = json.loads(key)
    L = lattice_from_json(obj["ambient"])
    S = SublatticeEmbedding.from_vectors(L, intmat.transpose(obj["basis"]) if obj["basis"] else [], "S1")
    return make_condition(S, require_k3=False, cone_ref=obj["cone_ref"])


def _inputs(cert: dict) -> dict:
    keys = ("kind", "condition", "params", "h", "S")
    out = {k: cert[k] for k in keys if k in cert}
    out["kind"] = "thm23" if cert["kind"] == "thm23" else "hyperplane"
    return out


def recompute(cert: dict) -> PointCheck:
    return _recompute_cached(canonical_bytes(_inputs(cert)))


@lru_cache(maxsize=32)
def _recompute_cached(key: bytes) -> PointCheck:
    cert = json.loads(key)
    cond = condition_from_json(cert["condition"])
    params = SearchParams.from_json(cert["params"])
    if cert["kind"] in ("avoidance", "hyperplane"):
        return lemma22_point_check(cond, cert["h"], params)
    S = SublatticeEmbedding.from_vectors(cond.ambient, intmat.transpose(cert["S"]), "S")
    return theorem23_check(cond, S, params)


def _first_difference(a, b, path="$") -> str:
    if type(a) is not type(b):
        return path
    if isinstance(a, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                return f"{path}.{k}"
            d = _first_difference(a[k], b[k], f"{path}.{k}")
            if d:
                return d
        return ""
    if isinstance(a, list):
        if len(a) != len(b):
            return path
        for i, (x, y) in enumerate(zip(a, b)):
            d = _first_difference(x, y, f"{path}[{i}]")
            if d:
                return d
        return ""
    return "" if a == b else path


def _validate_candidate(cond: PicardCondition, cert: dict, entry: dict, constraints, rep: ReplayReport, idx: int):
    a, b = cond.a, cond.b
    L = cond.ambient
    ya = tuple(entry["delta_S_times_a"])
    cs = cond.S.coords_of(ya)
    if cs is None:
        rep.fail(f"candidate {idx}: a*delta_S is not in S tensor Q")
        return
    cs = tuple(x / a for x in cs)
    if any(x.denominator != 1 for x in intmat.matvec(cond.S.gram, cs)):
        rep.fail(f"candidate {idx}: delta_S is not in the dual lattice")
    norm = cond.S.lattice.norm(cs)
    if str(norm) != entry["norm"] or not (-2 <= norm < 0):
        rep.fail(f"candidate {idx}: bad norm {entry['norm']}")
    for v in constraints:
        if sum(x * y for x, y in zip(intmat.matvec(cond.S.gram, v), cs)) != 0:
            rep.fail(f"candidate {idx}: not orthogonal to the constraint")
    verdict = entry["verdict"]
    tag = verdict["tag"]
    if tag == "YES":
        delta = tuple(verdict["witness"])
        dec = delta2_membership(cond, delta)
        if dec is None or cond.S.dual_coords(delta) != cs:
            rep.fail(f"candidate {idx}: YES witness does not revalidate")
        return
    if tag == "UNKNOWN":
        return
    obs = verdict["obstruction"]
    partners = cond.glue.partners(cs)
    if obs["kind"] == "glue":
        if partners:
            rep.fail(f"candidate {idx}: glue obstruction claimed but partners exist")
        return
    if obs["kind"] != "lift":
        rep.fail(f"candidate {idx}: unknown obstruction kind {obs['kind']!r}")
        return
    listed = [tuple(Fraction(x) for x in c["t_class"]) for c in obs["cosets"]]
    if sorted(listed) != sorted(partners):
        rep.fail(f"candidate {idx}: coset list differs from the glue table")
    t_norm = -2 - norm
    G_T = cond.T.gram
    for c in obs["cosets"]:
        tau = tuple(Fraction(x) for x in c["t_class"])
        reason = c["reason"]
        k = reason["kind"]
        if k == "zero-norm":
            good = t_norm == 0 and any(tau)
        elif k == "integrality":
            good = (b * b * t_norm).denominator != 1
        elif k == "modular":
            off = tuple(int(b * x) for x in tau)
            target = b * b * t_norm
            good = target.denominator == 1 and modular.check_obstruction(G_T, int(target), reason, off, b)
        elif k == "definite-coset":
            neg = [[-x for x in row] for row in G_T]
            good = cond.T.lattice.is_negative_definite() and not enumerate_positive(neg, -t_norm, -t_norm, shift=tau)
        else:
            good = False
        if not good:
            rep.fail(f"candidate {idx}: coset {c['t_class']} obstruction {k!r} does not recompute")


def _validate_zero_branch(cond: PicardCondition, zb: dict, rep: ReplayReport):
    T = cond.T.lattice
    if zb["tag"] == "YES":
        w = tuple(zb["witness"])
        if len(w) != T.rank or T.norm(w) != -2:
            rep.fail("zero branch: witness is not a root of T")
    elif zb["tag"] == "NO":
        obs = zb["obstruction"]
        if obs.get("kind") == "modular":
            if not modular.check_obstruction(T.gram, -2, obs):
                rep.fail("zero branch: modular obstruction does not recompute")
        elif obs.get("kind") in ("definite-sign", "definite-empty"):
            sig = T.signature
            if sig.p and sig.q:
                rep.fail("zero branch: definite obstruction on an indefinite lattice")
            elif sig.q and obs["kind"] == "definite-empty":
                neg = [[-x for x in row] for row in T.gram]
                if enumerate_positive(neg, 2, 2):
                    rep.fail("zero branch: T has roots")
        else:
            rep.fail("zero branch: unknown obstruction")


def replay(text: str | bytes) -> ReplayReport:
    rep = ReplayReport()
    try:
        cert = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        rep.fail(f"not valid JSON: {exc}")
        return rep
    if not isinstance(cert, dict) or cert.get("format") != FORMAT or cert.get("kind") not in KINDS:
        rep.fail("not a certificate of a known kind")
        return rep
    try:
        pc = recompute(cert)
    except Exception as exc:  # any failure to rebuild is a failed replay
        rep.fail(f"recomputation failed: {type(exc).__name__}: {exc}")
        return rep
    fresh = certificate_json(pc)
    if canonical_bytes(fresh) != canonical_bytes(cert):
        rep.fail(f"recomputed certificate differs at {_first_difference(fresh, cert) or '$'}")
    rep.verdict = fresh["verdict"]
    cond = pc.cond
    if cert["kind"] in ("avoidance", "hyperplane"):
        constraints = [cond.s_coords(cert["h"])]
    else:
        constraints = [cond.s_coords(v) for v in intmat.transpose(cert["S"])]
    try:
        _validate_zero_branch(cond, cert["zero_branch"], rep)
        for i, entry in enumerate(cert["candidates"]):
            _validate_candidate(cond, cert, entry, constraints, rep, i)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        rep.fail(f"malformed certificate: {type(exc).__name__}: {exc}")
    if cert["kind"] == "avoidance" and cert.get("verdict") != "NO":
        rep.fail("avoidance certificate without a NO verdict")
    return rep
