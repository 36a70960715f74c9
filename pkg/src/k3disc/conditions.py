"""Conditions on Picard lattices and the root family attached to a pair S1 < L.

Everything is exact.  Candidate normals delta_S are enumerated in the dual
lattice S1* (which contains every projection pi_S1(L)), restricted to the
orthogonal complement of h (or of a sublattice S), with -2 <= delta_S^2 < 0.
Each candidate is then lifted through the glue group to a full delta in L.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import intmat, modular
from .parallel import max_threads, ordered_map
from .enumeration import (
    NO, UNKNOWN, YES, Verdict, canonical_sign, combine, enumerate_positive, first_hit,
    isotropic_rank2_search, lattice_moduli, represents,
)
from .lattice import Lattice, LatticeError, Signature, k3_lattice
from .sublattice import (
    FracVec, SublatticeEmbedding, frac_mod1, glue_group, is_primitive, orthogonal_complement,
    projection_denominator, saturate,
)


class ConditionError(LatticeError):
    def __init__(self, message: str, saturation: SublatticeEmbedding | None = None):
        super().__init__(message)
        self.saturation = saturation


class SearchExhausted(RuntimeError):
    def __init__(self, message: str, explored: dict):
        super().__init__(message)
        self.explored = explored


@dataclass(frozen=True)
class SearchParams:
    moduli: Optional[Tuple[int, ...]] = None
    box_bound: int = 2
    early_exit: bool = True
    method: str = "dual"

    def __post_init__(self):
        if self.box_bound < 0:
            raise ValueError("box bound must be non-negative")
        if self.moduli is not None:
            if any(m <= 1 for m in self.moduli):
                raise ValueError("moduli must exceed 1")
            object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if self.method not in ("dual", "scaled"):
            raise ValueError(f"unknown candidate method {self.method!r}")

    def to_json(self) -> dict:
        return {"moduli": list(self.moduli) if self.moduli is not None else None,
                "box_bound": self.box_bound, "early_exit": self.early_exit, "method": self.method}

    @classmethod
    def from_json(cls, obj: dict) -> "SearchParams":
        m = obj.get("moduli")
        return cls(tuple(m) if m is not None else None, int(obj.get("box_bound", 2)),
                   bool(obj.get("early_exit", True)), obj.get("method", "dual"))


@dataclass(frozen=True)
class TranscendentalData:
    T: SublatticeEmbedding

    @property
    def signature(self) -> Signature:
        return self.T.signature

    @property
    def domain_dimension(self) -> int:
        return self.T.rank - 2


def _positive_direction(G) -> Tuple[int, ...]:
    """An integral vector of positive norm (G must have one)."""
    n = len(G)
    for i in range(n):
        if G[i][i] > 0:
            return tuple(int(j == i) for j in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            for s in (1, -1):
                v = [0] * n
                v[i], v[j] = 1, s
                if G[i][i] + G[j][j] + 2 * s * G[i][j] > 0:
                    return tuple(v)
    # congruence diagonalization over Q, tracking the basis change
    A = [[Fraction(x) for x in row] for row in G]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is None:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    continue
                for r in range(n):
                    A[r][k] += A[r][j]
                A[k] = [x + y for x, y in zip(A[k], A[j])]
                for r in range(n):
                    P[r][k] += P[r][j]
            else:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
                for row in P:
                    row[k], row[j] = row[j], row[k]
        if A[k][k] == 0:
            continue
        for j in range(k + 1, n):
            f = A[k][j] / A[k][k]
            if f:
                for r in range(n):
                    A[r][j] -= f * A[r][k]
                A[j] = [x - f * y for x, y in zip(A[j], A[k])]
                for r in range(n):
                    P[r][j] -= f * P[r][k]
        if A[k][k] > 0:
            col = [P[r][k] for r in range(n)]
            den = 1
            for x in col:
                den = den * x.denominator // intmat.vec_gcd([den, x.denominator])
            return intmat.primitive_part([int(x * den) for x in col])
    raise ConditionError("lattice has no positive vector")


@dataclass(frozen=True)
class PicardCondition:
    """A primitive hyperbolic sublattice S of the ambient lattice with cached complement data."""

    S: SublatticeEmbedding
    cone_ref: Tuple[int, ...]

    @property
    def ambient(self) -> Lattice:
        return self.S.ambient

    @property
    def rank(self) -> int:
        return self.S.rank

    @cached_property
    def T(self) -> SublatticeEmbedding:
        return orthogonal_complement(self.S, label="T")

    @cached_property
    def transcendental(self) -> TranscendentalData:
        return TranscendentalData(self.T)

    @cached_property
    def a(self) -> int:
        return projection_denominator(self.S)

    @cached_property
    def b(self) -> int:
        return projection_denominator(self.T)

    @property
    def bounds(self) -> Tuple[int, int]:
        return 2 * self.a ** 2, 2 * self.b ** 2

    @cached_property
    def glue(self):
        return glue_group(self.S, self.T)

    @cached_property
    def _s_inverse(self) -> Tuple[intmat.IntMatrix, int]:
        return intmat.rational_inverse(self.S.gram)

    @cached_property
    def _value_sets(self) -> Dict[tuple, list | None]:
        return {}

    @cached_property
    def _memo(self) -> dict:
        return {}

    def s_coords(self, v: Sequence[int]) -> Tuple[int, ...]:
        c = self.S.coords_of(v)
        if c is None or any(x.denominator != 1 for x in c):
            raise ConditionError(f"vector {list(v)} is not in S")
        return tuple(int(x) for x in c)

    def in_half_cone(self, s_coords: Sequence[int]) -> bool:
        G = self.S.gram
        x = s_coords
        n = len(x)
        q = sum(x[i] * G[i][j] * x[j] for i in range(n) for j in range(n))
        return q > 0 and sum(x[i] * G[i][j] * self.cone_ref[j] for i in range(n) for j in range(n)) > 0

    def to_json(self) -> dict:
        from .lattice import lattice_to_json
        return {"ambient": lattice_to_json(self.ambient), "basis": [list(r) for r in self.S.basis],
                "cone_ref": list(self.cone_ref)}


def is_k3_ambient(L: Lattice) -> bool:
    return L.gram == k3_lattice().gram


def make_condition(E: SublatticeEmbedding, require_k3: bool = True,
                   cone_ref: Sequence[int] | None = None) -> PicardCondition:
    if require_k3 and not is_k3_ambient(E.ambient):
        raise ConditionError("ambient lattice is not the K3 lattice")
    if E.rank == 0:
        raise ConditionError("condition has rank 0")
    if not is_primitive(E):
        sat = saturate(E)
        raise ConditionError(f"sublattice is not primitive; saturation basis {[list(r) for r in sat.basis]}", sat)
    p, q = E.signature
    if p != 1:
        raise ConditionError(f"not hyperbolic: signature ({p},{q})")
    ref = tuple(int(x) for x in cone_ref) if cone_ref is not None else _positive_direction(E.gram)
    if len(ref) != E.rank or E.lattice.norm(ref) <= 0:
        raise ConditionError("cone reference must have positive norm")
    return PicardCondition(E, ref)


@dataclass(frozen=True)
class RootDecomposition:
    delta: Tuple[int, ...]
    delta_S: FracVec
    delta_T: FracVec
    norm_S: Fraction
    norm_T: Fraction


def delta2_membership(cond: PicardCondition, delta: Sequence[int]) -> RootDecomposition | None:
    L = cond.ambient
    delta = tuple(int(x) for x in delta)
    if L.norm(delta) != -2:
        return None
    cs = cond.S.dual_coords(delta)
    ds = cond.S.vector(cs)
    dt = tuple(Fraction(x) - y for x, y in zip(delta, ds))
    ns = cond.S.lattice.norm(cs)
    nt = -2 - ns
    if not (ns < 0 or all(x == 0 for x in ds)):
        return None
    if not (nt < 0 or all(x == 0 for x in dt)):
        return None
    ct = cond.T.dual_coords(delta)
    assert all((cond.a * x).denominator == 1 for x in cs)
    assert all((cond.b * x).denominator == 1 for x in ct)
    assert -2 * cond.a ** 2 <= cond.a ** 2 * ns <= 0 and (cond.a ** 2 * ns).denominator == 1
    return RootDecomposition(delta, ds, dt, ns, nt)


# candidate normals -----------------------------------------------------------

@dataclass(frozen=True)
class Candidate:
    coords: FracVec          # S-coordinates of delta_S
    times_a: Tuple[int, ...]  # ambient coordinates of a * delta_S
    norm: Fraction

    def to_json(self) -> dict:
        return {"delta_S_times_a": list(self.times_a), "norm": str(self.norm)}


def _make_candidate(cond: PicardCondition, coords: Sequence[Fraction]) -> Candidate:
    coords = tuple(Fraction(x) for x in coords)
    v = cond.S.vector(coords)
    times_a = tuple(int(cond.a * x) for x in v)
    assert all((cond.a * x).denominator == 1 for x in v)
    return Candidate(coords, times_a, cond.S.lattice.norm(coords))


def _canonical(cond: PicardCondition, cands: List[Candidate]) -> List[Candidate]:
    seen: Dict[tuple, Candidate] = {}
    for c in cands:
        key = canonical_sign(c.times_a)
        if key not in seen:
            if key != c.times_a:
                c = _make_candidate(cond, [-x for x in c.coords])
            seen[key] = c
    return [seen[k] for k in sorted(seen)]


def _dual_candidates(cond: PicardCondition, constraints: Sequence[Sequence[int]]) -> List[Candidate]:
    """delta_S in S* with v . delta_S = 0 for all v in ``constraints`` (S-coordinates), -2 <= norm < 0."""
    r = cond.rank
    K = intmat.integer_kernel([list(v) for v in constraints], r) if constraints else intmat.identity(r)
    k = intmat.ncols(K)
    if k == 0:
        return []
    N, d = cond._s_inverse
    # pairing vectors w = K z give delta_S = G^-1 w, of norm z^T (K^T N K) z / d
    Lam = intmat.matmul(intmat.transpose(K), intmat.matmul(N, K))
    neg = [[-x for x in row] for row in Lam]
    out = []
    for z in enumerate_positive(neg, 2 * d):
        if not any(z):
            continue
        w = intmat.matvec(K, z)
        coords = tuple(Fraction(x, d) for x in intmat.matvec(N, w))
        out.append(_make_candidate(cond, coords))
    return _canonical(cond, out)


def _scaled_candidates(cond: PicardCondition, constraints: Sequence[Sequence[int]]) -> List[Candidate]:
    """delta_S = y / a for y in the saturated complement with y^2 in [-2a^2, -1]."""
    r = cond.rank
    G = cond.S.gram
    a = cond.a
    if constraints:
        rows = [list(intmat.matvec(G, v)) for v in constraints]
        K = intmat.integer_kernel(rows, r)
    else:
        K = intmat.identity(r)
    if intmat.ncols(K) == 0:
        return []
    GK = intmat.matmul(intmat.transpose(K), intmat.matmul(G, K))
    neg = [[-x for x in row] for row in GK]
    out = []
    for y in enumerate_positive(neg, 2 * a * a, 1):
        coords = tuple(Fraction(x, a) for x in intmat.matvec(K, y))
        out.append(_make_candidate(cond, coords))
    return _canonical(cond, out)


def is_dual_element(cond: PicardCondition, c: Candidate) -> bool:
    return all(x.denominator == 1 for x in intmat.matvec(cond.S.gram, c.coords))


def _check_h(cond: PicardCondition, h: Sequence[int]) -> Tuple[int, ...]:
    hs = cond.s_coords(h)
    if cond.S.lattice.norm(hs) <= 0:
        raise ConditionError("h^2 must be positive")
    g = intmat.vec_gcd(hs)
    if g != 1:
        raise ConditionError(f"h is not primitive; use {list(intmat.primitive_part(h))}")
    return hs


def hyperplane_candidates_at(cond: PicardCondition, h: Sequence[int], method: str = "dual") -> List[Candidate]:
    hs = _check_h(cond, h)
    if method == "dual":
        return _dual_candidates(cond, [hs])
    if method == "scaled":
        return _scaled_candidates(cond, [hs])
    raise ValueError(f"unknown method {method!r}")


# lifting through the glue ------------------------------------------------------

def _t_moduli(cond: PicardCondition, params: SearchParams) -> Tuple[int, ...]:
    base = lattice_moduli(cond.T.lattice, params.moduli)
    b2 = cond.b ** 2
    mods: List[int] = []
    for m in list(base) + [m * b2 for m in base]:
        if m not in mods:
            mods.append(m)
    return tuple(mods)


def _coset_value_set(cond: PicardCondition, offset: Tuple[int, ...], m: int):
    """Per-prime-power residue tables of the coset offset + b Z^n, cached on the condition."""
    key = (offset, m)
    cache = cond._value_sets
    if key not in cache:
        cache[key] = modular.residue_tables(cond.T.gram, m, offset, cond.b, modular.MAX_ENTRIES)
    return cache[key]


def _coset_obstruction(cond: PicardCondition, offset: Tuple[int, ...], target: int, moduli) -> dict | None:
    for m in moduli:
        tables = _coset_value_set(cond, offset, m)
        if tables is not None and not all(vals[target % q] for q, vals in tables):
            return {"kind": "modular", "modulus": m, "residue": target % m}
    return None


def lift_check(cond: PicardCondition, cand: Candidate, params: SearchParams = SearchParams()) -> Verdict:
    """Is there delta in L with pi_S(delta) = delta_S, delta^2 = -2 and delta_T^2 < 0 or delta_T = 0?"""
    if not (-2 <= cand.norm < 0):
        raise ConditionError("malformed candidate: norm outside [-2, 0)")
    partners = cond.glue.partners(cand.coords)
    if not partners:
        return Verdict.no({"kind": "glue"})
    t_norm = -2 - cand.norm
    b = cond.b
    T = cond.T
    ds_amb = cond.S.vector(cand.coords)
    reasons = []
    unknown = False
    for tau in partners:
        tau_j = [str(x) for x in tau]
        if t_norm == 0:
            if all(x == 0 for x in tau):
                w = tuple(int(x) for x in ds_amb)
                return Verdict.yes(w)
            reasons.append({"t_class": tau_j, "reason": {"kind": "zero-norm"}})
            continue
        target = b * b * t_norm
        if target.denominator != 1:
            reasons.append({"t_class": tau_j, "reason": {"kind": "integrality", "scaled_target": str(target)}})
            continue
        target = int(target)
        offset = tuple(int(b * x) for x in tau)
        if T.rank and T.lattice.is_negative_definite():
            neg = [[-x for x in row] for row in T.gram]
            hits = enumerate_positive(neg, -t_norm, -t_norm, shift=tau)
            if hits:
                return Verdict.yes(_assemble(cond, ds_amb, hits[0]))
            reasons.append({"t_class": tau_j, "reason": {"kind": "definite-coset"}})
            continue
        obs = _coset_obstruction(cond, offset, target, _t_moduli(cond, params))
        if obs is not None:
            reasons.append({"t_class": tau_j, "reason": obs})
            continue
        z = first_hit(T.gram, target, params.box_bound, offset, b)
        if z is not None:
            dt = tuple(Fraction(o + b * zi, b) for o, zi in zip(offset, z))
            return Verdict.yes(_assemble(cond, ds_amb, dt))
        unknown = True
    if unknown:
        return Verdict.unknown(params.box_bound)
    return Verdict.no({"kind": "lift", "cosets": reasons})


def _assemble(cond: PicardCondition, ds_amb, dt_coords) -> Tuple[int, ...]:
    dt = cond.T.vector(dt_coords)
    delta = [x + y for x, y in zip(ds_amb, dt)]
    assert all(Fraction(x).denominator == 1 for x in delta)
    delta = tuple(int(x) for x in delta)
    assert cond.ambient.norm(delta) == -2
    return delta


# point checks ------------------------------------------------------------------

@dataclass
class PointCheck:
    kind: str
    cond: PicardCondition
    subject: dict
    params: SearchParams
    zero_branch: Verdict
    candidates: List[Tuple[Candidate, Verdict]]
    warnings: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        vs = [self.zero_branch] + [v for _, v in self.candidates]
        return combine(vs)

    @property
    def witness(self) -> Tuple[int, ...] | None:
        """A delta in the ambient lattice (the zero-branch certificate itself is in T-coordinates)."""
        if self.zero_branch.is_yes:
            return tuple(int(x) for x in self.cond.T.vector(self.zero_branch.witness))
        for _, v in self.candidates:
            if v.is_yes:
                return v.witness
        return None

    def to_json(self) -> dict:
        kind = self.kind
        if kind == "hyperplane" and self.verdict == NO:
            kind = "avoidance"
        return {
            "kind": kind,
            "condition": self.cond.to_json(),
            **self.subject,
            "params": {**self.params.to_json(), "a": self.cond.a, "b": self.cond.b,
                       "A": self.cond.bounds[0], "B": self.cond.bounds[1],
                       "t_moduli": list(_t_moduli(self.cond, self.params))},
            "zero_branch": self.zero_branch.to_json(),
            "candidates": [{**c.to_json(), "verdict": v.to_json()} for c, v in self.candidates],
            "verdict": self.verdict,
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class AvoidanceCertificate:
    """A NO point check: h lies on no hyperplane of the family."""

    h: Tuple[int, ...]
    check: PointCheck

    def __post_init__(self):
        if self.check.verdict != NO:
            raise ConditionError("avoidance certificate needs a NO verdict")

    def to_json(self) -> dict:
        return self.check.to_json()


def zero_branch(cond: PicardCondition, params: SearchParams) -> Verdict:
    """delta in T with delta^2 = -2; then pi_S(delta) = 0 and every point is affected."""
    key = ("zero", params.moduli, params.box_bound)
    if key not in cond._memo:
        cond._memo[key] = represents(cond.T.lattice, -2, params.moduli, params.box_bound)
    return cond._memo[key]


def _condition_warnings(cond: PicardCondition, params: SearchParams, iso_required: bool) -> List[str]:
    key = ("warn", params.moduli, params.box_bound, iso_required)
    if key not in cond._memo:
        cond._memo[key] = _compute_warnings(cond, params, iso_required)
    return list(cond._memo[key])


def _compute_warnings(cond: PicardCondition, params: SearchParams, iso_required: bool) -> List[str]:
    T = cond.T.lattice
    p, q = T.signature
    out = []
    if p != 2:
        out.append(f"T1 has signature ({p},{q}), not (2,k)")
        return out
    rec = t1_admissible(T, params, require_isotropic=iso_required)
    if not rec.admissible:
        out.append("T1 admissibility is not certified: " + rec.summary())
    return out


def _run_checks(cond, cands, params) -> List[Tuple[Candidate, Verdict]]:
    if max_threads() > 1 and len(cands) > 1:
        verdicts = ordered_map(lambda c: lift_check(cond, c, params), cands)
    else:
        verdicts = None
    out = []
    for i, c in enumerate(cands):
        v = verdicts[i] if verdicts is not None else lift_check(cond, c, params)
        out.append((c, v))
        if v.is_yes and params.early_exit:
            break
    return out


def lemma22_point_check(cond: PicardCondition, h: Sequence[int], params: SearchParams = SearchParams()) -> PointCheck:
    """YES if h lies on some H_{pi_S(delta)} (delta in the root family), NO with a full certificate otherwise."""
    hs = _check_h(cond, h)
    subject = {"h": [int(x) for x in h], "h_square": cond.S.lattice.norm(hs)}
    warnings = _condition_warnings(cond, params, iso_required=cond.T.rank == 4)
    if cond.T.rank < 4:
        warnings.append("rank of T1 is below 4")
    zb = zero_branch(cond, params)
    if zb.is_yes and params.early_exit:
        return PointCheck("hyperplane", cond, subject, params, zb, [], warnings)
    cands = hyperplane_candidates_at(cond, h, params.method)
    return PointCheck("hyperplane", cond, subject, params, zb, _run_checks(cond, cands, params), warnings)


def theorem23_check(cond: PicardCondition, S: SublatticeEmbedding, params: SearchParams = SearchParams()) -> PointCheck:
    """Is there delta in the root family of S1 = cond.S with S . delta = 0?"""
    if S.ambient != cond.ambient:
        raise ConditionError("S and S1 live in different ambient lattices")
    rows = []
    for v in S.vectors:
        if not cond.S.contains(v):
            raise ConditionError(f"S is not contained in S1: {list(v)} is outside")
        rows.append(cond.s_coords(v))
    if S.rank == 0 or S.signature.p != 1:
        raise ConditionError("S must be hyperbolic")
    warnings = []
    if cond.rank > 18:
        warnings.append(f"rank of S1 is {cond.rank} > 18")
    warnings += _condition_warnings(cond, params, iso_required=cond.rank == 18 or cond.T.rank == 4)
    subject = {"S": [list(r) for r in S.basis]}
    zb = zero_branch(cond, params)
    if zb.is_yes and params.early_exit:
        return PointCheck("thm23", cond, subject, params, zb, [], warnings)
    cands = (_dual_candidates if params.method == "dual" else _scaled_candidates)(cond, rows)
    return PointCheck("thm23", cond, subject, params, zb, _run_checks(cond, cands, params), warnings)


# witness sweep -----------------------------------------------------------------

def sweep_order(rank: int, max_box: int | None = None) -> Iterator[Tuple[int, ...]]:
    """Shells of growing max-coordinate, each in lexicographic order with coordinates running B, ..., -B."""
    B = 1
    while max_box is None or B <= max_box:
        for z in product(range(B, -B - 1, -1), repeat=rank):
            if max(abs(x) for x in z) == B:
                yield z
        B += 1


def theorem21_witness(cond: PicardCondition, N: int, budget: int = 200,
                      params: SearchParams = SearchParams(), max_box: int | None = None,
                      max_scanned: int = 10 ** 6):
    """First primitive h in the sweep with h^2 > N and a NO point check.

    ``budget`` caps the number of point checks and ``max_scanned`` the number of sweep
    points visited.  Returns (h, AvoidanceCertificate, stats).
    """
    checked = 0
    scanned = 0
    frontier = []
    G = cond.S.gram
    for z in sweep_order(cond.rank, max_box):
        if scanned >= max_scanned:
            break
        scanned += 1
        if intmat.vec_gcd(z) != 1 or not cond.in_half_cone(z):
            continue
        hs2 = cond.S.lattice.norm(z)
        if hs2 <= N:
            continue
        h = cond.S.vector(z)
        pc = lemma22_point_check(cond, h, params)
        checked += 1
        if pc.verdict == NO:
            stats = {"checked": checked, "scanned": scanned, "unknown": frontier, "h_square": hs2}
            return h, AvoidanceCertificate(h, pc), stats
        if pc.verdict == UNKNOWN:
            frontier.append(list(h))
        if checked >= budget:
            break
    raise SearchExhausted(f"no witness with h^2 > {N} within {checked} point checks",
                          {"checked": checked, "scanned": scanned, "unknown": frontier})


# admissibility and small-rank reflectivity -------------------------------------------

@dataclass(frozen=True)
class T1Record:
    no_roots: Verdict
    no_isotropic_rank2: Optional[Verdict]
    rank_ok: bool

    @property
    def admissible(self) -> bool:
        iso_ok = self.no_isotropic_rank2 is None or self.no_isotropic_rank2.is_no
        return self.rank_ok and self.no_roots.is_no and iso_ok

    def summary(self) -> str:
        parts = [f"roots {self.no_roots.tag}"]
        if self.no_isotropic_rank2 is not None:
            parts.append(f"isotropic rank 2 {self.no_isotropic_rank2.tag}")
        parts.append("rank ok" if self.rank_ok else "rank < 4")
        return ", ".join(parts)

    def to_json(self) -> dict:
        return {"no_roots": self.no_roots.to_json(),
                "no_isotropic_rank2": self.no_isotropic_rank2.to_json() if self.no_isotropic_rank2 else None,
                "rank_ok": self.rank_ok, "admissible": self.admissible}


def t1_admissible(T: Lattice, params: SearchParams = SearchParams(), require_isotropic: bool | None = None) -> T1Record:
    """Hypotheses on T1: rank >= 4, no (-2)-vectors, and at rank 4 no isotropic rank-2 sublattice."""
    p, q = T.signature
    if p != 2:
        raise ConditionError(f"T1 must have signature (2,k), got ({p},{q})")
    roots = represents(T, -2, params.moduli, params.box_bound)
    need_iso = T.rank == 4 if require_isotropic is None else (require_isotropic or T.rank == 4)
    iso = isotropic_rank2_search(T, params.box_bound, params.moduli) if need_iso else None
    return T1Record(roots, iso, T.rank >= 4)


def two_reflective_small_rank(S: Lattice) -> bool:
    from .binary import binary_represents
    if S.rank == 1:
        return True
    if S.rank != 2:
        raise ConditionError("only ranks 1 and 2 are covered")
    if tuple(S.signature) != (1, 1):
        raise ConditionError("rank-2 input must be hyperbolic")
    v2, v0 = binary_represents(S, -2), binary_represents(S, 0)
    if v2.is_yes or v0.is_yes:
        return True
    if v2.is_no and v0.is_no:
        return False
    raise ConditionError("binary decision hit the node cap")
