"""Command-line interface.  Exit codes: 0 decisive, 2 UNKNOWN, 1 error."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from . import certificates, conditions as C, enumeration as En, fixtures
from .binary import binary_represents
from .lattice import Lattice, LatticeError, lattice_from_json
from .sublattice import SublatticeEmbedding, embedding_from_json

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class CliError(Exception):
    pass


@dataclass
class JobConfig:
    inputs: List[str] = field(default_factory=list)
    moduli: Optional[tuple] = None
    box_bound: int = 2
    budget: int = 200
    out: Optional[str] = None
    replay: Optional[str] = None
    seed: int = 0

    def __post_init__(self):
        if self.box_bound <= 0 or self.budget <= 0:
            raise CliError("bounds must be positive")
        if self.moduli is not None and any(m <= 1 for m in self.moduli):
            raise CliError("moduli must exceed 1")

    def params(self, early_exit: bool = True) -> C.SearchParams:
        return C.SearchParams(self.moduli, self.box_bound, early_exit)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are errors, not UNKNOWN
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _read_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _load_lattice(path: str) -> Lattice:
    obj = _read_json(path)
    if isinstance(obj, dict) and "ambient" in obj and "basis" in obj:
        return embedding_from_json(obj).lattice
    return lattice_from_json(obj)


def _load_embedding(path: str) -> SublatticeEmbedding:
    obj = _read_json(path)
    if not isinstance(obj, dict) or "ambient" not in obj:
        raise CliError(f"{path}: an embedding needs 'ambient' and 'basis'")
    return embedding_from_json(obj)


def _load_condition(args) -> C.PicardCondition:
    if getattr(args, "golden", False):
        return fixtures.condition_from_golden()
    if not args.file:
        raise CliError("a condition file or --golden is required")
    obj = _read_json(args.file)
    E = embedding_from_json(obj)
    try:
        return C.make_condition(E, require_k3=not args.toy, cone_ref=obj.get("cone_ref"))
    except C.ConditionError as exc:
        raise CliError(f"{exc}\n{_echo(E)}")


def _echo(E: SublatticeEmbedding) -> str:
    return f"offending sublattice {E.label or 'S'} (basis vectors): {json.dumps([list(v) for v in E.vectors])}"


def _parse_vec(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("[]()").split(",") if x)
    except ValueError:
        raise CliError(f"cannot parse vector {text!r}")


def _moduli(text: str | None):
    return None if text is None else _parse_vec(text)


def _config(args) -> JobConfig:
    return JobConfig(inputs=[x for x in [getattr(args, "file", None)] if x], moduli=_moduli(getattr(args, "moduli", None)),
                     box_bound=getattr(args, "box_bound", 2), budget=getattr(args, "budget", 200),
                     out=getattr(args, "out", None), seed=getattr(args, "seed", 0))


def _emit(cfg: JobConfig, obj: dict | str):
    text = obj if isinstance(obj, str) else json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(f"wrote {cfg.out}")
    else:
        sys.stdout.write(text)


def _verdict_code(tag: str) -> int:
    return EXIT_UNKNOWN if tag == En.UNKNOWN else EXIT_OK


# commands --------------------------------------------------------------------

def cmd_lat_info(args) -> int:
    L = _load_lattice(args.file)
    parity = "even" if L.is_even else "odd"
    d = L.discriminant_group
    print(f"rank {L.rank}, signature {L.signature}, det {L.determinant}, {parity}, disc {d}")
    return EXIT_OK


def cmd_roots(args) -> int:
    cfg = _config(args)
    L = _load_lattice(args.file)
    if args.mode == "definite":
        if not L.is_negative_definite():
            raise CliError("definite mode needs a negative definite lattice")
        vecs = En.definite_enumerate(En.EnumerationRequest(L, args.norm, args.norm, dedupe_sign=args.dedupe_sign))
        print(f"{len(vecs)} vectors of norm {args.norm}", file=sys.stderr)
        _emit(cfg, [list(v) for v in vecs])
        return EXIT_OK
    v = En.represents(L, args.norm, cfg.moduli, cfg.box_bound)
    _emit(cfg, v.to_json())
    return _verdict_code(v.tag)


def _summary(pc: C.PointCheck):
    n = len(pc.candidates)
    print(f"verdict {pc.verdict}; {n} candidate normal(s) checked; zero branch {pc.zero_branch.tag}")
    if pc.witness is not None:
        print(f"witness delta = {list(pc.witness)}")
    for w in pc.warnings:
        print(f"warning: {w}", file=sys.stderr)


def cmd_condition(args) -> int:
    cfg = _config(args)
    sub = args.sub
    if sub == "make":
        cond = _load_condition(args)
        T = cond.transcendental
        print(f"S rank {cond.rank}, signature {cond.S.signature}; T signature {T.signature}, "
              f"domain dimension {T.domain_dimension}; a = {cond.a}, b = {cond.b}")
        return EXIT_OK
    if sub == "point-check":
        cond = _load_condition(args)
        h = _parse_vec(args.h)
        pc = C.lemma22_point_check(cond, h, cfg.params(early_exit=not args.full))
        _summary(pc)
        if cfg.out:
            _emit(cfg, certificates.dump(pc))
        return _verdict_code(pc.verdict)
    if sub == "witness":
        cond = _load_condition(args)
        try:
            h, cert, stats = C.theorem21_witness(cond, args.min_square, cfg.budget, cfg.params(),
                                                 max_scanned=args.max_scanned)
        except C.SearchExhausted as exc:
            print(f"search exhausted: {exc}; explored {json.dumps(exc.explored)}", file=sys.stderr)
            return EXIT_UNKNOWN
        print(f"h = {list(h)}, h^2 = {stats['h_square']} (after {stats['checked']} point checks)")
        _summary(cert.check)
        _emit(cfg, certificates.dump(cert.check)) if cfg.out else None
        return EXIT_OK
    if sub == "thm23":
        cond = _load_condition(args)
        if not args.sublattice:
            raise CliError("thm23 needs --sublattice FILE")
        obj = _read_json(args.sublattice)
        S = SublatticeEmbedding.from_vectors(cond.ambient, _columns(obj["basis"]), "S")
        try:
            pc = C.theorem23_check(cond, S, cfg.params(early_exit=not args.full))
        except C.ConditionError as exc:
            raise CliError(f"{exc}\n{_echo(S)}")
        _summary(pc)
        if cfg.out:
            _emit(cfg, certificates.dump(pc))
        return _verdict_code(pc.verdict)
    if sub == "t1-validate":
        L = _load_lattice(args.file)
        rec = C.t1_admissible(L, cfg.params())
        print(f"admissible: {rec.admissible} ({rec.summary()})")
        _emit(cfg, rec.to_json()) if cfg.out else None
        tags = [rec.no_roots.tag] + ([rec.no_isotropic_rank2.tag] if rec.no_isotropic_rank2 else [])
        return EXIT_UNKNOWN if En.UNKNOWN in tags else EXIT_OK
    if sub == "reflective2":
        L = _load_lattice(args.file)
        res = C.two_reflective_small_rank(L)
        if L.rank == 2:
            detail = {"minus2": binary_represents(L, -2).to_json(), "zero": binary_represents(L, 0).to_json()}
        else:
            detail = {}
        print(f"2-reflective: {res}")
        _emit(cfg, {"two_reflective": res, **detail}) if cfg.out else None
        return EXIT_OK
    raise CliError(f"unknown condition subcommand {sub!r}")


def _columns(rows):
    return [list(c) for c in zip(*rows)] if rows else []


def cmd_replay(args) -> int:
    path = args.file
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}")
    rep = certificates.replay(data)
    if rep.ok:
        print(f"certificate replays: verdict {rep.verdict}")
        return EXIT_OK
    for e in rep.errors:
        print(f"replay failure: {e}", file=sys.stderr)
    return EXIT_ERROR


def cmd_check_invariants(args) -> int:
    import random
    from . import intmat, kernels
    from .lattice import Lattice as Lat
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.count):
        n = rng.randint(1, 4)
        G = [[0] * n for _ in range(n)]
        for i in range(n):
            G[i][i] = -2 * rng.randint(1, 4)
            for j in range(i):
                G[i][j] = G[j][i] = rng.randint(-1, 1)
        try:
            L = Lat(G)
        except LatticeError:
            continue
        if not L.is_negative_definite():
            continue
        got = set(En.definite_enumerate(En.EnumerationRequest(L, -8, -1)))
        box = En.coordinate_bound([[-x for x in row] for row in G], 8)
        want = set()
        for t in range(-8, 0):
            want |= set(kernels.box_hits(L.gram, box, t, limit=0))
        bad += got != want
        if abs(intmat.det(G)) != L.discriminant_group.order:
            bad += 1
    print(f"{args.count} random instances, {bad} failures (seed {args.seed})")
    return EXIT_OK if bad == 0 else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="k3disc", description="Exact lattice toolkit for discriminant conditions of K3 Picard lattices.")
    p.add_argument("--replay", metavar="CERT", help="re-validate a certificate file and exit")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    sp = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(q):
        q.add_argument("--moduli", help="comma-separated obstruction moduli")
        q.add_argument("--box-bound", type=int, default=2, dest="box_bound")
        q.add_argument("--out", help="write JSON output to this path")

    q = sp.add_parser("lat-info", help="rank, signature, determinant, parity, discriminant group")
    q.add_argument("file")

    q = sp.add_parser("roots", help="vectors of a given norm")
    q.add_argument("file")
    q.add_argument("--norm", type=int, default=-2)
    q.add_argument("--mode", choices=("definite", "trichotomy"), default="definite")
    q.add_argument("--dedupe-sign", action="store_true", dest="dedupe_sign")
    common(q)

    q = sp.add_parser("condition", help="conditions on Picard lattices")
    q.add_argument("sub", choices=("make", "point-check", "witness", "thm23", "t1-validate", "reflective2"))
    q.add_argument("file", nargs="?")
    q.add_argument("--golden", action="store_true", help="use the shipped demonstration condition")
    q.add_argument("--toy", action="store_true", help="allow ambient lattices other than the K3 lattice")
    q.add_argument("--h", help="point h in ambient coordinates, comma-separated")
    q.add_argument("--sublattice", help="thm23: JSON file with 'basis' (columns) of S inside S1")
    q.add_argument("--min-square", type=int, default=0, dest="min_square")
    q.add_argument("--budget", type=int, default=200)
    q.add_argument("--max-scanned", type=int, default=10 ** 6, dest="max_scanned",
                   help="witness: cap on sweep points visited")
    q.add_argument("--full", action="store_true", help="check every candidate even after a YES")
    q.add_argument("--seed", type=int, default=0)
    common(q)

    q = sp.add_parser("replay", help="re-validate a certificate")
    q.add_argument("file")

    q = sp.add_parser("check-invariants", help="randomized self-check of enumeration against box search")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--count", type=int, default=20)
    return p


COMMANDS = {"lat-info": cmd_lat_info, "roots": cmd_roots, "condition": cmd_condition,
            "replay": cmd_replay, "check-invariants": cmd_check_invariants}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.replay:
            args.file = args.replay
            return cmd_replay(args)
        if not args.command:
            parser.print_help()
            return EXIT_ERROR
        return COMMANDS[args.command](args)
    except (CliError, LatticeError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
