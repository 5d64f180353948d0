"""Command line interface.

Exit codes:
    0  success
    1  a verification or classification check failed
    2  invalid input (bad polytope or pencil)
    3  malformed JSON or unreadable file
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .classify import (
    ClassificationError,
    EnumerationConfig,
    box_floor,
    classify_rank1,
    enumerate_ldp,
    filter_surfaces,
    verify_classification_table,
    verify_y_family,
)
from .pencil import QuadricPencil, discriminant_form, multiplicity_profile, pencil_stability
from .polytope import InvalidPolytope, make_fano
from .report import analyze, obstruct3, q_str, render_text

EXIT_OK, EXIT_CHECK, EXIT_INVALID, EXIT_JSON = 0, 1, 2, 3

log = logging.getLogger("fanolab")


class InputError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}", EXIT_JSON)


def polytope_from_json(obj):
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise InputError("polytope JSON needs a 'vertices' list", EXIT_JSON)
    try:
        P = make_fano(obj["vertices"])
    except (InvalidPolytope, ValueError, TypeError) as exc:
        raise InputError(f"invalid polytope: {exc}", EXIT_INVALID)
    if "dim" in obj and obj["dim"] != P.dim:
        raise InputError(f"declared dim {obj['dim']} but vertices are {P.dim}-dimensional",
                         EXIT_INVALID)
    return P


def pencil_from_json(obj, strict: bool = False) -> QuadricPencil:
    try:
        return QuadricPencil(int(obj["size"]), obj["A"], obj["B"], strict=strict)
    except (KeyError, TypeError) as exc:
        raise InputError(f"pencil JSON needs size, A and B: {exc}", EXIT_JSON)
    except ValueError as exc:
        raise InputError(f"invalid pencil: {exc}", EXIT_INVALID)


def _emit(obj, args, text: str):
    if args.text:
        print(text)
    else:
        print(json.dumps(obj, indent=None if getattr(args, "compact", False) else 2))


# ---------------------------------------------------------------- commands

def cmd_analyze(args) -> int:
    P = polytope_from_json(_load_json(args.path))
    r = analyze(P, source=args.path)
    _emit(r.to_dict(), args, render_text(r))
    return EXIT_OK


def _analyze_line(item):
    lineno, line = item
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        return lineno, None, f"malformed JSON: {exc}"
    try:
        P = polytope_from_json(obj)
    except InputError as exc:
        return lineno, None, str(exc)
    src = obj.get("input") or obj.get("name") or f"line {lineno}"
    return lineno, analyze(P, source=str(src)).to_dict(), None


def cmd_batch(args) -> int:
    try:
        with open(args.path) as fh:
            lines = [(i + 1, ln) for i, ln in enumerate(fh) if ln.strip()]
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc}", EXIT_JSON)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_analyze_line, lines, chunksize=16))
    else:
        results = [_analyze_line(x) for x in lines]
    out = open(args.out, "w") if args.out else sys.stdout
    skipped = 0
    try:
        for lineno, rep, err in results:
            if err is not None:
                skipped += 1
                log.warning("line %d skipped: %s", lineno, err)
                continue
            out.write(json.dumps(rep) + "\n")
    finally:
        if args.out:
            out.close()
    print(f"# {len(results) - skipped} analyzed, {skipped} skipped", file=sys.stderr)
    return EXIT_OK


def cmd_classify_rank1(args) -> int:
    surfaces = classify_rank1()
    if args.text:
        print(f"{len(surfaces)} classes")
        for s in surfaces:
            labels = s.singularities.labels()
            print(f"degree {q_str(s.degree)}: vertices {list(s.polytope.vertices)}, "
                  f"Sing = {' + '.join(labels) if labels else 'none'}, "
                  f"index {s.summary.gorenstein_index}")
    else:
        print(json.dumps([analyze(s.polytope, source="rank1").to_dict() for s in surfaces], indent=2))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    box = args.box if args.box is not None else box_floor(args.max_index)
    try:
        config = EnumerationConfig(args.max_index, box, not args.no_stabilization)
    except ValueError as exc:
        raise InputError(str(exc), EXIT_INVALID)
    surfaces = enumerate_ldp(config)
    bary = filter_surfaces(surfaces, barycenter_zero=True)
    both = filter_surfaces(surfaces, barycenter_zero=True, all_t=True)
    selected = filter_surfaces(surfaces, barycenter_zero=args.barycenter_zero, all_t=args.all_t)
    if args.out:
        with open(args.out, "w") as fh:
            for s in selected:
                fh.write(json.dumps(analyze(s.polytope, source=f"enumerate:index<={args.max_index}")
                                    .to_dict()) + "\n")
    print(f"{len(surfaces)} classes, {len(bary)} barycenter-zero")
    print(f"{len(both)} barycenter-zero with only T-singularities")
    if args.text:
        for s in selected:
            print(f"  index {s.summary.gorenstein_index} degree {q_str(s.degree)} "
                  f"rho {s.summary.picard_rank} {list(s.polytope.vertices)}")
    return EXIT_OK


def cmd_verify_table(args) -> int:
    try:
        rep = verify_classification_table()
    except ClassificationError as exc:
        print(f"FAIL: {exc}")
        return EXIT_CHECK
    for subject, prop, expected, actual, ok in rep.checks:
        print(f"{'ok  ' if ok else 'FAIL'} {subject}: {prop} = {actual}")
    return EXIT_OK


def cmd_verify_y(args) -> int:
    try:
        rep = verify_y_family(args.n_max)
    except ClassificationError as exc:
        print(f"FAIL: {exc}")
        return EXIT_CHECK
    print(f"Y_1..Y_{args.n_max}: {len(rep.checks)} checks passed")
    return EXIT_OK


def cmd_pencil(args) -> int:
    p = pencil_from_json(_load_json(args.path))
    verdict = pencil_stability(p)
    obj = {"size": p.size, "verdict": verdict.verdict.value, "witness": verdict.witness}
    text = f"verdict: {verdict.verdict} ({verdict.witness})"
    try:
        f = discriminant_form(p)
    except ValueError:
        pass
    else:
        prof = multiplicity_profile(f)
        obj["discriminant"] = [q_str(c) for c in f.coefficients]
        obj["multiplicities"] = prof.multiplicities()
        text = f"discriminant: {f}\nmultiplicities: {prof.multiplicities()}\n" + text
    _emit(obj, args, text)
    return EXIT_OK


def cmd_obstruct3(args) -> int:
    if args.d < 1:
        raise InputError("d must be positive", EXIT_INVALID)
    c = obstruct3(args.d)
    deg = c.lhs * c.volume_ratio
    rel = {"obstructed": ">", "boundary": "=", "consistent": "<="}[c.verdict.value]
    text = f"degree {q_str(deg)}, LHS {q_str(c.lhs)} {rel} {q_str(c.rhs)}: {c.verdict}"
    obj = {"d": args.d, "degree": q_str(deg), "lhs": q_str(c.lhs), "rhs": q_str(c.rhs),
           "verdict": c.verdict.value}
    _emit(obj, args, text)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanolab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, default_text=False):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", dest="text", action="store_false", help="JSON output")
        g.add_argument("--text", dest="text", action="store_true", help="plain text output")
        p.set_defaults(text=default_text)

    p = sub.add_parser("analyze", help="full report for one polytope file")
    p.add_argument("path")
    fmt(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("batch", help="analyze a JSON-lines polytope database")
    p.add_argument("path")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("classify-rank1", help="Picard rank one classification")
    fmt(p, default_text=True)
    p.set_defaults(func=cmd_classify_rank1)

    p = sub.add_parser("enumerate", help="enumerate LDP polygons of bounded index")
    p.add_argument("--max-index", type=int, default=1)
    p.add_argument("--box", type=int)
    p.add_argument("--out")
    p.add_argument("--barycenter-zero", action="store_true", help="keep only KE classes")
    p.add_argument("--all-t", action="store_true", help="keep only classes with T-singularities")
    p.add_argument("--no-stabilization", action="store_true")
    fmt(p, default_text=False)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-table", help="check the seven smoothable KE surfaces")
    p.set_defaults(func=cmd_verify_table)

    p = sub.add_parser("verify-y", help="check the Y_n family")
    p.add_argument("--n-max", type=int, default=20)
    p.set_defaults(func=cmd_verify_y)

    p = sub.add_parser("pencil", help="GIT verdict for a pencil of quadrics")
    p.add_argument("path")
    fmt(p)
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("obstruct3", help="conical obstruction for the threefold X_d")
    p.add_argument("--d", type=int, required=True)
    fmt(p, default_text=True)
    p.set_defaults(func=cmd_obstruct3)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("FANO_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
