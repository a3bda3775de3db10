"""Command-line interface: ``finepoly <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 undetermined result.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor

from .arith import format_rational, parse_rational
from .fine import fine_interior
from .fixtures import GENERATORS, fixture_name, generate
from .lattice_maps import (ProjectionMap, affine_normal_form, apply_projection, lattice_width,
                           unimodular_equivalent)
from .multiplier import (DEFAULT_BOUND, UNDETERMINED, InternalConsistencyError,
                         canonical_projection, kodaira_dimension, minimal_multiplier)
from .records import DocumentError, PolytopeDocument, build_record, encode_vector

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_UNDETERMINED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str) -> PolytopeDocument:
    return PolytopeDocument.parse(_read_text(path))


def _polytope(path: str, full: bool = True):
    P = _load(path).to_polytope()
    if full and not P.is_full_dimensional:
        raise DocumentError("polytope must be full-dimensional")
    return P


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj))
        return
    for key, value in obj.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        print(f"{key}: {value}")


def _inequalities(P):
    return [{"normal": list(n), "rhs": format_rational(r)} for n, r in P.facets]


def cmd_fine(args) -> int:
    P = _polytope(args.input)
    lam = parse_rational(args.lam)
    if lam <= 0:
        raise DocumentError("lambda must be positive")
    F = fine_interior(P, lam)
    if F.is_empty:
        _emit({"lambda": format_rational(lam), "empty": True}, args.format)
    else:
        _emit({"lambda": format_rational(lam), "empty": False, "dim": F.dim,
               "vertices": [encode_vector(v) for v in F.vertices],
               "inequalities": _inequalities(F)}, args.format)
    return EXIT_OK


def cmd_mult(args) -> int:
    _emit({"mu": format_rational(minimal_multiplier(_polytope(args.input)))}, args.format)
    return EXIT_OK


def cmd_classify(args) -> int:
    record = build_record(_load(args.input), args.bound)
    _emit(record.to_obj(), args.format)
    if record.sporadicity and record.sporadicity["status"] == UNDETERMINED:
        return EXIT_UNDETERMINED
    return EXIT_OK


def _int_rows(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";")]
    except ValueError as exc:
        raise DocumentError(f"bad integer matrix {text!r}") from exc


def cmd_project(args) -> int:
    P = _polytope(args.input)
    if args.matrix:
        rows = _int_rows(args.matrix)
        offset = _int_rows(args.offset)[0] if args.offset else [0] * len(rows)
        try:
            pi = ProjectionMap(rows, offset)
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
        image = apply_projection(P, pi)
    else:
        pi, image = canonical_projection(P)
    _emit({"matrix": [list(r) for r in pi.matrix], "offset": list(pi.offset),
           "image_vertices": [list(v) for v in image.vertices]}, args.format)
    return EXIT_OK


def cmd_width(args) -> int:
    w = lattice_width(_polytope(args.input), args.bound)
    _emit({"width": format_rational(w.width), "directions": [list(v) for v in w.directions],
           "exhaustive": w.exhaustive}, args.format)
    return EXIT_OK


def cmd_normal_form(args) -> int:
    key = affine_normal_form(_polytope(args.input, full=False))
    _emit({"ambient_dim": key.ambient_dim,
           "canonical_vertices": [list(v) for v in key.canonical_vertices],
           "hash": key.digest()}, args.format)
    return EXIT_OK


def cmd_equiv(args) -> int:
    paths = args.input if isinstance(args.input, list) else [args.input]
    if len(paths) != 2:
        raise UsageError("equiv needs exactly two --input options")
    P1, P2 = (_polytope(p, full=False) for p in paths)
    _emit({"equivalent": unimodular_equivalent(P1, P2)}, args.format)
    return EXIT_OK


def cmd_kodaira(args) -> int:
    _emit({"kodaira": kodaira_dimension(_polytope(args.input))}, args.format)
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        params = [int(x) for x in args.params]
    except ValueError as exc:
        raise UsageError("fixture parameters must be integers") from exc
    try:
        P = generate(args.fixture, params)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(str(exc.args[0]) if exc.args else str(exc)) from exc
    doc = PolytopeDocument.from_polytope(P, fixture_name(args.fixture, params))
    print(doc.serialize())
    return EXIT_OK


def _batch_line(item: tuple[int, str, int]) -> str:
    index, line, bound = item
    try:
        record = build_record(PolytopeDocument.parse(line), bound)
        return record.serialize()
    except (DocumentError, ValueError) as exc:
        return json.dumps({"index": index, "error": str(exc)})


def run_batch(lines: list[str], bound: int, parallel: int) -> tuple[list[str], dict]:
    items = [(i, line, bound) for i, line in enumerate(lines)]
    if parallel > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            out = list(pool.map(_batch_line, items, chunksize=1))
    else:
        out = [_batch_line(it) for it in items]
    classes: dict[str, set] = defaultdict(set)
    errors = 0
    for i, text in enumerate(out):
        obj = json.loads(text)
        if "error" in obj:
            errors += 1
            continue
        key = obj["normal_form_key"] or f"unkeyed-{i}"
        classes[obj["classification"]].add(key)
    summary = {"records": len(out) - errors, "errors": errors,
               "classes": {tag: len(keys) for tag, keys in sorted(classes.items())}}
    return out, summary


def cmd_batch(args) -> int:
    path = args.input[0] if isinstance(args.input, list) else args.input
    lines = [ln for ln in _read_text(path).splitlines() if ln.strip()]
    out, summary = run_batch(lines, args.bound, args.parallel)
    for text in out:
        print(text)
    print(json.dumps({"summary": summary}))
    if lines and summary["errors"] == len(lines):
        return EXIT_INPUT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="finepoly", description="Fine interiors and minimal multipliers "
                     "of lattice polytopes, computed exactly.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(p, multi=False):
        if multi:
            p.add_argument("--input", action="append", metavar="PATH|-", required=True)
        else:
            p.add_argument("--input", default="-", metavar="PATH|-")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
        return p

    p = common(sub.add_parser("fine", help="Fine interior of lambda P"))
    p.add_argument("--lambda", dest="lam", default="1", metavar="P/Q")
    p.set_defaults(func=cmd_fine)
    common(sub.add_parser("mult", help="minimal multiplier")).set_defaults(func=cmd_mult)
    common(sub.add_parser("classify", help="full classification record")).set_defaults(func=cmd_classify)
    p = common(sub.add_parser("project", help="apply a projection, or the canonical one"))
    p.add_argument("--matrix", help="rows separated by ';', entries by ','")
    p.add_argument("--offset", help="comma separated integers")
    p.set_defaults(func=cmd_project)
    common(sub.add_parser("width", help="lattice width in a direction box")).set_defaults(func=cmd_width)
    common(sub.add_parser("normal-form", help="affine unimodular normal form")).set_defaults(
        func=cmd_normal_form)
    common(sub.add_parser("equiv", help="test unimodular equivalence"), multi=True).set_defaults(
        func=cmd_equiv)
    common(sub.add_parser("kodaira", help="Kodaira dimension of a generic hypersurface")).set_defaults(
        func=cmd_kodaira)
    p = sub.add_parser("gen", help="emit a fixture document")
    p.add_argument("fixture", help=", ".join(GENERATORS))
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)
    p = common(sub.add_parser("batch", help="classify newline-delimited documents"))
    p.add_argument("--parallel", type=int, default=1)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "bound", 1) < 1 or getattr(args, "parallel", 1) < 1:
        parser.error("--bound and --parallel must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"finepoly: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError:
        raise
    except (DocumentError, ValueError, ZeroDivisionError) as exc:
        print(f"finepoly: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
