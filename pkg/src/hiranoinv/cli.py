"""Batch command-line front end.

Reads a JSON document (inline, from a file, or "-" for stdin) describing a
ring and one to three matrices, dispatches to the library, and prints a
machine-readable report.  Exit code 0 means success, 2 means a clean
"does not exist" (or failed-check) outcome, 1 means malformed input or an
operational error; error JSON carries a distinct machine-readable code.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import additive, cline, hirano, oracle, spectral
from .errors import HiranoError, InputFormatError
from .matrices import SquareMatrix
from .rings import ring_from_compact, ring_from_json

SCHEMA = "hiranoinv/1"

SUM_MODES = ("series", "absorbing", "orthogonal")


def _load_document(source: str | None) -> dict:
    if source is None:
        return {}
    text = source
    if source == "-":
        text = sys.stdin.read()
    elif not source.lstrip().startswith("{"):
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputFormatError(f"cannot read input file {source!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadJson(f"malformed JSON input: {exc}") from exc
    if not isinstance(doc, dict):
        raise BadJson("input document must be a JSON object")
    return doc


class BadJson(HiranoError):
    code = "bad-json"


def _resolve_ring(doc: dict, flag: str | None):
    if flag:
        flag = flag.strip()
        if flag.startswith("{"):
            try:
                return ring_from_json(json.loads(flag))
            except json.JSONDecodeError as exc:
                raise BadJson(f"malformed --ring JSON: {exc}") from exc
        return ring_from_compact(flag)
    if "ring" not in doc:
        raise InputFormatError("no ring descriptor: supply --ring or a \"ring\" field")
    return ring_from_json(doc["ring"])


def _matrix(doc: dict, key: str, ring) -> SquareMatrix:
    if key not in doc:
        raise InputFormatError(f"input document is missing \"{key}\"")
    rows = doc[key]
    if not isinstance(rows, list):
        raise InputFormatError(f"\"{key}\" must be an array of arrays")
    return SquareMatrix(ring, rows)


def _emit(payload: dict, exists: bool = True) -> int:
    payload = {"schema": SCHEMA, **payload}
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0 if exists else 2


def _cmd_classify(args) -> int:
    doc = _load_document(args.input)
    ring = _resolve_ring(doc, args.ring)
    a = _matrix(doc, "matrix", ring)
    cls = hirano.classify_local_2x2(a)
    body = cls.to_json(ring)
    body["exists"] = cls.case != hirano.CASE_NONE
    return _emit(body, exists=body["exists"])


def _cmd_hirano(args) -> int:
    doc = _load_document(args.input)
    ring = _resolve_ring(doc, args.ring)
    a = _matrix(doc, "matrix", ring)
    w = hirano.hirano_inverse(a)
    if w is None:
        return _emit(hirano.nonexistence_report(a), exists=False)
    return _emit(w.to_json())


def _cmd_drazin(args) -> int:
    doc = _load_document(args.input)
    ring = _resolve_ring(doc, args.ring)
    a = _matrix(doc, "matrix", ring)
    d = spectral.drazin_field(a)
    return _emit({"drazin": d.to_json()})


def _cmd_verify(args) -> int:
    doc = _load_document(args.input)
    ring = _resolve_ring(doc, args.ring)
    a = _matrix(doc, "matrix", ring)
    b = _matrix(doc, "matrix2", ring)
    report = hirano.verify_hirano_axioms(a, b)
    return _emit({"checks": report.to_json(), "all_pass": report.all_ok}, exists=report.all_ok)


def _cmd_cline(args) -> int:
    doc = _load_document(args.input)
    ring = _resolve_ring(doc, args.ring)
    a = _matrix(doc, "matrix", ring)
    b = _matrix(doc, "matrix2", ring)
    c = _matrix(doc, "matrix3", ring) if "matrix3" in doc else b
    w = cline.cline_generalized(a, b, c)
    if w is None:
        return _emit({"exists": False}, exists=False)
    return _emit(w.to_json())


def _cmd_sum(args) -> int:
    doc = _load_document(args.input)
    ring = _resolve_ring(doc, args.ring)
    a = _matrix(doc, "matrix", ring)
    b = _matrix(doc, "matrix2", ring)
    if args.mode == "orthogonal":
        return _emit(additive.orthogonal_sum(a, b).to_json())
    if args.mode == "absorbing":
        return _emit(additive.absorbing_sum(a, b).to_json())
    return _emit(additive.additive_hirano(a, b).to_json())


def _cmd_tripotent(args) -> int:
    doc = _load_document(args.input)
    ring = _resolve_ring(doc, args.ring)
    a = _matrix(doc, "matrix", ring)
    split = hirano.tripotent_decompose(a)
    if split is None:
        return _emit({"exists": False}, exists=False)
    e, n = split
    return _emit({"exists": True, "tripotent": e.to_json(), "nilpotent": n.to_json()})


def _cmd_oracle(args) -> int:
    ring = _resolve_ring({}, args.ring)
    if ring.kind != "Zn":
        raise InputFormatError("the oracle enumerates Z/n rings; use --ring Zn:<n>")
    enum = oracle.FiniteRingEnumeration(ring.n, dim=args.dim, budget=args.budget)
    report = oracle.exhaustive_check(args.property, enum)
    return _emit(report.to_json(), exists=report.ok)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hiranoinv",
        description="exact generalized Hirano/Drazin inverse computations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_input=True):
        p = sub.add_parser(name)
        if needs_input:
            p.add_argument("input", nargs="?", help="JSON document, file path, or - for stdin")
        p.add_argument("--ring", help='descriptor: Q, Z, Zn:26, Zp_local:2 or inline JSON')
        p.set_defaults(fn=fn)
        return p

    add("classify", _cmd_classify)
    add("hirano", _cmd_hirano)
    add("drazin", _cmd_drazin)
    add("verify", _cmd_verify)
    add("cline", _cmd_cline)
    p_sum = add("sum", _cmd_sum)
    p_sum.add_argument("--mode", choices=SUM_MODES, default="series")
    add("tripotent", _cmd_tripotent)
    p_oracle = add("oracle", _cmd_oracle, needs_input=False)
    p_oracle.add_argument("--property", required=True, help="registered property id")
    p_oracle.add_argument("--dim", type=int, default=1)
    p_oracle.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except HiranoError as exc:
        print(
            json.dumps(
                {"schema": SCHEMA, "error": {"code": exc.code, "message": str(exc)}},
                sort_keys=True,
            ),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
