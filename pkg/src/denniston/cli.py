"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cyclotomy import IndexSet
from .documents import (
    PdsDocument,
    construct,
    document_set,
    edgelist_text,
    expected_params,
    graph6_bytes,
    make_document,
)
from .errors import (
    ContainsIdentity,
    DennistonError,
    NonIntegralCharacterSum,
    NotSymmetricSet,
    NotVerified,
    SizeMismatch,
)
from .finite_field import build_tower
from .pds import PdsParams, denniston_params, dual_params, dual_set
from .verify import (
    MATRIX_GUARD,
    VerificationReport,
    cayley_edges,
    verify_difference_set,
    verify_pds_bruteforce,
    verify_pds_character,
    verify_srg_matrix,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(data: str | bytes, out: str | None) -> None:
    if out is None:
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            sys.stdout.write(data)
    elif isinstance(data, bytes):
        Path(out).write_bytes(data)
    else:
        Path(out).write_text(data, newline="\n")


def _load(path: str) -> PdsDocument:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return PdsDocument.from_json(text)


def cmd_params(args) -> int:
    P = denniston_params(args.p, args.m, args.r)
    print(f"{P} theta={P.theta_pos},{P.theta_neg}")
    return EXIT_OK


def cmd_construct(args) -> int:
    tower = build_tower(args.p, args.m, args.size_guard)
    S, params = construct(tower, args.kind, args.k)
    prov = f"denniston construct --kind {args.kind} --p {args.p} --m {args.m}"
    if args.kind == "X_k":
        prov += f" --k {args.k}"
    doc = make_document(tower, args.kind, S, params, prov,
                        shift=args.k if args.kind == "X_k" else None)
    _emit(doc.to_json(), args.out)
    return EXIT_OK


def _failed(method: str, params, message: str) -> VerificationReport:
    return VerificationReport(params=tuple(params), method=method, passed=False, failure=message)


def verify_document(doc: PdsDocument, method: str = "all",
                    size_guard: int | None = None) -> list[VerificationReport]:
    tower = build_tower(doc.p, doc.m, size_guard)
    S = document_set(doc, tower)
    target = expected_params(doc)
    if tuple(doc.params) != target:
        return [_failed("params", doc.params, f"kind {doc.kind} requires params {list(target)}")]
    if len(doc.elements) != doc.params[1]:
        return [_failed("size", doc.params,
                        f"{len(doc.elements)} elements listed, params say {doc.params[1]}")]

    if isinstance(S, IndexSet):
        v, k, lam, _ = target
        try:
            return [verify_difference_set(S, (v, k, lam))]
        except SizeMismatch as exc:
            return [_failed("difference_set", target, str(exc))]

    params = PdsParams(*target)
    if not params.is_consistent():
        return [_failed("params", target, "parameters violate k^2 = k + lambda k + mu (v - k - 1)")]
    methods = ["brute", "character", "matrix"] if method == "all" else [method]
    guard = MATRIX_GUARD if size_guard is None else size_guard
    runners = {
        "brute": verify_pds_bruteforce,
        "character": verify_pds_character,
        "matrix": lambda S_, P_: verify_srg_matrix(S_, P_, guard),
    }
    reports = []
    for name in methods:
        if name == "matrix" and method == "all" and S.order > guard:
            continue
        try:
            reports.append(runners[name](S, params))
        except (SizeMismatch, ContainsIdentity, NotSymmetricSet) as exc:
            reports.append(_failed(name, target, str(exc)))
    return reports


def cmd_verify(args) -> int:
    doc = _load(args.input)
    reports = verify_document(doc, args.method, args.size_guard)
    for r in reports:
        print(r.summary())
    ok = all(r.passed for r in reports)
    if args.out:
        payload = {"kind": doc.kind, "p": doc.p, "m": doc.m,
                   "verdict": "pass" if ok else "fail",
                   "reports": [r.to_dict() for r in reports]}
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dual(args) -> int:
    doc = _load(args.input)
    if doc.ambient == "cyclic":
        raise NotVerified("duals are defined for partial difference sets only")
    tower = build_tower(doc.p, doc.m, args.size_guard)
    S = document_set(doc, tower)
    target = expected_params(doc)
    if tuple(doc.params) != target:
        raise NotVerified(f"kind {doc.kind} requires params {list(target)}")
    params = PdsParams(*target)
    if not params.is_consistent():
        raise NotVerified("document parameters are inconsistent")
    try:
        D = dual_set(S, params)
    except (SizeMismatch, ContainsIdentity, NonIntegralCharacterSum) as exc:
        raise NotVerified(str(exc)) from exc
    new_params = dual_params(params)
    out = make_document(tower, "dual", D, new_params, f"dual of: {doc.provenance}")
    _emit(out.to_json(), args.out)
    return EXIT_OK


def cmd_export_graph(args) -> int:
    doc = _load(args.input)
    if doc.ambient == "cyclic":
        raise NotVerified("graph export needs a partial difference set")
    tower = build_tower(doc.p, doc.m, args.size_guard)
    S = document_set(doc, tower)
    guard = MATRIX_GUARD if args.size_guard is None else args.size_guard
    edges = cayley_edges(S, guard)
    if args.format == "graph6":
        _emit(graph6_bytes(S.order, edges), args.out)
    else:
        _emit(edgelist_text(edges), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="denniston", description="Denniston partial difference sets for odd p")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, field=True):
        if field:
            sp.add_argument("--p", type=int, required=True)
            sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--size-guard", type=int, default=None,
                        help="element-count guard (default: $DENNISTON_SIZE_GUARD or 2^24)")

    sp = sub.add_parser("params", help="print Denniston parameters")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("construct", help="construct a set and print its document")
    sp.add_argument("--kind", choices=["X", "X_k", "D", "singer"], required=True)
    sp.add_argument("--k", type=int, default=None, help="shift for --kind X_k")
    sp.add_argument("--out")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="verify a document")
    sp.add_argument("input")
    sp.add_argument("--method", choices=["brute", "character", "matrix", "all"], default="all")
    sp.add_argument("--out", help="write a JSON report here")
    common(sp, field=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("dual", help="compute the dual PDS of a document")
    sp.add_argument("input")
    sp.add_argument("--out")
    common(sp, field=False)
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("export-graph", help="export the Cayley graph")
    sp.add_argument("input")
    sp.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    sp.add_argument("--out")
    common(sp, field=False)
    sp.set_defaults(func=cmd_export_graph)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "construct" and args.kind == "X_k" and args.k is None:
        print("denniston: error: --kind X_k requires --k", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except NotVerified as exc:
        print(f"denniston: NotVerified: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except DennistonError as exc:
        print(f"denniston: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
