"""``noa`` command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage/parse/schema error,
3 a resource cap was hit (inconclusive).
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import ExpressionError, parse_expr, parse_rational
from .fock import UnsupportedRepresentation, cross_check, fock, verify_representation
from .presentations import KINDS, PresentationError, catalog, loads, poly_to_doc
from .report import FAIL, INCONCLUSIVE, PASS
from .rewrite import check_confluence, complete, normal_words
from .verify import (
    SUSY_KINDS,
    green_ansatz_check,
    green_polynomial,
    non_derivability,
    susy_suite,
    verify_identity,
    verify_number_operators,
    verify_q_number,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_source(p, required=True):
    p.add_argument("--catalog", choices=sorted(KINDS), help="catalog presentation kind")
    p.add_argument("--file", help="presentation document (JSON)")
    p.add_argument("--n", type=_rational)
    p.add_argument("--two-j", dest="two_j", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--q", type=_rational)
    p.set_defaults(_needs_source=required)


def _add_format(p):
    p.add_argument("--format", choices=("text", "structured"), default="text")


def build_parser():
    parser = argparse.ArgumentParser(prog="noa", description="Number operator algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="list catalog presentations")
    cat.add_argument("action", choices=("list",))
    _add_format(cat)

    red = sub.add_parser("reduce", help="normal form of an expression")
    _add_source(red)
    red.add_argument("--expr", required=True)
    _add_format(red)

    for name in ("confluence", "complete", "basis"):
        p = sub.add_parser(name)
        _add_source(p)
        p.add_argument("--max-degree", type=int)
        if name == "complete":
            p.add_argument("--max-rules", type=int, default=64)
        _add_format(p)

    ver = sub.add_parser("verify", help="identity checks")
    vsub = ver.add_subparsers(dest="what", required=True)
    v = vsub.add_parser("noa", help="number operator axioms")
    _add_source(v)
    _add_format(v)
    v = vsub.add_parser("susy", help="SUSY-generalization suites")
    v.add_argument("--kind", required=True, choices=SUSY_KINDS)
    v.add_argument("--n", type=_rational)
    v.add_argument("--beta", type=_rational)
    v.add_argument("--two-j", dest="two_j", type=_rational)
    _add_format(v)
    v = vsub.add_parser("green", help="Green ansatz in the pseudo-fermion algebra")
    v.add_argument("--two-j", dest="two_j", type=_rational, required=True)
    _add_format(v)
    v = vsub.add_parser("qnumber", help="truncated q-boson number operator")
    v.add_argument("--q", type=_rational, required=True)
    v.add_argument("--k", type=int, required=True, help="number of series terms")
    _add_format(v)
    v = vsub.add_parser("identity", help="check that expressions vanish")
    _add_source(v)
    v.add_argument("--expr", required=True, action="append")
    _add_format(v)
    v = vsub.add_parser("nonderiv", help="certify an expression is NOT in the ideal")
    _add_source(v)
    v.add_argument("--expr", help="defaults to the Green polynomial [[f+, f-], f-] + 2 f-")
    _add_format(v)

    fk = sub.add_parser("fock", help="check the Fock representation")
    _add_source(fk)
    fk.add_argument("--cutoff", type=int)
    _add_format(fk)

    cc = sub.add_parser("crosscheck", help="engine vs matrix oracle")
    _add_source(cc)
    cc.add_argument("--samples", type=int, default=100)
    cc.add_argument("--max-degree", type=int, default=4)
    cc.add_argument("--seed", type=int, default=0)
    _add_format(cc)
    return parser


def _presentation(args):
    if bool(args.catalog) == bool(args.file):
        raise UsageError("give exactly one of --catalog or --file")
    if args.file:
        if any(getattr(args, k) is not None for k in ("n", "two_j", "beta", "q")):
            raise UsageError("parameters only apply with --catalog")
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        try:
            return loads(text)
        except PresentationError as exc:
            raise UsageError(f"{args.file}: {exc}") from None
    (pname,) = KINDS[args.catalog]
    given = {k: getattr(args, k) for k in ("n", "two_j", "beta", "q") if getattr(args, k) is not None}
    if set(given) - {pname}:
        raise UsageError(f"{args.catalog} takes --{pname.replace('_', '-')} only")
    try:
        return catalog(args.catalog, **given)
    except PresentationError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, out, doc, text):
    if args.format == "structured":
        out.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _emit_report(args, out, report):
    _emit(args, out, report.to_doc(), report.to_text())
    return {PASS: EXIT_OK, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_CAP}[report.status]


def _cmd_catalog(args, out):
    rows = [{"kind": k, "params": list(v)} for k, v in KINDS.items()]
    text = "\n".join(f"{r['kind']:<20} --{r['params'][0].replace('_', '-')}" for r in rows)
    _emit(args, out, {"kinds": rows}, text)
    return EXIT_OK


def _cmd_reduce(args, out):
    P = _presentation(args)
    try:
        p = parse_expr(args.expr, P.alphabet)
    except ExpressionError as exc:
        raise UsageError(str(exc)) from None
    r = P.reduce(p)
    doc = {"input": poly_to_doc(p), "normal_form": poly_to_doc(r), "completion": P.status}
    _emit(args, out, doc, str(r))
    return EXIT_OK if P.confluent else EXIT_CAP


def _rules_doc(sys):
    names = sys.alphabet.names
    return [{"lhs": [names[g] for g in r.lhs], "rhs": poly_to_doc(r.rhs)} for r in sys.rules]


def _cmd_confluence(args, out):
    P = _presentation(args)
    sys = P.oriented
    rep = check_confluence(sys)
    names = sys.alphabet.names
    entries = []
    lines = [f"rules: {len(sys.rules)}", f"ambiguities: {len(rep)}",
             f"unresolved: {len(rep.unresolved)}", f"confluent: {str(rep.confluent).lower()}"]
    for e in rep.entries:
        entries.append({
            "kind": e.kind, "rules": list(e.rules),
            "superword": [names[g] for g in e.superword],
            "resolved": e.resolved, "residual": poly_to_doc(e.residual),
        })
        if not e.resolved:
            lines.append(f"  {e.kind} {e.rules} at {sys.alphabet.format_word(e.superword)}: {e.residual}")
    doc = {"rules": _rules_doc(sys), "ambiguities": entries, "confluent": rep.confluent}
    _emit(args, out, doc, "\n".join(lines))
    return EXIT_OK if rep.confluent else EXIT_FAIL


def _cmd_complete(args, out):
    P = _presentation(args)
    try:
        sys, status = complete(P.oriented, max_degree=args.max_degree, max_rules=args.max_rules)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"status: {status}", f"rules: {len(sys.rules)}"] + [f"  {r.format()}" for r in sys.rules]
    _emit(args, out, {"status": status, "rules": _rules_doc(sys)}, "\n".join(lines))
    return EXIT_OK if status == "confluent" else EXIT_CAP


def _cmd_basis(args, out):
    P = _presentation(args)
    nw = normal_words(P.system, args.max_degree if args.max_degree is not None else 8,
                      confluent=P.confluent)
    fmt = P.alphabet.format_word
    doc = {
        "counts": nw.counts, "total": nw.total,
        "finite_dimensional": nw.finite_dimensional,
        "exact": nw.exact, "completion": P.status,
        "words": [[fmt(w) for w in level] for level in nw.levels],
    }
    lines = [f"counts: {nw.counts}", f"total: {nw.total}",
             f"finite_dimensional: {str(nw.finite_dimensional).lower()}"]
    if not nw.exact:
        lines.append("note: system not confluent; counts are upper bounds")
    lines += [f"  degree {d}: " + ", ".join(fmt(w) for w in level) for d, level in enumerate(nw.levels)]
    _emit(args, out, doc, "\n".join(lines))
    return EXIT_OK if P.confluent else EXIT_CAP


def _int_param(value, name):
    if value is None:
        return None
    if value.denominator != 1:
        raise UsageError(f"--{name} must be an integer")
    return int(value)


def _cmd_verify(args, out):
    what = args.what
    if what == "noa":
        P = _presentation(args)
        if P.number_operators is None:
            raise UsageError(f"{P.name} has no number operators")
        return _emit_report(args, out, verify_number_operators(P))
    if what == "susy":
        params = {}
        if args.kind == "ortho":
            params["n"] = _int_param(args.n, "n") or 1
        elif args.kind == "quasi_ortho":
            if args.beta is None or args.beta in (0, 1):
                raise UsageError("quasi_ortho needs --beta different from 0 and 1")
            params["beta"] = args.beta
        elif args.kind == "para_green":
            two_j = _int_param(args.two_j, "two-j")
            if not two_j or two_j < 1:
                raise UsageError("para_green needs --two-j >= 1")
            params["two_j"] = two_j
        return _emit_report(args, out, susy_suite(args.kind, **params))
    if what == "green":
        two_j = _int_param(args.two_j, "two-j")
        if two_j < 1:
            raise UsageError("--two-j must be >= 1")
        return _emit_report(args, out, green_ansatz_check(two_j))
    if what == "qnumber":
        if args.q in (1, -1):
            raise UsageError("q must differ from 1 and -1")
        if args.k < 1:
            raise UsageError("--k must be >= 1")
        return _emit_report(args, out, verify_q_number(args.q, args.k))
    P = _presentation(args)
    if what == "identity":
        try:
            polys = [parse_expr(e, P.alphabet) for e in args.expr]
        except ExpressionError as exc:
            raise UsageError(str(exc)) from None
        return _emit_report(args, out, verify_identity(P, polys))
    # nonderiv
    try:
        if args.expr:
            poly = parse_expr(args.expr, P.alphabet)
        else:
            poly = green_polynomial(P.gen("f+"), P.gen("f-"))
    except (ExpressionError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    return _emit_report(args, out, non_derivability(P, poly))


def _cmd_fock(args, out):
    P = _presentation(args)
    try:
        rep = fock(P, args.cutoff)
    except (UnsupportedRepresentation, ValueError) as exc:
        raise UsageError(str(exc)) from None
    report = verify_representation(P, rep)
    doc = report.to_doc()
    doc["matrices"] = {name: rep.matrices[g].to_doc() for g, name in enumerate(P.alphabet.names)}
    _emit(args, out, doc, report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_crosscheck(args, out):
    P = _presentation(args)
    try:
        rep = fock(P)
        report = cross_check(P, rep, args.samples, args.max_degree, args.seed)
    except (UnsupportedRepresentation, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return _emit_report(args, out, report)


_COMMANDS = {
    "catalog": _cmd_catalog,
    "reduce": _cmd_reduce,
    "confluence": _cmd_confluence,
    "complete": _cmd_complete,
    "basis": _cmd_basis,
    "verify": _cmd_verify,
    "fock": _cmd_fock,
    "crosscheck": _cmd_crosscheck,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"noa: error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
