"""Command-line front end.

Five subcommands: ``spectrum`` (eigenvalues of one graph), ``check`` (one
checker on one graph, certificate out), ``family`` (build a named family
and run its claim set), ``extract-h`` (top-two-degree subgraph and its
parameters), and ``sweep`` (corpus runs via :mod:`qbounds.search`).

Exit codes: 0 holds / holds-with-equality, 1 violated, 2 usage or parse
errors, 3 indeterminate-numeric, 4 not-applicable.  ``sweep`` exits 0
exactly when no safe-mode checker reported a violation; findings from
the finding-style modes never affect the exit code.

Format ``json`` and ``csv`` are stable (floats at 12 significant
digits); ``table`` is for reading, not for parsing.  Flags beat the
``QBOUNDS_OPTS`` environment variable, which beats built-in defaults.
"""

import argparse
import csv
import io
import json
import os
import shlex
import sys

from .bounds import (
    CSV_COLUMNS,
    INDETERMINATE,
    NOT_APPLICABLE,
    VIOLATED,
    _canon,
    family_props,
    grone_sum_L,
    resolve_checkers,
    schur_sum,
    snplus_refutation,
)
from .families import (
    DegenerateCaseError,
    FamilyParams,
    UnsupportedRegimeError,
    extract_h,
    make_family,
    make_named,
)
from .graphs import (
    Graph6Error,
    degree_sequence,
    parse_graph6,
    read_graph6_lines,
    to_graph6,
)
from .search import CorpusSpec, run_sweep
from .spectra import MatrixKind, PreconditionError, spectrum_of

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3
EXIT_NOT_APPLICABLE = 4


class UsageError(Exception):
    pass


def _fmt(x):
    return "%.12g" % float(x)


# family literals accepted wherever a graph can be named instead of
# spelled out in graph6
_NAMED = {
    "star": ("star", 1),
    "path": ("path", 1),
    "cycle": ("cycle", 1),
    "complete": ("complete", 1),
    "snplus": ("star_plus_edge", 1),
    "Kab": ("complete_bipartite", 2),
    "csplit": ("complete_split", 1),
}


def parse_family(text):
    """star:5, H:1,2,1, G:0,3,2, snplus:6, Kab:2,3, csplit:4, path:4, ...

    Returns (graph, params) where params is the two-center FamilyParams
    for H/G literals and None otherwise.
    """
    name, sep, rest = text.partition(":")
    if not sep:
        raise UsageError("family literal needs the form name:args")
    try:
        args = [int(tok) for tok in rest.split(",")] if rest else []
    except ValueError:
        raise UsageError("family arguments must be integers: %r" % (text,))
    if name in ("H", "G"):
        if len(args) != 3:
            raise UsageError("%s needs three arguments p,r,s" % name)
        params = FamilyParams(*args, adjacent=(name == "G"))
        return make_family(params), params
    if name not in _NAMED:
        raise UsageError("unknown family %r" % (name,))
    inner, arity = _NAMED[name]
    if len(args) != arity:
        raise UsageError("%s needs %d argument(s)" % (name, arity))
    return make_named(inner, *args), None


def _load_graph(args):
    """The positional graph6 string, '-' for stdin, or --family literal."""
    family = getattr(args, "family", None)
    if family:
        if args.graph is not None:
            raise UsageError("give either a graph6 string or --family, not both")
        g, _ = parse_family(family)
        return g, family
    if args.graph is None:
        raise UsageError("pass a graph6 string, '-' for stdin, or --family")
    if args.graph == "-":
        for g in read_graph6_lines(sys.stdin):
            return g, to_graph6(g)
        raise Graph6Error("stdin held no graph6 line")
    return parse_graph6(args.graph), args.graph


def _emit(text, args):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _json_text(payload):
    return json.dumps(_canon(payload), sort_keys=True, indent=2) + "\n"


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cert_lines(certs):
    lines = []
    for cert in certs:
        tail = ""
        if cert.witness:
            tail = "  witness=%s" % cert.witness
        elif cert.verdict == NOT_APPLICABLE and "reason" in cert.notes:
            tail = "  (%s)" % cert.notes["reason"]
        lines.append(
            "%-28s %-24s lhs=%s rhs=%s slack=%s  %s%s"
            % (cert.bound_id, cert.input, _fmt(cert.lhs), _fmt(cert.rhs),
               _fmt(cert.slack), cert.verdict, tail)
        )
    return "\n".join(lines) + "\n"


def _emit_certs(certs, args, extra=None):
    if args.format == "json":
        payload = {"schema": 1, "certificates": [c.to_json_dict() for c in certs]}
        if extra:
            payload.update(extra)
        _emit(_json_text(payload), args)
    elif args.format == "csv":
        _emit(_csv_text(CSV_COLUMNS, [c.csv_row() for c in certs]), args)
    else:
        _emit(_cert_lines(certs), args)


def _verdict_exit(certs):
    verdicts = [c.verdict for c in certs]
    if VIOLATED in verdicts:
        return EXIT_VIOLATED
    if INDETERMINATE in verdicts:
        return EXIT_INDETERMINATE
    if verdicts and all(v == NOT_APPLICABLE for v in verdicts):
        return EXIT_NOT_APPLICABLE
    return EXIT_OK


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_spectrum(args):
    g, label = _load_graph(args)
    kind = MatrixKind.from_letter(args.matrix)
    spec = spectrum_of(g, kind)
    degs = degree_sequence(g).values
    trace = 0 if kind is MatrixKind.Adjacency else sum(degs)
    if args.format == "json":
        payload = {
            "schema": 1,
            "graph": label,
            "graph6": to_graph6(g),
            "matrix": kind.value,
            "n": g.n,
            "eigenvalues": list(spec.values),
            "trace": trace,
            "degrees": list(degs),
        }
        _emit(_json_text(payload), args)
    elif args.format == "csv":
        rows = [
            (to_graph6(g), kind.value, i + 1, _fmt(v))
            for i, v in enumerate(spec.values)
        ]
        _emit(_csv_text(("graph6", "matrix", "index", "eigenvalue"), rows), args)
    else:
        _emit(
            "graph: %s  matrix: %s  n: %d\n"
            "eigenvalues: %s\ntrace: %d\ndegrees: %s\n"
            % (to_graph6(g), kind.value, g.n,
               ", ".join(_fmt(v) for v in spec.values), trace,
               ", ".join(str(d) for d in degs)),
            args,
        )
    return EXIT_OK


# checkers that accept a single explicit index m from the command line
_SINGLE_M = {
    "schur_sum:L": lambda g, m: schur_sum(g, "L", m),
    "schur_sum:Q": lambda g, m: schur_sum(g, "Q", m),
    "grone_sum_L": grone_sum_L,
}


def cmd_check(args):
    g, label = _load_graph(args)
    key = args.bound
    if args.mode:
        key = "%s:%s" % (key, args.mode)
    subset = None
    if args.U is not None:
        try:
            subset = [int(tok) for tok in args.U.split(",") if tok]
        except ValueError:
            raise UsageError("--U wants a comma-separated vertex list")

    if key == "snplus_refutation":
        if args.m is None:
            raise UsageError("snplus_refutation needs --m")
        template = make_named("star_plus_edge", g.n) if g.n >= 3 else None
        if template is None or g.edges != template.edges:
            raise UsageError(
                "graph is not in the star-plus-edge layout; build it with "
                "--family snplus:%d" % g.n
            )
        certs = [snplus_refutation(g.n, args.m)]
        _emit_certs(certs, args)
        return _verdict_exit(certs)

    try:
        specs = resolve_checkers(key)
    except KeyError:
        raise UsageError("unknown bound %r" % (key,))
    if len(specs) > 1:
        raise UsageError(
            "ambiguous bound %r; pick one of %s"
            % (key, ", ".join(s.key for s in specs))
        )
    spec = specs[0]
    if spec.needs_subset and subset is None:
        raise UsageError("%s needs --U" % spec.key)
    if args.m is not None and spec.key not in _SINGLE_M:
        raise UsageError("--m applies to %s" % ", ".join(sorted(_SINGLE_M)))

    try:
        if args.m is not None:
            certs = [_SINGLE_M[spec.key](g, args.m)]
        elif spec.needs_subset:
            certs = spec.run(g, subset)
        else:
            certs = spec.run(g)
    except PreconditionError as exc:
        # outside the stated regime: no certificate, but a clean verdict
        if args.format == "json":
            _emit(_json_text({"schema": 1, "certificates": [],
                              "not_applicable": str(exc)}), args)
        else:
            _emit("not-applicable: %s\n" % exc, args)
        return EXIT_NOT_APPLICABLE
    _emit_certs(certs, args)
    return _verdict_exit(certs)


def cmd_family(args):
    g, params = parse_family(args.literal)
    degs = degree_sequence(g).values
    spec = spectrum_of(g, MatrixKind.SignlessLaplacian)
    certs = []
    if params is not None and not args.no_claims:
        certs = family_props(params)
    if args.format == "json":
        payload = {
            "schema": 1,
            "family": args.literal,
            "label": params.label if params is not None else args.literal,
            "graph6": to_graph6(g),
            "n": g.n,
            "degrees": list(degs),
            "q_spectrum": list(spec.values),
            "claims": [c.to_json_dict() for c in certs],
        }
        _emit(_json_text(payload), args)
    elif args.format == "csv":
        _emit(_csv_text(CSV_COLUMNS, [c.csv_row() for c in certs]), args)
    else:
        head = (
            "family: %s  graph6: %s  n: %d\nq-spectrum: %s\ndegrees: %s\n"
            % (params.label if params is not None else args.literal,
               to_graph6(g), g.n,
               ", ".join(_fmt(v) for v in spec.values),
               ", ".join(str(d) for d in degs))
        )
        _emit(head + (_cert_lines(certs) if certs else ""), args)
    return _verdict_exit(certs) if certs else EXIT_OK


def cmd_extract_h(args):
    g, label = _load_graph(args)
    h, params = extract_h(g)
    ds_in, ds_out = degree_sequence(g), degree_sequence(h)
    top2_in = ds_in.values[0] + ds_in.values[1]
    top2_out = ds_out.values[0] + ds_out.values[1]
    if args.format == "json":
        payload = {
            "schema": 1,
            "input": label,
            "label": params.label,
            "p": params.p,
            "r": params.r,
            "s": params.s,
            "adjacent": params.adjacent,
            "graph6": to_graph6(h),
            "n": h.n,
            "d1_plus_d2": {"input": top2_in, "extracted": top2_out},
        }
        _emit(_json_text(payload), args)
    elif args.format == "csv":
        rows = [(label, params.label, params.p, params.r, params.s,
                 int(params.adjacent), to_graph6(h), h.n)]
        _emit(
            _csv_text(("input", "label", "p", "r", "s", "adjacent",
                       "graph6", "n"), rows),
            args,
        )
    else:
        _emit(
            "input: %s\nextracted: %s  graph6: %s  n: %d\n"
            "d1+d2: %d -> %d\n"
            % (label, params.label, to_graph6(h), h.n, top2_in, top2_out),
            args,
        )
    return EXIT_OK


def cmd_sweep(args):
    corpus = CorpusSpec.from_string(
        args.corpus,
        connected_only=not args.include_disconnected,
        dedup=args.dedup,
    )
    bounds = [tok.strip() for tok in args.bounds.split(",") if tok.strip()]
    if not bounds:
        raise UsageError("--bounds wants a comma-separated checker list")
    try:
        report = run_sweep(
            corpus,
            bounds,
            subsets=args.subsets,
            workers=args.workers,
            emit_certificates=args.emit_certificates,
        )
    except KeyError as exc:
        raise UsageError(str(exc.args[0]) if exc.args else str(exc))
    if args.format == "json":
        _emit(report.to_json(), args)
    elif args.format == "csv":
        rows = [
            (key,
             report.totals[key]["holds"],
             report.totals[key]["holds-with-equality"],
             report.totals[key]["violated"],
             report.totals[key]["indeterminate-numeric"],
             report.totals[key]["not-applicable"],
             report.totals[key]["errors"])
            for key in report.bounds
        ]
        _emit(
            _csv_text(("bound", "holds", "holds_with_equality", "violated",
                       "indeterminate_numeric", "not_applicable", "errors"),
                      rows),
            args,
        )
    else:
        lines = [
            "corpus: %s  graphs: %d  subsets: %s"
            % (report.corpus["source"], report.corpus["graphs"], report.subsets)
        ]
        for key in report.bounds:
            counts = report.totals[key]
            best = report.min_positive_slack[key]
            lines.append(
                "%-28s holds=%d eq=%d violated=%d indeterminate=%d na=%d errors=%d"
                % (key, counts["holds"], counts["holds-with-equality"],
                   counts["violated"], counts["indeterminate-numeric"],
                   counts["not-applicable"], counts["errors"])
            )
            if best is not None:
                lines.append(
                    "%-28s   min positive slack %s at %s"
                    % ("", _fmt(best["slack"]), best["input"])
                )
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if report.safe_violation_count() == 0 else EXIT_VIOLATED


# ----------------------------------------------------------------------
# argument plumbing
# ----------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--format", choices=("json", "csv", "table"),
                     default="table", help="output format (default table)")
    sub.add_argument("--out", metavar="PATH",
                     help="write output to a file instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qbounds",
        description="Spectral bound toolkit: spectra, checks, families, sweeps.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("spectrum", help="eigenvalues of one graph")
    p.add_argument("graph", nargs="?", help="graph6 string, or - for stdin")
    p.add_argument("--family", help="family literal, e.g. star:5 or H:1,2,1")
    p.add_argument("--matrix", choices=("A", "L", "Q"), default="Q")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = subs.add_parser("check", help="run one checker on one graph")
    p.add_argument("graph", nargs="?", help="graph6 string, or - for stdin")
    p.add_argument("--family", help="family literal instead of graph6")
    p.add_argument("--bound", required=True, help="checker key, e.g. main_q1q2")
    p.add_argument("--U", help="comma-separated vertex subset, e.g. 0,2,5")
    p.add_argument("--m", type=int, help="eigenvalue index for the sum checkers")
    p.add_argument("--mode", help="variant suffix, e.g. safe or as-written")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("family", help="build a family and run its claims")
    p.add_argument("literal", help="family literal, e.g. H:1,2,1 or G:0,3,2")
    p.add_argument("--no-claims", action="store_true",
                   help="construction only, skip the claim set")
    _add_common(p)
    p.set_defaults(func=cmd_family)

    p = subs.add_parser("extract-h",
                        help="top-two-degree subgraph and its parameters")
    p.add_argument("graph", nargs="?", help="graph6 string, or - for stdin")
    p.add_argument("--family", help="family literal instead of graph6")
    _add_common(p)
    p.set_defaults(func=cmd_extract_h)

    p = subs.add_parser("sweep", help="run checkers over a graph corpus")
    p.add_argument("--corpus", required=True,
                   help="enumerate:3..7, enumerate:5, or file:path")
    p.add_argument("--bounds", required=True,
                   help="comma-separated checker keys or bare names")
    p.add_argument("--subsets", default="all-singletons",
                   help="subset policy (default all-singletons)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--include-disconnected", action="store_true")
    p.add_argument("--dedup", choices=("none", "by-sorted-Q-spectrum"),
                   default="none")
    p.add_argument("--emit-certificates", metavar="PATH",
                   help="also write every certificate as CSV")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    env = shlex.split(os.environ.get("QBOUNDS_OPTS", ""))
    if env and argv and not argv[0].startswith("-"):
        # env-provided defaults sit between the subcommand and the real
        # flags, so explicitly passed flags win
        argv = argv[:1] + env + argv[1:]
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except (Graph6Error, PreconditionError, DegenerateCaseError,
            UnsupportedRegimeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
