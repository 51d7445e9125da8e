"""Command-line front end: catalog, counting, quotient reports, bounds,
and the ratio-certificate pipeline, with machine-readable output.

Exit codes: 0 success, 2 usage error, 3 inconclusive certificate,
4 computation error.  Output goes to stdout or, with ``--out``, is
written atomically (temp file + rename in the target directory).
Identical invocations produce byte-identical outputs; the only
timestamp, the certificate's ``created`` field, is suppressed under
``--deterministic``.

All exact integers in JSON output are decimal strings so that consumers
with float-only JSON parsers cannot silently lose precision; CSV is the
hand-off format for plotting tools.
"""

from __future__ import annotations

import argparse
import datetime
import io
import json
import math
import os
import sys
import tempfile
from fractions import Fraction
from typing import Optional

from .bounds import BoundError, LowerBoundSequence, bound_rows, bridge_bounds, \
    degree_bound
from .certificate import CertificateError, RatioCertificate, certify_ratio, \
    verify_certificate
from .counting import BudgetExceeded, count_directed_saws, count_saws, \
    count_directed_walks, count_walks
from .events import EventError, build_cycle_family, build_event_profile, \
    count_with_events, event_free_series, lambda_upper
from .exact import float_repr
from .graphs import CATALOG_NAMES, GraphError, PeriodicLattice, \
    augment, catalog, load_spec_file
from .quotient import QuotientError, build_quotient, \
    check_representative_independence, check_symmetry, classify_type, \
    sublattice_action, tree_action


class UsageError(Exception):
    """Bad flag values; maps to exit code 2."""


_DOMAIN_ERRORS = (GraphError, QuotientError, EventError, BoundError,
                  CertificateError, BudgetExceeded, OSError, ValueError)


# ---------------------------------------------------------------------------
# Plumbing: selectors, output
# ---------------------------------------------------------------------------

def _graph_from(args):
    if getattr(args, "spec", None):
        if getattr(args, "graph", None):
            raise UsageError("give either --graph or --spec, not both")
        return load_spec_file(args.spec)
    if not getattr(args, "graph", None):
        raise UsageError("a graph selector is required (--graph or --spec)")
    return catalog(args.graph)


def _parse_rows(text: str) -> list:
    rows = []
    for part in text.split(";"):
        part = part.replace(",", " ").strip()
        if not part:
            continue
        try:
            rows.append([int(t) for t in part.split()])
        except ValueError:
            raise UsageError(f"bad sublattice row {part!r}") from None
    if not rows:
        raise UsageError("empty sublattice row list")
    return rows


def _action_from(args):
    sub = getattr(args, "sublattice", None)
    act = getattr(args, "action", None)
    if (sub is None) == (act is None):
        raise UsageError("give exactly one of --sublattice or --action")
    return sublattice_action(_parse_rows(sub)) if sub is not None \
        else tree_action(act)


def _quotient_from(args, g):
    return build_quotient(g, _action_from(args))


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(out)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".saw-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join("" if c is None else str(c) for c in row) + "\n")
    return buf.getvalue()


def _json_doc(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_catalog(args) -> int:
    rows = []
    for name in CATALOG_NAMES:
        g = catalog(name)
        kind = (f"lattice d={g.dimension} cells={g.cells}"
                if isinstance(g, PeriodicLattice) else
                ("tree" if g.is_acyclic else "word graph"))
        rows.append((name, g.degree, "yes" if g.is_simple else "no", kind))
    if args.format == "json":
        doc = {"catalog": [{"name": n, "degree": str(d), "simple": s,
                            "kind": k} for n, d, s, k in rows]}
        _emit(_json_doc(doc), args.out)
    else:
        _emit(_csv(["name", "degree", "simple", "kind"], rows), args.out)
    return 0


def _series_output(args, graph_label: str, start_label: str, counts: list,
                   directed: bool, kind: str) -> None:
    def root(c: int, n: int) -> str:
        if c == 0:
            return "0"
        try:
            return float_repr(float(c) ** (1.0 / n))
        except OverflowError:
            return float_repr(math.exp(math.log(c) / n))
    rows = [(n, counts[n], root(counts[n], n))
            for n in range(1, len(counts))]
    if args.format == "json":
        doc = {"graph": graph_label, "start": start_label, "kind": kind,
               "directed": directed,
               "rows": [{"n": n, "sigma": str(c), "a": a}
                        for n, c, a in rows]}
        _emit(_json_doc(doc), args.out)
    else:
        _emit(_csv(["n", "sigma_n", "a_n"],
                   [(n, c, a) for n, c, a in rows]), args.out)


def cmd_count(args) -> int:
    g = _graph_from(args)
    if args.sublattice is not None or args.action is not None:
        q = _quotient_from(args, g)
        if args.walks:
            counts = count_directed_walks(q, args.n)
        else:
            wc = count_directed_saws(q, args.n, workers=args.workers)
            counts = list(wc.counts)
        _series_output(args, q.quotient_id, q.base.key_str(q.rep_of(
            q.origin_orbit())), counts, True,
            "walks" if args.walks else "saws")
        return 0
    start = g.parse_key(args.start) if args.start else None
    if args.walks:
        counts = count_walks(g, start, args.n)
        _series_output(args, g.graph_id, args.start or g.key_str(g.origin()),
                       counts, False, "walks")
        return 0
    wc = count_saws(g, start, args.n, workers=args.workers,
                    max_nodes=args.max_nodes)
    label = g.key_str(wc.start)
    counts = list(wc.counts)
    if wc.truncated:
        print(f"note: node budget reached; series truncated at "
              f"n={wc.n_max}", file=sys.stderr)
    _series_output(args, g.graph_id, label, counts, False, "saws")
    return 0


def cmd_quotient(args) -> int:
    g = _graph_from(args)
    action = _action_from(args)
    q = build_quotient(g, action)
    report = args.report
    if report == "summary":
        _emit(q.to_text(probe_radius=args.radius) + "\n", args.out)
        return 0
    if report == "type":
        rep = classify_type(q)
        if args.format == "json":
            doc = {"quotient": q.quotient_id, "type": str(rep.type_),
                   "cycle_length": str(rep.length),
                   "witness": [g.key_str(v) for v in rep.witness]}
            _emit(_json_doc(doc), args.out)
        else:
            _emit(f"type {rep.type_} (shortest directed cycle length "
                  f"{rep.length})\n", args.out)
        return 0
    if report == "symmetry":
        ok = check_symmetry(q, probe_radius=args.radius)
        _emit(f"symmetric within radius {args.radius}: {ok}\n", args.out)
        return 0
    if report == "independence":
        ok = check_representative_independence(g, action, q, args.radius)
        _emit(f"representative-independent within radius {args.radius}: "
              f"{ok}\n", args.out)
        return 0
    raise UsageError(f"unknown report {report!r}")


def cmd_type(args) -> int:
    args.report = "type"
    return cmd_quotient(args)


def cmd_events(args) -> int:
    g = _graph_from(args)
    q = _quotient_from(args, g)
    rep = classify_type(q)
    family = build_cycle_family(q, rep)
    k = family.length if args.k is None else args.k
    if args.grid:
        prof = build_event_profile(q, family, args.n)
        rows = [(n, kk, mm if mm >= 0 else None, rr, c)
                for (n, kk, mm, rr), c in prof.grid]
        if args.format == "json":
            doc = {"quotient": q.quotient_id,
                   "cycle_length": str(family.length),
                   "grid": [{"n": n, "k": kk,
                             "m": None if mm is None else mm,
                             "r": rr, "count": str(c)}
                            for n, kk, mm, rr, c in rows],
                   "lambda": [{"k": kk, "n": n, "value": float_repr(float(v))}
                              for (kk, n), v in prof.lambdas]}
            _emit(_json_doc(doc), args.out)
        else:
            _emit(_csv(["n", "k", "m", "r", "count"], rows), args.out)
        return 0
    if args.r == 0 and args.m is None:
        series = event_free_series(q, family, k, args.n)
    else:
        series = [count_with_events(q, None, n, family, k, args.m, args.r)
                  for n in range(args.n + 1)]
    rows = [(n, series[n]) for n in range(args.n + 1)]
    if args.format == "json":
        doc = {"quotient": q.quotient_id, "cycle_length": str(family.length),
               "k": str(k), "m": None if args.m is None else str(args.m),
               "r": str(args.r),
               "rows": [{"n": n, "count": str(c)} for n, c in rows]}
        if args.r == 0 and args.m is None and args.n >= 1:
            doc["lambda_upper"] = float_repr(
                float(lambda_upper(q, family, k, args.n)))
        _emit(_json_doc(doc), args.out)
    else:
        _emit(_csv(["n", "count"], rows), args.out)
    return 0


def cmd_bounds(args) -> int:
    if args.dimension is not None:
        betas, seq = bridge_bounds(args.dimension, args.n,
                                   workers=args.workers)
        rows = bound_rows(betas, seq)
        if args.format == "json":
            doc = {"graph": seq.graph_id,
                   "rows": [{"n": n, "beta": str(beta),
                             "b": float_repr(b), "provenance": p}
                            for n, beta, b, p in rows]}
            _emit(_json_doc(doc), args.out)
        else:
            _emit(_csv(["n", "beta_n", "b_n", "provenance"],
                       [(n, beta, float_repr(b), p)
                        for n, beta, b, p in rows]), args.out)
        return 0
    g = _graph_from(args)
    val = degree_bound(g.degree, simple=g.is_simple)
    if args.format == "json":
        doc = {"graph": g.graph_id, "degree": str(g.degree),
               "b": float_repr(float(val)), "provenance": "degree"}
        _emit(_json_doc(doc), args.out)
    else:
        _emit(_csv(["graph", "degree", "b", "provenance"],
                   [(g.graph_id, g.degree, float_repr(float(val)),
                     "degree")]), args.out)
    return 0


def _lower_bound_for(args, g, budget: int) -> LowerBoundSequence:
    if args.mu_exact is not None:
        try:
            v = Fraction(args.mu_exact)
        except (ValueError, ZeroDivisionError):
            raise UsageError(
                f"--mu-exact wants a rational, got {args.mu_exact!r}") \
                from None
        if v <= 0:
            raise UsageError("--mu-exact must be positive")
        return LowerBoundSequence.from_constant(v, g.graph_id,
                                                provenance="mu-exact")
    if isinstance(g, PeriodicLattice) and g.cells == 1:
        _, seq = bridge_bounds(g.dimension, max(budget, 1),
                               workers=args.workers)
        return seq
    if g.is_simple:
        return LowerBoundSequence.from_constant(
            degree_bound(g.degree), g.graph_id, provenance="degree")
    raise UsageError("no automatic lower bound for this graph; "
                     "pass --mu-exact")


def cmd_ratio(args) -> int:
    g = _graph_from(args)
    q = _quotient_from(args, g)
    rep = classify_type(q)
    family = build_cycle_family(q, rep)
    b = _lower_bound_for(args, g, args.budget)
    cert = certify_ratio(g, q, family, b, args.budget, workers=args.workers)
    if not args.deterministic:
        stamp = datetime.datetime.now(datetime.timezone.utc) \
            .strftime("%Y-%m-%dT%H:%M:%SZ")
        payload = {"format": cert.payload["format"],
                   "version": cert.payload["version"],
                   "created": stamp}
        payload.update({k: v for k, v in cert.payload.items()
                        if k not in ("format", "version")})
        cert = RatioCertificate(payload)
    _emit(cert.to_json(), args.out)
    if cert.status != "certified":
        print(f"inconclusive: {cert.payload.get('reason')}", file=sys.stderr)
        return 3
    return 0


def cmd_verify(args) -> int:
    cert = RatioCertificate.load(args.certificate)
    report = verify_certificate(cert)
    _emit(report.summary() + "\n", args.out)
    if not report.ok:
        return 4
    return 0 if report.status == "certified" else 3


def cmd_augment(args) -> int:
    if args.certify:
        print("augmentation certificates are not implemented (future work); "
              "only the augmented graph itself is produced", file=sys.stderr)
        return 4
    g = _graph_from(args)
    parts = args.chord.split()
    if len(parts) != 2:
        raise UsageError("--chord wants two vertex keys, e.g. '0:0,0 0:1,1'")
    ga = augment(g, (g.parse_key(parts[0]), g.parse_key(parts[1])))
    if args.n:
        wc = count_saws(ga, None, args.n, workers=args.workers)
        _series_output(args, ga.graph_id, ga.key_str(wc.start),
                       list(wc.counts), False, "saws")
        return 0
    buf = io.StringIO()
    buf.write(f"# {ga.graph_id}\n")
    buf.write("kind lattice\n")
    buf.write(f"dimension {ga.dimension}\n")
    buf.write(f"cells {ga.cells}\n")
    for (i, j, off, m) in ga.edges:
        buf.write("edge " + " ".join(str(t) for t in (i, j, *off, m)) + "\n")
    _emit(buf.getvalue(), args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(p, graph=True, quotient=False):
    p.add_argument("--format", choices=("json", "csv"), default="csv",
                   help="output format (default csv)")
    p.add_argument("--out", metavar="FILE",
                   help="write output atomically to FILE instead of stdout")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: SAW_WORKERS or 1)")
    p.add_argument("--deterministic", action="store_true",
                   help="suppress the timestamp field in outputs")
    if graph:
        p.add_argument("--graph", metavar="NAME",
                       help="catalog graph name (see `saw catalog`)")
        p.add_argument("--spec", metavar="FILE",
                       help="graph-spec file instead of a catalog name")
    if quotient:
        p.add_argument("--sublattice", metavar="ROWS",
                       help="semicolon-separated integer row vectors, "
                            "e.g. '3' or '2 0;0 2'")
        p.add_argument("--action", metavar="NAME",
                       help="catalog action name, e.g. 'child-swap'")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="saw",
        description="Exact self-avoiding-walk enumeration, quotient "
                    "multigraphs, and certified growth-ratio bounds.")
    sub = ap.add_subparsers(dest="cmd", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("catalog", help="list built-in graphs")
    _add_common(p, graph=False)
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("count", help="exact SAW or walk counts")
    _add_common(p, quotient=True)
    p.add_argument("--n", type=int, default=10, help="maximum length")
    p.add_argument("--start", metavar="KEY",
                   help="start vertex key (default: origin)")
    p.add_argument("--walks", action="store_true",
                   help="count all walks instead of self-avoiding ones")
    p.add_argument("--max-nodes", type=int, default=None,
                   help="search-node budget; series truncates when hit")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("quotient", help="build a quotient and report on it")
    _add_common(p, quotient=True)
    p.add_argument("--report",
                   choices=("summary", "type", "symmetry", "independence"),
                   default="summary")
    p.add_argument("--radius", type=int, default=4,
                   help="probe radius for summary/symmetry/independence")
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("type", help="classify a quotient (shortcut)")
    _add_common(p, quotient=True)
    p.add_argument("--radius", type=int, default=4, help=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_type)

    p = sub.add_parser("events", help="pattern-event constrained counts")
    _add_common(p, quotient=True)
    p.add_argument("--n", type=int, default=8, help="maximum length")
    p.add_argument("--k", type=int, default=None,
                   help="occurrence threshold (default: full cycle length)")
    p.add_argument("--m", type=int, default=None,
                   help="window half-width (default: unwindowed)")
    p.add_argument("--r", type=int, default=0,
                   help="occurrence allowance (default 0)")
    p.add_argument("--grid", action="store_true",
                   help="emit the full (n,k,m,r) profile grid")
    p.set_defaults(fn=cmd_events)

    p = sub.add_parser("bounds", help="lower-bound sequences b_n")
    _add_common(p)
    p.add_argument("--dimension", type=int, default=None,
                   help="hypercubic dimension for bridge bounds")
    p.add_argument("--n", type=int, default=10, help="maximum index")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("ratio", help="finite-time ratio certificate")
    _add_common(p, quotient=True)
    p.add_argument("--budget", type=int, default=10,
                   help="search budget (maximum probe length)")
    p.add_argument("--mu-exact", metavar="Q",
                   help="use the constant lower bound Q (rational)")
    p.set_defaults(fn=cmd_ratio)

    p = sub.add_parser("verify", help="replay a certificate file")
    _add_common(p, graph=False)
    p.add_argument("certificate", metavar="FILE")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("augment", help="add a chord orbit to a lattice")
    _add_common(p)
    p.add_argument("--chord", required=True, metavar="'U V'",
                   help="two vertex keys, e.g. '0:0,0 0:1,1'")
    p.add_argument("--n", type=int, default=0,
                   help="if > 0, count SAWs on the augmented graph")
    p.add_argument("--certify", action="store_true",
                   help="(reserved) certificate for the augmentation")
    p.set_defaults(fn=cmd_augment)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 4


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
