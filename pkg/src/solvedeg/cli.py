"""Command line interface: invariant reports and the bundled corpus.

Exit codes: 0 success, 1 usage error (bad input, violated
precondition, a failed corpus expectation), 2 capacity (a degree cap
was passed or a work budget exceeded). JSON reports carry a schema
number and keep wall-clock timings in a separate block so the semantic
payload stays byte-stable across identical runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import corpus as corpus_mod
from . import invariants, sysio
from .errors import CapacityError, DegreeCapExceeded, UsageError
from .polyring import TermOrder

_COMPUTE_TOKENS = ("sd", "lfd", "dff", "dreg", "reg", "maxgb", "table")


def _parse_compute(arg):
    if arg is None:
        return None
    parts = [s.strip() for s in arg.split(",") if s.strip()]
    bad = sorted(set(parts) - set(_COMPUTE_TOKENS))
    if bad:
        raise UsageError(
            f"unknown --compute items {bad}; choose from {list(_COMPUTE_TOKENS)}"
        )
    if not parts:
        raise UsageError("--compute needs at least one item")
    return tuple(dict.fromkeys(parts))


def _report_text(report):
    lines = []
    system = report.system
    lines.append(
        f"system: field {system.p}, vars {' '.join(system.names)},"
        f" {len(system.gens)} generators"
    )
    for o in report.orders:
        bits = [f"max basis degree {o.max_gb_degree}"]
        if o.solving_degree is not None:
            bits.append(f"solving degree {o.solving_degree}")
        if o.identity_ok is not None:
            bits.append("identity ok" if o.identity_ok else "IDENTITY FAILED")
        lines.append(f"order {o.token}: " + ", ".join(bits))
        if o.warning:
            lines.append(f"  warning: {o.warning}")
    if "lfd" in report.computed:
        lines.append(f"last fall degree: {report.last_fall_degree}"
                     + ("" if report.fall_order_check else "  (ORDER CHECK FAILED)"))
        for ev in report.falls:
            j = ev.to_json(system.names)
            tag = f"falls at {ev.fall_degree}" if ev.is_fall else "no fall"
            lines.append(f"  {j['poly']} (degree {ev.degree}): {tag}")
    if "dff" in report.computed:
        if report.first_fall_degree is None:
            lines.append("first fall degree: none found"
                         f" (searched to {report.first_fall_searched_to})")
        else:
            lines.append(f"first fall degree: {report.first_fall_degree}")
    if "dreg" in report.computed:
        lines.append(f"degree of regularity: {report.degree_of_regularity}")
    if "reg" in report.computed:
        cert = "certified" if report.regularity.certified else "NOT certified"
        lines.append(f"regularity: {report.regularity.value} ({cert})")
    if report.table is not None:
        lines.append("equality table (a: matches next degree, b: matches ideal):")
        lines.append(report.table.pretty())
        lines.append(f"  stable from: {report.table.stable_from},"
                     f" complete from: {report.table.complete_from}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def _trace_depth(report, system):
    depths = [o.max_gb_degree for o in report.orders]
    depths += [o.solving_degree for o in report.orders
               if o.solving_degree is not None]
    if report.last_fall_degree is not None:
        depths.append(report.last_fall_degree)
    if report.table is not None:
        depths.append(report.table.dmax)
    return max(depths, default=system.max_degree())


def _cmd_invariants(args):
    t0 = time.monotonic()
    sf = sysio.load(args.file)
    system = sf.system
    if args.field_equations or sf.field_equations:
        system = system.with_field_equations()
    if args.order:
        orders = [TermOrder.parse_token(tok, system.names) for tok in args.order]
    elif sf.order is not None:
        orders = [sf.order]
    else:
        orders = [system.default_order()]
    compute = _parse_compute(args.compute)
    cache = invariants.ClosureCache(system)
    report = invariants.assemble_report(
        system,
        orders=orders,
        cap=args.max_degree,
        compute=compute,
        dff_max=args.max_degree,
        table_dmax=args.max_degree,
        cache=cache,
        homvar=sf.homvar,
    )
    trace = None
    if args.trace:
        trace = invariants.closure_trace(
            system, _trace_depth(report, system), cache=cache,
            falls=report.falls,
        )
    print(_report_text(report))
    if trace is not None:
        print("trace:")
        for row in trace:
            falls = "".join(
                f" fall:{f['poly']}" for f in row["falls"]
            )
            print(f"  d={row['d']:3d} dim={row['dim']:6d}"
                  f" trunc={row['dim_trunc']:6d}"
                  f" added={row['rows_added']:5d}{falls}")
    if args.json:
        payload = report.to_json()
        if trace is not None:
            payload["trace"] = trace
        payload["timing_ms"] = {
            "total": int((time.monotonic() - t0) * 1000)
        }
        _write_json(args.json, payload)
    return 0


def _cmd_verify(args):
    t0 = time.monotonic()
    results = corpus_mod.run_corpus(args.q)
    for r in results:
        print(r.line())
    failures = [r for r in results if not r.ok and not r.disputed]
    disputed = sum(1 for r in results if r.disputed)
    print(f"q={args.q}: {len(results)} checks, {len(failures)} failures,"
          f" {disputed} disputed claims recorded")
    if args.json:
        payload = {
            "schema": 1,
            "q": args.q,
            "checks": [
                {
                    "entry": r.entry, "q": r.q, "key": r.key,
                    "expected": _jsonable(r.expected),
                    "got": _jsonable(r.got),
                    "ok": r.ok, "disputed": r.disputed, "note": r.note,
                }
                for r in results
            ],
            "failures": len(failures),
            "timing_ms": {"total": int((time.monotonic() - t0) * 1000)},
        }
        _write_json(args.json, payload)
    return 1 if failures else 0


def _jsonable(value):
    if isinstance(value, tuple):
        return list(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _write_json(path, payload):
    text = json.dumps(payload, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e}") from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="solvedeg",
        description="Groebner-basis complexity invariants of polynomial"
                    " systems over prime fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    inv = sub.add_parser(
        "invariants",
        help="compute the invariant report of a system file",
    )
    inv.add_argument("file", help="system file path")
    inv.add_argument("--order", action="append", metavar="TOK",
                     help="term order token (drl, grlex, lex, optionally"
                          " :a>b>c); repeatable")
    inv.add_argument("--compute", metavar="LIST",
                     help="comma list from " + ",".join(_COMPUTE_TOKENS)
                          + " (default: all but table)")
    inv.add_argument("--max-degree", type=int, dest="max_degree",
                     metavar="N", help="degree cap for scans and the table window")
    inv.add_argument("--field-equations", action="store_true",
                     dest="field_equations",
                     help="append x_i^p - x_i for every variable")
    inv.add_argument("--json", metavar="PATH",
                     help="also write the JSON report to PATH (- for stdout)")
    inv.add_argument("--trace", action="store_true",
                     help="print per-degree closure diagnostics")
    ver = sub.add_parser(
        "verify-paper",
        help="run the bundled verification corpus against its frozen values",
    )
    ver.add_argument("--q", type=int, default=5, choices=corpus_mod.SUPPORTED_QS,
                     help="field size for the parametrized entries (default 5)")
    ver.add_argument("--json", metavar="PATH",
                     help="also write the results to PATH (- for stdout)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "invariants":
            return _cmd_invariants(args)
        return _cmd_verify(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except DegreeCapExceeded as e:
        print(f"degree cap exceeded: {e}", file=sys.stderr)
        for row in e.trace[-5:]:
            print(f"  {row}", file=sys.stderr)
        return 2
    except CapacityError as e:
        print(f"capacity exceeded: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
