"""Command-line front end.

Exit codes: 0 success, 1 counterexample or certification failure,
2 usage, input or numeric error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence, TextIO

from hypoenergy import __version__
from hypoenergy.catalog import CATALOG, is_exceptional
from hypoenergy.certify import DEFAULT_MAX_CUT, certify, dumps, loads
from hypoenergy.enumeration import EnumSpec, census, classify_stream, connected_graphs
from hypoenergy.errors import (
    CertificateFormatError,
    CertificateRejected,
    CertificationError,
    GraphError,
    JacobiNoConvergence,
    UnresolvedVerdictError,
)
from hypoenergy.formats import read_graphs, to_graph6, write_graphs
from hypoenergy.graph import Graph, connected_components
from hypoenergy.spectral import classify, energy
from hypoenergy.verify import verify_certificate

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2

REPORT_SCHEMA = "hypoenergy.run/1"


class UsageError(Exception):
    pass


def fmt_real(x: float) -> str:
    """Fixed 12-decimal rendering with trailing zeros trimmed (``8.0``, ``-0.101020514434``)."""
    s = f"{x:.12f}".rstrip("0")
    if s.endswith("."):
        s += "0"
    return "0.0" if s == "-0.0" else s


# input / output helpers ----------------------------------------------------


def _read_input(path: str, fmt: str) -> list[Graph]:
    if path == "-":
        return read_graphs(sys.stdin, fmt)
    with open(path, encoding="ascii") as fh:
        return read_graphs(fh, fmt)


class _Output:
    def __init__(self, path: str | None):
        self.path = path
        self.fh: TextIO = sys.stdout

    def __enter__(self) -> TextIO:
        if self.path and self.path != "-":
            self.fh = open(self.path, "w", encoding="ascii", newline="\n")
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not sys.stdout:
            self.fh.close()
        return False


def _spec(args) -> EnumSpec:
    graph_class = "connected"
    if args.trees:
        graph_class = "trees"
    elif args.cyclic_only:
        graph_class = "cyclic"
    elif args.quadrangle_free:
        graph_class = "quadrangle_free"
    if args.trees and args.min_edges_n:
        raise UsageError("--trees and --min-edges-n select nothing together")
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    try:
        return EnumSpec(args.max_n, args.delta, graph_class, args.min_edges_n)
    except (ValueError, GraphError) as exc:
        raise UsageError(str(exc)) from None


def _cyclomatic_text(g: Graph) -> str:
    comps = connected_components(g)
    values = []
    for comp in comps:
        h = g.induced_subgraph(comp)
        values.append(h.m - h.n + 1)
    return ",".join(map(str, values))


def _record(g: Graph, verdict) -> dict:
    return {
        "id": to_graph6(g),
        "n": g.n,
        "m": g.m,
        "c": g.m - g.n + 1,
        "energy": round(verdict.energy, 12),
        "margin": round(verdict.margin, 12),
        "verdict": verdict.classification,
        "tier": verdict.tier,
        "exceptional": is_exceptional(g),
        "certificate": None,
    }


def _report(command: str, parameters: dict, records: list[dict], summary: dict,
            started: float | None) -> dict:
    records = sorted(records, key=lambda r: (r["n"], r["id"]))
    report = {
        "schema": REPORT_SCHEMA,
        "tool": "hypoenergy",
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "summary": summary,
        "records": records,
    }
    if started is not None:
        report["wall_time_s"] = round(time.perf_counter() - started, 3)
    return report


def _write_report(report: dict, path: str | None) -> None:
    if not path:
        return
    with _Output(path) as fh:
        json.dump(report, fh, indent=1, sort_keys=False)
        fh.write("\n")


# subcommands ---------------------------------------------------------------


def cmd_energy(args) -> int:
    graphs = _read_input(args.input, args.format)
    with _Output(args.out) as out:
        for g in graphs:
            if g.n == 0:
                raise UsageError("the empty graph has no energy verdict")
            if len(connected_components(g)) == 1:
                v = classify(g)
                out.write(
                    f"n={g.n} m={g.m} c={g.m - g.n + 1} E={fmt_real(v.energy)} "
                    f"{v.classification} margin={fmt_real(v.margin)}\n"
                )
            else:
                e = energy(g)
                out.write(
                    f"n={g.n} m={g.m} c={_cyclomatic_text(g)} E={fmt_real(e)} "
                    f"disconnected margin={fmt_real(e - g.n)}\n"
                )
    return EXIT_OK


def _expected_hits(spec: EnumSpec) -> set[str]:
    return {name for name, g in CATALOG.items() if g.n <= spec.max_order and spec.accepts(g)}


def cmd_verify_theorem(args) -> int:
    spec = _spec(args)
    if spec.max_degree > 3:
        raise UsageError("the classification only covers --delta at most 3")
    started = time.perf_counter() if args.timing else None
    classified = classify_stream(spec, args.jobs)
    records = [_record(g, v) for g, v in classified]
    hits = [r for r in records if r["verdict"] == "hypoenergetic"]
    found = {r["exceptional"] for r in hits if r["exceptional"]}
    offending = [r for r in hits if r["exceptional"] is None]
    expected = _expected_hits(spec)
    missing = sorted(expected - found)
    confirmed = not offending and not missing
    min_margin = min((abs(r["margin"]) for r in records), default=None)
    summary = {
        "scanned": len(records),
        "hypoenergetic": len(hits),
        "hits": [r["exceptional"] or r["id"] for r in hits],
        "expected": sorted(expected, key=list(CATALOG).index),
        "missing": missing,
        "offending": [r["id"] for r in offending],
        "by_order": _tally(records),
        "tiers": _count(r["tier"] for r in records),
        "min_abs_margin": min_margin,
        "confirmed": confirmed,
    }
    parameters = {"max_n": spec.max_order, "delta": spec.max_degree,
                  "class": spec.graph_class, "min_edges_n": spec.min_edges_n}
    _write_report(_report("verify-theorem", parameters, records, summary, started), args.out)
    print(f"scanned {len(records)} graphs ({spec.graph_class}, n<={spec.max_order}, "
          f"delta<={spec.max_degree}{', m>=n' if spec.min_edges_n else ''})")
    for r in hits:
        print(f"hit {r['exceptional'] or '?'} {r['id']} n={r['n']} margin={fmt_real(r['margin'])}")
    if min_margin is not None:
        print(f"smallest |E-n| = {fmt_real(min_margin)}")
    if confirmed:
        print(f"confirmed: {len(hits)} hits, exactly the expected set")
        return EXIT_OK
    for r in offending:
        print(f"counterexample {r['id']} n={r['n']} E={fmt_real(r['energy'])}")
    for name in missing:
        print(f"missing expected hit {name}")
    return EXIT_FOUND


def _tally(records: list[dict]) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for r in records:
        row = out.setdefault(str(r["n"]), [0, 0])
        row[0] += 1
        row[1] += r["verdict"] == "hypoenergetic"
    return out


def _count(items) -> dict[str, int]:
    out: dict[str, int] = {}
    for item in items:
        out[item] = out.get(item, 0) + 1
    return out


def _certify_one(item: tuple[Graph, int]) -> dict:
    # Worker for one corpus graph; returns a plain, picklable result.
    g, max_cut = item
    gid = to_graph6(g)
    name = is_exceptional(g)
    if name is not None:
        return {"id": gid, "status": "exceptional", "name": name}
    try:
        cert = certify(g, max_cut)
    except CertificationError as exc:
        return {"id": gid, "status": "failed", "stuck": to_graph6(exc.graph), "error": str(exc)}
    text = dumps(cert)
    try:
        report = verify_certificate(loads(text))
    except CertificateRejected as exc:
        return {"id": gid, "status": "rejected", "error": str(exc), "certificate": text}
    return {
        "id": gid,
        "status": "verified",
        "certificate": text,
        "slack_report": report.lines(),
        "cuts": len(cert.cuts()),
        "leaves": len(cert.leaves()),
        "max_cut": max((len(c.cut) for c in cert.cuts()), default=0),
        "root_slack": report.root_slack,
        "cases": [c.report.case for c in cert.cuts()],
    }


def _check_certifiable(g: Graph) -> None:
    comps = connected_components(g)
    if g.n == 0 or len(comps) != 1:
        raise UsageError(f"{to_graph6(g)} is not connected")
    if g.max_degree > 3:
        raise UsageError(f"{to_graph6(g)} has maximum degree {g.max_degree} > 3")


def cmd_certify(args) -> int:
    if args.input is not None and args.max_n is not None:
        raise UsageError("give either an input file or --max-n, not both")
    if args.input is None and args.max_n is None:
        raise UsageError("nothing to certify: give an input file or --max-n")
    if args.max_n is not None:
        if args.max_n < 1:
            raise UsageError("--max-n must be at least 1")
        try:
            spec = EnumSpec(args.max_n, 3, "cyclic")
        except (ValueError, GraphError) as exc:
            raise UsageError(str(exc)) from None
        graphs = list(connected_graphs(spec))
    else:
        graphs = _read_input(args.input, args.format)
    for g in graphs:
        _check_certifiable(g)
    if args.max_cut < 1:
        raise UsageError("--max-cut must be at least 1")
    started = time.perf_counter() if args.timing else None

    work = [(g, args.max_cut) for g in graphs]
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_certify_one, work, chunksize=16))
    else:
        results = [_certify_one(item) for item in work]

    if args.cert_dir:
        os.makedirs(args.cert_dir, exist_ok=True)
    single = len(results) == 1 and not args.cert_dir
    status = EXIT_OK
    for index, res in enumerate(results):
        if res["status"] == "exceptional":
            print(f"{res['id']} exceptional: {res['name']}")
        elif res["status"] == "verified":
            if single:
                sys.stdout.write(res["certificate"])
                for line in res["slack_report"]:
                    print(f"# {line}")
            else:
                print(f"{res['id']} verified cuts={res['cuts']} leaves={res['leaves']} "
                      f"max_cut={res['max_cut']} slack={fmt_real(res['root_slack'])}")
            if args.cert_dir:
                path = os.path.join(args.cert_dir, f"{index:05d}.cert")
                with open(path, "w", encoding="ascii", newline="\n") as fh:
                    fh.write(res["certificate"])
                    for line in res["slack_report"]:
                        fh.write(f"# {line}\n")
        elif res["status"] == "failed":
            print(f"{res['id']} certification failed; stuck subgraph {res['stuck']}")
            status = EXIT_FOUND
        else:
            print(f"{res['id']} certificate rejected: {res['error']}")
            status = EXIT_FOUND

    tally = _count(r["status"] for r in results)
    summary = {
        "inputs": len(results),
        **{k: tally.get(k, 0) for k in ("verified", "exceptional", "failed", "rejected")},
        "cut_sizes": _count(str(r["max_cut"]) for r in results if r["status"] == "verified"),
        "cases": _count(c for r in results if r["status"] == "verified" for c in r["cases"]),
    }
    records = [
        {"id": r["id"], "n": graphs[i].n, "m": graphs[i].m, "c": graphs[i].m - graphs[i].n + 1,
         "certificate": r["status"], **({"stuck": r["stuck"]} if "stuck" in r else {})}
        for i, r in enumerate(results)
    ]
    parameters = {"max_n": args.max_n, "input": args.input, "max_cut": args.max_cut}
    _write_report(_report("certify", parameters, records, summary, started), args.out)
    if not single:
        print(f"{summary['verified']} verified, {summary['exceptional']} exceptional, "
              f"{summary['failed']} failed, {summary['rejected']} rejected")
    return status


def cmd_check_certificate(args) -> int:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="ascii") as fh:
            text = fh.read()
    try:
        report = verify_certificate(loads(text))
    except CertificateRejected as exc:
        print(f"rejected: {exc}")
        return EXIT_FOUND
    for line in report.lines():
        print(line)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    spec = _spec(args)
    with _Output(args.out) as out:
        if args.counts:
            out.write("n,count,hypoenergetic_count\n")
            for n, count, hypo in census(spec, args.jobs):
                out.write(f"{n},{count},{hypo}\n")
        else:
            write_graphs(connected_graphs(spec), out, args.format)
    return EXIT_OK


# parser --------------------------------------------------------------------


def _add_class_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-n", type=int, required=True, help="largest order to enumerate")
    p.add_argument("--delta", type=int, default=3, help="maximum degree (default 3)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--trees", action="store_true", help="trees only")
    group.add_argument("--cyclic-only", action="store_true", help="graphs with m >= n only")
    group.add_argument("--quadrangle-free", action="store_true", help="graphs without a 4-cycle")
    p.add_argument("--min-edges-n", action="store_true", help="keep only graphs with m >= n")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypoenergy",
        description="Energy, enumeration and edge-cut certificates for graphs of maximum degree 3.",
    )
    parser.add_argument("--version", action="version", version=f"hypoenergy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="energy and hypoenergetic verdict of input graphs")
    p.add_argument("input", nargs="?", default="-", help="graph file (default stdin)")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--out", help="write output here instead of stdout")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("verify-theorem", help="scan all graphs up to --max-n for hypoenergetic ones")
    _add_class_flags(p)
    p.add_argument("--out", help="write the JSON run report here")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("certify", help="build and verify edge-cut certificates")
    p.add_argument("input", nargs="?", help="graph file, or '-' for stdin")
    p.add_argument("--max-n", type=int, help="certify every cyclic graph up to this order instead")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--max-cut", type=int, default=DEFAULT_MAX_CUT,
                   help=f"largest cut size to search (default {DEFAULT_MAX_CUT})")
    p.add_argument("--cert-dir", help="write one certificate file per input into this directory")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--out", help="write the JSON run report here")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("check-cert", help="verify a certificate file")
    p.add_argument("input", help="certificate file, or '-' for stdin")
    p.set_defaults(func=cmd_check_certificate)

    p = sub.add_parser("enumerate", help="list graphs as graph6/edge lists, or counts as CSV")
    _add_class_flags(p)
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--counts", action="store_true", help="CSV n,count,hypoenergetic_count")
    p.add_argument("--out", help="write output here instead of stdout")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hypoenergy: error: {exc}", file=sys.stderr)
    except (GraphError, CertificateFormatError, OSError) as exc:
        print(f"hypoenergy: input error: {exc}", file=sys.stderr)
    except (UnresolvedVerdictError, JacobiNoConvergence) as exc:
        print(f"hypoenergy: numeric error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
