"""Command-line front end: construct, search, count, verify, inspect, table, merge.

Exit codes: 0 success, 2 no self-dual normal basis exists, 3 unsupported
(mixed-degree) case, 4 invalid input, 5 internal consistency failure.
Files named with --output are written under $SDNB_OUTPUT_DIR when set.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import reduce
from pathlib import Path
from typing import List, Optional

from .construct import SdnbCertificate, construct, verify_sdnb
from .cyclotomic import decompose
from .errors import DomainError, InternalError, NoSdnbError, UnsupportedCaseError
from .fields import prime_power
from .orthogonal import GroupSpec
from .search import SearchReport, merge_reports, optimality_precheck, search_min

OUTPUT_DIR_ENV = "SDNB_OUTPUT_DIR"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(4, f"{self.prog}: error: {message}\n")


def parse_q(text: str) -> int:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad field size {text!r}")
    q = int(m.group(1)) ** int(m.group(2) or 1)
    try:
        prime_power(q)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return q


def parse_n(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("n must be at least 1")
    return n


def parse_shard(text: str):
    m = re.fullmatch(r"(\d+)/(\d+)", text)
    if not m or not 0 <= int(m.group(1)) < int(m.group(2)):
        raise argparse.ArgumentTypeError(f"shard must be i/k with 0 <= i < k, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def parse_range(text: str):
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"degree range must be a or a..b, got {text!r}")
    a = int(m.group(1))
    b = int(m.group(2) or a)
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"empty degree range {text!r}")
    return a, b


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit(args, text: str):
    if getattr(args, "output", None):
        path = Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / args.output
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n")
    else:
        print(text)


def _report_text(r: SearchReport) -> str:
    lines = [
        f"q={r.q} n={r.n} |O(n,q)|={r.group_cardinality}",
        f"min complexity {r.min_complexity}, reached {r.count} times, multiplier {r.multiplier}",
        f"visited {r.visited} ({'complete' if r.complete else 'partial'}), {r.elapsed_ms:.0f} ms",
    ]
    if not r.integrity_ok:
        lines.append(f"INTEGRITY: count {r.count} not divisible by {r.divisor}")
    return "\n".join(lines)


def _format_report(args, r: SearchReport) -> str:
    if args.format == "csv":
        return SearchReport.CSV_HEADER + "\n" + r.csv_row()
    if args.format == "text":
        return _report_text(r)
    out = r.to_json()
    if r.q % 2 == 0:
        out["optimal_possible"] = optimality_precheck(r.q, r.n)
    return dumps(out)


# -- commands ---------------------------------------------------------------

def cmd_construct(args) -> int:
    cert = construct(args.q, args.n)
    cert.get_complexity()
    if args.format == "text":
        text = f"q={cert.q} n={cert.n} route={cert.route} complexity={cert.complexity}"
    else:
        text = dumps(cert.to_json())
    _emit(args, text)
    return 0


def _search_shard(q, n, shard, histogram, witness_cap, time_limit):
    cert = construct(q, n)
    return search_min(cert, shard=shard, histogram=histogram, witness_cap=witness_cap,
                      time_limit=time_limit)


def run_search(q, n, shard=None, workers=1, histogram=None, witness_cap=16, time_limit=None):
    GroupSpec(q, n)  # rejects mixed degrees before any work
    if workers <= 1 or shard is not None:
        return _search_shard(q, n, shard, histogram, witness_cap, time_limit)
    jobs = [(q, n, (i, workers), histogram, witness_cap, time_limit) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_search_shard, *zip(*jobs)))
    return reduce(merge_reports, parts)


def cmd_search(args) -> int:
    r = run_search(args.q, args.n, args.shard, args.workers, args.histogram,
                   args.witness_cap, args.time_limit)
    _emit(args, _format_report(args, r))
    if not r.integrity_ok:
        return 5
    return 0


def cmd_count(args) -> int:
    g = GroupSpec(args.q, args.n)
    if args.format == "json":
        _emit(args, dumps({"q": args.q, "n": args.n, "case": g.case.value,
                           "cardinality": g.cardinality}))
    else:
        _emit(args, str(g.cardinality))
    return 0


def cmd_verify(args) -> int:
    try:
        data = json.loads(Path(args.certificate).read_text())
        cert = SdnbCertificate.from_json(data)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"unreadable certificate: {exc}")
    if not verify_sdnb(cert.gamma, cert.field):
        print("not a self-dual normal basis", file=sys.stderr)
        return 4
    c = cert.get_complexity()
    stated = data.get("complexity")
    if stated is not None and stated != c:
        print(f"stated complexity {stated} but computed {c}", file=sys.stderr)
        return 4
    _emit(args, dumps({"valid": True, "q": cert.q, "n": cert.n, "complexity": c}))
    return 0


def cmd_inspect(args) -> int:
    q, n = args.q, args.n
    p, r = prime_power(q)
    out = {"q": q, "p": p, "r": r, "n": n}
    try:
        out["classes"] = decompose(n, q).to_json()
    except DomainError as exc:
        out["classes"] = None
        out["classes_note"] = str(exc)
    try:
        g = GroupSpec(q, n)
        out["group"] = {"case": g.case.value, "cardinality": g.cardinality}
        if hasattr(g, "factors"):
            out["group"]["factors"] = [{"label": f.label, "order": f.order} for f in g.factors]
    except DomainError as exc:
        out["group"] = None
        out["group_note"] = str(exc)
    _emit(args, dumps(out))
    return 0


def cmd_table(args) -> int:
    a, b = args.n
    rows = [SearchReport.CSV_HEADER]
    for n in range(a | 1, b + 1, 2):
        try:
            r = run_search(args.q, n, workers=args.workers, histogram=False,
                           time_limit=args.time_limit)
        except (UnsupportedCaseError, NoSdnbError) as exc:
            print(f"skipping n={n}: {exc}", file=sys.stderr)
            continue
        rows.append(r.csv_row())
    _emit(args, "\n".join(rows))
    return 0


def cmd_merge(args) -> int:
    reports = []
    for path in args.reports:
        try:
            reports.append(SearchReport.from_json(json.loads(Path(path).read_text())))
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"unreadable report {path}: {exc}")
    _emit(args, _format_report(args, reduce(merge_reports, reports)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sdnb", description="Self-dual normal bases of finite field extensions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def qn(p):
        p.add_argument("--q", type=parse_q, required=True, help="field size, e.g. 8 or 2^3")
        p.add_argument("--n", type=parse_n, required=True, help="extension degree")

    def common(p, formats=("json", "text")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", help=f"file name, relative to ${OUTPUT_DIR_ENV}")

    p = sub.add_parser("construct", help="build one self-dual normal basis")
    qn(p)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="minimum complexity over all self-dual normal bases")
    qn(p)
    common(p, ("json", "csv", "text"))
    p.add_argument("--shard", type=parse_shard)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--histogram", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--witness-cap", type=int, default=16)
    p.add_argument("--time-limit", type=float, help="seconds; stops with a partial report")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("count", help="order of the orthogonal circulant group")
    qn(p)
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="check a certificate file")
    p.add_argument("certificate")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("inspect", help="cyclotomic classes and group structure")
    qn(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("table", help="CSV row of minimum complexities over odd degrees")
    p.add_argument("--q", type=parse_q, required=True)
    p.add_argument("--n", type=parse_range, required=True, help="a..b")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--output")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("merge", help="merge shard reports")
    p.add_argument("reports", nargs="+")
    common(p, ("json", "csv", "text"))
    p.set_defaults(func=cmd_merge)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoSdnbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedCaseError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 4
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
