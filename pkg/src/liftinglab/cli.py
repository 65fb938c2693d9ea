"""Command-line front end: analyze, classify, enumerate, table, corpus."""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

from . import report
from .anf import parse_anf
from .classifier import classify
from .enumeration import SearchSpec, enumerate_rows
from .errors import CapError, InputError
from .induced import MAX_SCAN_N, metrics_report


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("LIFTINGLAB_JOBS", "1")))
    except ValueError:
        return 1


def parse_range(text: str) -> Tuple[int, int]:
    """"3..10" or "7"."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise InputError(f"empty range {text!r}")
    return lo, hi


def cmd_analyze(args) -> str:
    f = parse_anf(args.expr, args.k)
    lo, hi = parse_range(args.n)
    lo = max(lo, f.arity)
    if hi > MAX_SCAN_N:
        raise CapError(f"analyze scans are limited to n <= {MAX_SCAN_N}")
    metrics = [metrics_report(f, n) for n in range(lo, hi + 1)]
    cls = classify(f, n_max=max(hi, f.arity)) if f.table not in (0, (1 << f.size) - 1) else None
    if args.format == "json":
        out = {"classification": cls.as_dict() if cls else None,
               "metrics": [_metric_row(m.as_dict(), args.decimal) for m in metrics]}
        return report.dumps(out)
    headers = list(metrics[0].as_dict()) if metrics else ["n"]
    rows = [[_metric_row(m.as_dict(), args.decimal)[h] for h in headers] for m in metrics]
    table = report.Table(f"metrics of {args.expr}", headers, rows)
    text = table.render(args.format, args.decimal)
    if cls is not None and args.format == "md":
        d = cls.as_dict()
        summary = [f"- verdict: {d['verdict']}", f"- ell: {d['ell']}", f"- pattern: {d['pattern']}",
                   f"- virtual: {d['virtual']}", f"- apn: {d['apn']}"]
        text = "\n".join(summary) + "\n\n" + text
    return text


def _metric_row(d, decimal):
    if decimal is None:
        return d
    out = dict(d)
    for key in ("dpu", "lpu", "image_ratio"):
        out[key] = f"{float(Fraction(d[key])):.{decimal}f}"
    return out


def cmd_classify(args) -> str:
    f = parse_anf(args.expr, args.k)
    return report.dumps(classify(f, n_max=args.n_max).as_dict())


def cmd_enumerate(args) -> str:
    spec = SearchSpec(
        args.k, args.n_max, max_degree=args.max_degree, permutive_only=args.permutive_only,
        f0_zero=args.f0_zero, f0_neq_f1=args.f0_neq_f1,
        diameter_exact=not args.any_diameter,
        count_mode="functions" if args.functions else "equivalence_classes",
        long_running=args.long_running)
    rows = enumerate_rows(spec, jobs=args.jobs, checkpoint=args.checkpoint)
    return report.count_table(rows, spec.degree_columns, f"k={args.k}").render(args.format)


def cmd_table(args) -> str:
    which = args.which
    if which == "counts":
        table = report.counting_table(args.k, args.n_max, jobs=args.jobs, checkpoint=args.checkpoint,
                                  long_running=args.long_running)
    elif which == "virtual":
        table = report.virtual_table()
    elif which == "proper":
        table = report.proper_table()
    elif which == "candidates":
        table = report.candidates_table()
    else:
        table = report.comparison(long_running=args.long_running, jobs=args.jobs,
                                  checkpoint=args.checkpoint)
    return table.render(args.format, args.decimal)


def cmd_corpus(args) -> str:
    return report.corpus_table(args.group).render(args.format)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liftinglab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="md", formats=report.FORMATS):
        sp.add_argument("--format", choices=formats, default=fmt_default)
        sp.add_argument("--decimal", type=int, default=None, metavar="D",
                        help="render ratios with D decimals instead of exact fractions")

    def engine(sp):
        sp.add_argument("--jobs", type=int, default=_default_jobs())
        sp.add_argument("--long-running", action="store_true")
        sp.add_argument("--checkpoint", default=None, metavar="PATH")

    a = sub.add_parser("analyze", help="classification and per-n metrics of one function")
    a.add_argument("expr")
    a.add_argument("n", nargs="?", default="3..10", help='range such as "3..10"')
    a.add_argument("--k", type=int, default=None, help="arity (default: largest variable index)")
    common(a, "json")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("classify", help="proper / almost / not-almost verdict as JSON")
    c.add_argument("expr")
    c.add_argument("--k", type=int, default=None)
    c.add_argument("--n-max", type=int, default=16)
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("enumerate", help="counting rows over truth-table space")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--n-max", type=int, required=True)
    e.add_argument("--max-degree", type=int, default=None)
    e.add_argument("--permutive-only", action="store_true")
    e.add_argument("--f0-zero", action="store_true")
    e.add_argument("--f0-neq-f1", action="store_true")
    e.add_argument("--any-diameter", action="store_true")
    e.add_argument("--functions", action="store_true", help="count functions, not classes")
    e.add_argument("--format", choices=report.FORMATS, default="csv")
    engine(e)
    e.set_defaults(func=cmd_enumerate)

    t = sub.add_parser("table", help="regenerate a published table")
    t.add_argument("which", choices=["counts", "virtual", "proper", "candidates",
                                     "comparison"])
    t.add_argument("--k", type=int, default=3)
    t.add_argument("--n-max", type=int, default=None)
    common(t)
    engine(t)
    t.set_defaults(func=cmd_table)

    q = sub.add_parser("corpus", help="list built-in functions with a degree check")
    q.add_argument("group", nargs="?", default=None)
    q.add_argument("--format", choices=report.FORMATS, default="md")
    q.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except CapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
