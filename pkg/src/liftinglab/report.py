"""Rendering of result tables as Markdown, CSV or JSON, and the reference tables."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import corpus
from .anf import format_anf
from .boolfun import degree
from .classifier import ell_pattern, format_pattern
from .enumeration import (CountRow, SearchSpec, count_almost_lifting_classes, enumerate_rows,
                          permutive_class_count)
from .errors import CapError, InputError
from .induced import differential_summary, lat_and_linearity, preimage_distribution

FORMATS = ("json", "csv", "md")


def fmt_ratio(q, decimal: Optional[int] = None) -> str:
    if isinstance(q, Fraction):
        if decimal is not None:
            return f"{float(q):.{decimal}f}"
        return str(q)
    return str(q)


class Table:
    def __init__(self, title: str, headers: Sequence[str], rows: List[Sequence]):
        self.title = title
        self.headers = list(headers)
        self.rows = [list(r) for r in rows]

    def render(self, fmt: str, decimal: Optional[int] = None) -> str:
        cells = [[_cell(v, decimal) for v in r] for r in self.rows]
        if fmt == "md":
            out = [f"**{self.title}**", "", "| " + " | ".join(self.headers) + " |",
                   "|" + "|".join("---" for _ in self.headers) + "|"]
            out += ["| " + " | ".join(r) + " |" for r in cells]
            return "\n".join(out)
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.headers)
            w.writerows(cells)
            return buf.getvalue().rstrip("\n")
        if fmt == "json":
            return json.dumps({"title": self.title,
                               "rows": [dict(zip(self.headers, r)) for r in cells]},
                              ensure_ascii=False, indent=2)
        raise InputError(f"unknown format {fmt!r}")


def _cell(v, decimal):
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return fmt_ratio(v, decimal)
    if isinstance(v, (list, tuple)):
        return ", ".join(_cell(x, decimal) for x in v)
    return str(v)


# --- counting rows -------------------------------------------------------

def count_headers(degrees: Sequence[int]) -> List[str]:
    return ["n", "#potential", "f(0)!=f(1)", "#liftings"] + [f"deg={d}" for d in degrees]


def count_table(rows: List[CountRow], degrees: Sequence[int], title: str) -> Table:
    return Table(title, count_headers(degrees), [r.as_list(list(degrees)) for r in rows])


def parse_count_csv(text: str) -> List[CountRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    degrees = [int(h.split("=")[1]) for h in header[4:]]
    rows = []
    for rec in reader:
        vals = [int(v) for v in rec]
        rows.append(CountRow(vals[0], vals[1], vals[2], vals[3], dict(zip(degrees, vals[4:]))))
    return rows


def counting_table(k: int, n_max: Optional[int] = None, jobs: int = 1, checkpoint=None,
               long_running: bool = False) -> Table:
    if k == 6:
        spec = SearchSpec(6, n_max or 20, max_degree=2, long_running=long_running)
    elif k in (3, 4, 5):
        default = {3: 19, 4: 23, 5: 20}[k]
        spec = SearchSpec(k, n_max or default, long_running=long_running)
    else:
        raise CapError("counting tables exist for k = 3, 4, 5 and k = 6 with degree <= 2")
    rows = enumerate_rows(spec, jobs=jobs, checkpoint=checkpoint)
    title = f"k={k}" + (", deg <= 2" if k == 6 else "") + " (elementary equivalence classes)"
    return count_table(rows, spec.degree_columns, title)


# --- function tables -----------------------------------------------------------

def _du_sequence(f, k: int, top: int = 9) -> List[int]:
    return [differential_summary(f, n, with_branch=False).du for n in range(k, top + 1)]


def _ell_pattern_text(f, k: int, n_max: int = 16) -> str:
    ell_n = {n: preimage_distribution(f, n).ell_n for n in range(k, n_max + 1)}
    return format_pattern(ell_pattern(ell_n))


def virtual_table() -> Table:
    rows = []
    for e in corpus.VIRTUAL_LIFTINGS:
        f = e.function()
        rows.append([e.k, format_anf(f), _ell_pattern_text(f, e.k), degree(f),
                     lat_and_linearity(f, 9).lpu, _du_sequence(f, e.k)])
    return Table("virtual liftings, k <= 5",
                 ["k", "function", "ell_n", "deg", "LPU", "differentials"], rows)


def proper_table() -> Table:
    rows = []
    for e in corpus.PROPER_LIFTINGS:
        f = e.function()
        rows.append([e.k, format_anf(f), degree(f), lat_and_linearity(f, 9).lpu,
                     _du_sequence(f, e.k)])
    return Table("proper liftings of degree >= 2, k <= 5",
                 ["k", "function", "deg", "LPU", "differentials"], rows)


def candidates_table() -> Table:
    """DPU is listed per n = k..9 since it is not constant in n for every candidate."""
    rows = []
    for e in corpus.CANDIDATES:
        f = e.function()
        dpus = [differential_summary(f, n, with_branch=False).dpu for n in range(e.k, 10)]
        lpus = sorted({lat_and_linearity(f, n).lpu for n in range(e.k, 10)})
        ratio = preimage_distribution(f, 10).image_ratio
        rows.append([e.name, e.k, degree(f), dpus, lpus, ratio])
    return Table("selected candidates",
                 ["", "k", "deg", "DPU (n=k..9)", "LPU", "(P2) n=10"], rows)


def comparison(long_running: bool = False, jobs: int = 1, checkpoint=None) -> Table:
    rows = []
    for k in (3, 4, 5):
        if k == 5 and not long_running:
            almost = None
        else:
            almost = count_almost_lifting_classes(k, jobs=jobs,
                                                  checkpoint=checkpoint if k == 5 else None,
                                                  long_running=long_running)
        rows.append([k, almost, permutive_class_count(k)])
    return Table("almost liftings vs permutive (classes)",
                 ["k", "#almost liftings", "#permutive"], rows)


def corpus_table(group: Optional[str] = None) -> Table:
    groups = corpus.GROUPS if group is None else {group: _group(group)}
    rows = []
    for name, entries in groups.items():
        for e in entries:
            f = e.function()
            rows.append([name, e.name, e.k, e.degree, degree(f) == e.degree, e.expr])
    return Table("corpus", ["group", "name", "k", "deg", "deg check", "expression"], rows)


def _group(name: str):
    if name not in corpus.GROUPS:
        raise InputError(f"unknown corpus group {name!r}; choose from {sorted(corpus.GROUPS)}")
    return corpus.GROUPS[name]


def dumps(obj: Dict) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)
