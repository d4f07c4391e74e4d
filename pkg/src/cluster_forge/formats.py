"""Text formats for graphs, rooted trees and reports.

Graph files::

    # comment
    v 3
    e 0 1
    e 1 2

Rooted-tree files::

    root 2
    p 0 2
    p 1 0
"""
from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction
from typing import TextIO

from .graph import LabeledGraph
from .trees import RootedTree


class FormatError(ValueError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graph(text: str) -> LabeledGraph:
    n = None
    edges = []
    for lineno, parts in _lines(text):
        try:
            if parts[0] == "v" and len(parts) == 2 and n is None:
                n = int(parts[1])
            elif parts[0] == "e" and len(parts) == 3 and n is not None:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise FormatError(f"line {lineno}: unexpected {' '.join(parts)!r}")
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    if n is None:
        raise FormatError("missing 'v <n_vertices>' line")
    try:
        return LabeledGraph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_graph(G: LabeledGraph) -> str:
    return "".join([f"v {G.n_vertices}\n", *(f"e {i} {j}\n" for i, j in G.edge_list())])


def parse_tree(text: str) -> RootedTree:
    root = None
    links: dict[int, int] = {}
    for lineno, parts in _lines(text):
        try:
            if parts[0] == "root" and len(parts) == 2 and root is None:
                root = int(parts[1])
            elif parts[0] == "p" and len(parts) == 3 and root is not None:
                child, parent = int(parts[1]), int(parts[2])
                if child in links:
                    raise FormatError(f"line {lineno}: vertex {child} has two parents")
                links[child] = parent
            else:
                raise FormatError(f"line {lineno}: unexpected {' '.join(parts)!r}")
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    if root is None:
        raise FormatError("missing 'root <r>' line")
    m = max([root, *links, *links.values()]) + 1
    if root in links or len(links) != m - 1:
        raise FormatError(f"expected a parent for every vertex of 0..{m - 1} except the root")
    try:
        return RootedTree(root, tuple(links.get(v) for v in range(m)))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_tree(T: RootedTree) -> str:
    return "".join([f"root {T.root}\n", *(f"p {c} {p}\n" for p, c in T.edges())])


def read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


# --- reports ------------------------------------------------------------

SAFE_INT = 2 ** 53


def encode(value, exact: bool = False):
    """JSON-ready form: rationals as "p/q", big integers as decimal strings.

    With ``exact`` every integer becomes a string, which keeps the type of
    the computed/expected fields stable however large the value gets.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (str, float)):
        return value
    if isinstance(value, int):
        return str(value) if exact or abs(value) >= SAFE_INT else value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")


EXACT_FIELDS = ("computed", "expected", "value", "volume")


def render(report: dict, fmt: str) -> str:
    data = {k: encode(v, exact=k in EXACT_FIELDS) for k, v in report.items()}
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    flat = {k: v if isinstance(v, (str, bool)) or v is None else json.dumps(v, sort_keys=True)
            for k, v in sorted(data.items())}
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(flat), lineterminator="\n")
        writer.writeheader()
        writer.writerow(flat)
        return buf.getvalue()
    if fmt == "text":
        return "".join(f"{k}: {v}\n" for k, v in flat.items())
    raise ValueError(f"unknown format {fmt!r}")


def emit(text: str, out: str | None, stream: TextIO | None = None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)
