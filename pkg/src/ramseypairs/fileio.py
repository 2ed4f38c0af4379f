"""Text formats for patterns (``p edge``) and colorings (``p kn2``).

Both are 1-indexed, DIMACS style::

    c comment
    p edge 3 3
    e 1 2

    p kn2 5
    r 1 2        (every unlisted pair is blue)
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .errors import ParseError
from .graph import Graph, TwoColoring


def _records(lines: Iterable[str]):
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def _parse(lines: Iterable[str], kind: str, edge_tag: str) -> tuple[int, list[tuple[int, int]], int | None]:
    n = None
    declared = None
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, parts in _records(lines):
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            expected = 4 if kind == "edge" else 3
            if len(parts) != expected or parts[1] != kind:
                raise ParseError(f"expected header 'p {kind} ...'", lineno)
            try:
                n = int(parts[2])
                declared = int(parts[3]) if kind == "edge" else None
            except ValueError:
                raise ParseError("non-integer in header", lineno) from None
            if n < 0 or (declared is not None and declared < 0):
                raise ParseError("negative size in header", lineno)
        elif tag == edge_tag:
            if n is None:
                raise ParseError("edge before header", lineno)
            if len(parts) != 3:
                raise ParseError(f"expected '{edge_tag} <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("non-integer vertex", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            if u == v:
                raise ParseError(f"self-loop at {u}", lineno)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in seen:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            seen.add(key)
            edges.append(key)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing header")
    return n, edges, declared


def parse_graph(text: str) -> Graph:
    n, edges, declared = _parse(text.splitlines(), "edge", "e")
    if declared != len(edges):
        raise ParseError(f"header declares {declared} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def parse_coloring(text: str) -> TwoColoring:
    N, edges, _ = _parse(text.splitlines(), "kn2", "r")
    return TwoColoring.from_red_edges(N, edges)


def format_graph(g: Graph, comment: str | None = None) -> str:
    out = [f"c {comment}"] if comment else []
    out.append(f"p edge {g.n} {g.m}")
    out += [f"e {u + 1} {v + 1}" for u, v in sorted(g.edges)]
    return "\n".join(out) + "\n"


def format_coloring(c: TwoColoring, comment: str | None = None) -> str:
    out = [f"c {comment}"] if comment else []
    out.append(f"p kn2 {c.N}")
    out += [f"r {u + 1} {v + 1}" for u, v in sorted(c.red.edges)]
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def read_coloring(path: str | Path) -> TwoColoring:
    return parse_coloring(Path(path).read_text())


def write_coloring(c: TwoColoring, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_coloring(c, comment))


def write_graph(g: Graph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_graph(g, comment))
