"""Graphs, red/blue colorings of complete graphs, and exact densities.

Vertices are the integers ``0..n-1``.  Internally every vertex set is an int
used as a bit vector, so neighbourhood intersections are single ``&`` ops.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable

from ._bits import full, mask_of, members, popcount
from .errors import DegenerateInputError, InvalidPairError, InvalidSizeError

Edge = tuple[int, int]


class Color(str, enum.Enum):
    RED = "red"
    BLUE = "blue"

    @property
    def other(self) -> Color:
        return Color.BLUE if self is Color.RED else Color.RED


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph held as adjacency bit masks."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if row >> self.n:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            for u in members(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v},{u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, rows)

    @classmethod
    def from_adjacency(cls, adj: Iterable[int]) -> Graph:
        rows = tuple(adj)
        return cls(len(rows), rows)

    @classmethod
    def _trusted(cls, n: int, rows) -> Graph:
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(rows))
        return g

    @cached_property
    def edges(self) -> frozenset[Edge]:
        return frozenset((u, v) for u, row in enumerate(self.adj) for v in members(row >> (u + 1) << (u + 1)))

    @cached_property
    def m(self) -> int:
        return sum(self.degrees) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(popcount(a) for a in self.adj)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def isolated_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees) if d == 0]

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns new->old labels."""
        order = tuple(sorted(set(vertices)))
        keep = mask_of(order)
        index = {v: i for i, v in enumerate(order)}
        rows = []
        for v in order:
            row = 0
            for u in members(self.adj[v] & keep):
                row |= 1 << index[u]
            rows.append(row)
        return Graph._trusted(len(order), rows), order

    def complement(self) -> Graph:
        everything = full(self.n)
        return Graph._trusted(self.n, [everything & ~row & ~(1 << v) for v, row in enumerate(self.adj)])

    # common small graphs

    @classmethod
    def complete(cls, n: int) -> Graph:
        everything = full(n)
        return cls._trusted(n, [everything & ~(1 << v) for v in range(n)])

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls._trusted(n, [0] * n)

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, (_norm(i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> Graph:
        return cls.from_edges(a + b, ((u, v) for u in range(a) for v in range(a, a + b)))


@dataclass(frozen=True)
class TwoColoring:
    """Red/blue coloring of K_N, stored as its red graph."""

    red: Graph

    @property
    def N(self) -> int:
        return self.red.n

    @classmethod
    def from_red_edges(cls, N: int, red_edges: Iterable[Edge]) -> TwoColoring:
        return cls(Graph.from_edges(N, red_edges))

    @classmethod
    def monochromatic(cls, N: int, color: Color) -> TwoColoring:
        return cls(Graph.complete(N) if color is Color.RED else Graph.empty(N))

    @classmethod
    def from_bits(cls, N: int, bits: int) -> TwoColoring:
        """Bit ``i`` of ``bits`` is the color of the i-th edge in lexicographic order (1 = red)."""
        return cls(Graph.from_edges(N, (e for i, e in enumerate(lex_edges(N)) if bits >> i & 1)))

    @cached_property
    def blue(self) -> Graph:
        return self.red.complement()

    def graph(self, color: Color) -> Graph:
        return self.red if color is Color.RED else self.blue

    def adj(self, color: Color) -> tuple[int, ...]:
        return self.graph(color).adj

    def color_of(self, u: int, v: int) -> Color:
        if u == v:
            raise ValueError("no edge from a vertex to itself")
        return Color.RED if self.red.has_edge(u, v) else Color.BLUE

    def swapped(self) -> TwoColoring:
        return TwoColoring(self.blue)

    def restrict(self, vertices: Iterable[int]) -> tuple[TwoColoring, tuple[int, ...]]:
        sub, order = self.red.induced(vertices)
        return TwoColoring(sub), order

    def to_bits(self) -> int:
        adj = self.red.adj
        return sum(1 << i for i, (u, v) in enumerate(lex_edges(self.N)) if adj[u] >> v & 1)


def lex_edges(n: int) -> list[Edge]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


@dataclass(frozen=True)
class PatternSplit:
    """High-degree part ``A`` and the remainder ``gprime``.

    ``gprime`` is relabelled; ``rest[i]`` is the original vertex behind its vertex ``i``.
    """

    A: tuple[int, ...]
    gprime: Graph
    rest: tuple[int, ...]

    @property
    def delta_gprime(self) -> int:
        return self.gprime.max_degree


def _check_subset(n: int, vertices: int, what: str) -> None:
    if vertices >> n:
        raise InvalidPairError(f"{what} has vertices outside 0..{n - 1}")


def edge_count(g: Graph, U: Iterable[int]) -> int:
    mask = mask_of(U)
    return sum(popcount(g.adj[v] & mask) for v in members(mask)) // 2


def edge_density(g: Graph, U: Iterable[int]) -> Fraction:
    mask = mask_of(U)
    _check_subset(g.n, mask, "U")
    size = popcount(mask)
    if size < 2:
        raise DegenerateInputError(f"edge density needs |U| >= 2, got {size}")
    e = sum(popcount(g.adj[v] & mask) for v in members(mask)) // 2
    return Fraction(e, comb(size, 2))


def cross_edges(g: Graph, X: int, Y: int) -> int:
    return sum(popcount(g.adj[x] & Y) for x in members(X))


def pair_density(g: Graph, X: Iterable[int], Y: Iterable[int]) -> Fraction:
    xm, ym = mask_of(X), mask_of(Y)
    _check_subset(g.n, xm | ym, "pair")
    if not xm or not ym:
        raise InvalidPairError("pair density needs non-empty X and Y")
    if xm & ym:
        raise InvalidPairError("X and Y overlap")
    return Fraction(cross_edges(g, xm, ym), popcount(xm) * popcount(ym))


def degeneracy(g: Graph) -> int:
    alive = full(g.n)
    adj = g.adj
    deg = list(g.degrees)
    worst = 0
    for _ in range(g.n):
        v = min(members(alive), key=lambda u: (deg[u], u))
        worst = max(worst, deg[v])
        alive &= ~(1 << v)
        for u in members(adj[v] & alive):
            deg[u] -= 1
    return worst


def top_degree_split(g: Graph, s: int) -> PatternSplit:
    if not 0 <= s <= g.n:
        raise InvalidSizeError(f"split size {s} outside 0..{g.n}")
    ranked = sorted(range(g.n), key=lambda v: (-g.degrees[v], v))
    A = tuple(sorted(ranked[:s]))
    gprime, rest = g.induced(ranked[s:])
    return PatternSplit(A, gprime, rest)


def is_mono_pair(c: TwoColoring, color: Color, X: Iterable[int], Y: Iterable[int]) -> bool:
    """All edges inside X and between X and Y have ``color``; Y's own edges are free."""
    xm, ym = mask_of(X), mask_of(Y)
    _check_subset(c.N, xm | ym, "pair")
    if xm & ym:
        raise InvalidPairError("X and Y overlap")
    return _is_mono_pair_mask(c.adj(color), xm, ym)


def _is_mono_pair_mask(adj: tuple[int, ...], xm: int, ym: int) -> bool:
    both = xm | ym
    for x in members(xm):
        need = both & ~(1 << x)
        if adj[x] & need != need:
            return False
    return True
