"""Exhaustive small-scale Ramsey oracles and coloring generators."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import rng
from ._bits import members, popcount
from .embedding import find_mono_copy
from .errors import DeclaredFailure, ResourceLimitError
from .graph import Color, Graph, TwoColoring, lex_edges

DEFAULT_MAX_EDGES = 30


# ---------------------------------------------------------------------------
# generators


class ColoringKind(str, enum.Enum):
    UNIFORM = "uniform"
    BIASED = "biased"
    PALEY = "paley"


def _from_upper(upper: np.ndarray) -> TwoColoring:
    sym = upper | upper.T
    N = sym.shape[0]
    rows = []
    for u in range(N):
        packed = np.packbits(sym[u], bitorder="little")
        rows.append(int.from_bytes(packed.tobytes(), "little"))
    return TwoColoring(Graph._trusted(N, rows))


def uniform_coloring(N: int, seed: int, trial: int = 0) -> TwoColoring:
    """Edge (u, v), u < v, is red iff bit u*N + v of the stream is set.

    Trial ``j`` reads the j-th consecutive block of ``ceil(N*N/64)`` words.
    """
    nbits = N * N
    width = rng.words_for_bits(nbits)
    b = rng.bits(seed, trial * width, nbits).astype(bool).reshape(N, N)
    return _from_upper(np.triu(b, k=1))


def biased_coloring(N: int, p: Fraction, seed: int) -> TwoColoring:
    """Edge number i (lexicographic order) is red iff word_i * q < num * 2^64 for p = num/q."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    m = comb(N, 2)
    words = rng.block(seed, 0, m)
    # w*q < num*2^64  <=>  w < ceil(num*2^64/q)
    threshold = -(-(p.numerator << 64) // p.denominator)
    if threshold > rng.MASK64:
        red = np.ones(m, dtype=bool)
    else:
        red = words < np.uint64(threshold)
    upper = np.zeros((N, N), dtype=bool)
    iu = np.triu_indices(N, k=1)
    upper[iu] = red
    return _from_upper(upper)


def paley_coloring(N: int) -> TwoColoring:
    from sympy import isprime  # slow to import; only this generator needs it

    if N < 5 or not isprime(N) or N % 4 != 1:
        raise ValueError(f"paley coloring needs a prime N = 1 mod 4, got {N}")
    residues = {x * x % N for x in range(1, N)}
    edges = [(u, v) for u, v in lex_edges(N) if (v - u) % N in residues]
    return TwoColoring.from_red_edges(N, edges)


def gen_coloring(kind, N: int, p: Fraction | None = None, seed: int = 0) -> TwoColoring:
    kind = ColoringKind(kind)
    if kind is ColoringKind.UNIFORM:
        return uniform_coloring(N, seed)
    if kind is ColoringKind.BIASED:
        if p is None:
            raise ValueError("biased coloring needs p")
        return biased_coloring(N, p, seed)
    return paley_coloring(N)


# ---------------------------------------------------------------------------
# arrow relation


@dataclass(frozen=True)
class ArrowResult:
    N: int
    pattern: Graph
    arrows: bool
    witness: TwoColoring | None = None
    nodes: int = 0


def _anchor_plans(pattern: Graph) -> list[tuple[int, int, list[int]]]:
    """For each directed pattern edge (a, b): an extension order for the other non-isolated vertices."""
    plans = []
    active = [v for v in range(pattern.n) if pattern.degrees[v]]
    for a, b in sorted(pattern.edges):
        for x, y in ((a, b), (b, a)):
            placed = (1 << x) | (1 << y)
            order = []
            rest = [v for v in active if v not in (x, y)]
            while rest:
                v = min(rest, key=lambda u: (-popcount(pattern.adj[u] & placed), u))
                order.append(v)
                placed |= 1 << v
                rest.remove(v)
            plans.append((x, y, order))
    return plans


def _copy_through(adj: list[int], N: int, pattern: Graph, plans, u: int, v: int) -> bool:
    """Does the graph ``adj`` contain a copy of ``pattern`` using the edge (u, v)?"""
    everything = (1 << N) - 1
    for a, b, order in plans:
        image = {a: u, b: v}

        def rec(i: int, used: int) -> bool:
            if i == len(order):
                return True
            w = order[i]
            cand = everything & ~used
            for z in members(pattern.adj[w]):
                if z in image:
                    cand &= adj[image[z]]
            for h in members(cand):
                image[w] = h
                if rec(i + 1, used | 1 << h):
                    return True
                del image[w]
            return False

        if rec(0, (1 << u) | (1 << v)):
            return True
    return False


def _signature(colors, red, blue, v):
    return (
        colors[v],
        tuple(sorted(colors[u] for u in members(red[v]))),
        tuple(sorted(colors[u] for u in members(blue[v]))),
    )


def _refine_colors(N: int, red: list[int], blue: list[int]) -> list[int]:
    """Iterated degree refinement; labels are canonical (ranks of sorted signatures)."""
    colors = [0] * N
    classes = 1
    while True:
        sig = [_signature(colors, red, blue, v) for v in range(N)]
        ranking = {s: i for i, s in enumerate(sorted(set(sig)))}
        colors = [ranking[s] for s in sig]
        if len(ranking) == classes:
            return colors
        classes = len(ranking)


def _state_key(N: int, red: list[int], blue: list[int]):
    colors = _refine_colors(N, red, blue)
    return tuple(sorted(_signature(colors, red, blue, v) for v in range(N))), colors


def _isomorphic(N, red1, blue1, col1, red2, blue2, col2) -> bool:
    """Is there a color-preserving bijection mapping partial coloring 1 onto 2?"""
    order = sorted(range(N), key=lambda v: (col1[v], v))
    image = [-1] * N
    taken = 0

    def rec(i: int) -> bool:
        nonlocal taken
        if i == N:
            return True
        v = order[i]
        for w in range(N):
            if taken >> w & 1 or col2[w] != col1[v]:
                continue
            ok = True
            for u in order[:i]:
                x = image[u]
                if (red1[v] >> u & 1) != (red2[w] >> x & 1) or (blue1[v] >> u & 1) != (blue2[w] >> x & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            taken |= 1 << w
            if rec(i + 1):
                return True
            taken &= ~(1 << w)
            image[v] = -1
        return False

    return rec(0)


def arrows(
    N: int,
    pattern: Graph,
    max_edges: int = DEFAULT_MAX_EDGES,
    iso_rejection: bool = True,
) -> ArrowResult:
    """Decide N -> pattern by DFS over edge colorings in lexicographic edge order.

    Blue is tried before red, so the first witness found is the
    lexicographically least coloring (red = 1) avoiding a monochromatic copy.
    A branch dies as soon as its colored edges already hold a monochromatic
    copy; partial colorings isomorphic to one already explored are skipped.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if comb(N, 2) > max_edges:
        raise ResourceLimitError(f"K_{N} has {comb(N, 2)} edges, above the exhaustive limit {max_edges}")
    if pattern.n > N or pattern.m == 0:
        if pattern.m == 0 and pattern.n <= N:
            return ArrowResult(N, pattern, True)
        return ArrowResult(N, pattern, False, TwoColoring.monochromatic(N, Color.BLUE))

    edges = lex_edges(N)
    plans = _anchor_plans(pattern)
    red = [0] * N
    blue = [0] * N
    seen: dict = {}
    nodes = 0
    colors_out: list[int] = []

    def dfs(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if i == len(edges):
            return True
        if iso_rejection and 0 < i < len(edges):
            key, cols = _state_key(N, red, blue)
            bucket = seen.setdefault((i, key), [])
            for r2, b2, c2 in bucket:
                if _isomorphic(N, red, blue, cols, r2, b2, c2):
                    return False
            bucket.append((list(red), list(blue), cols))
        u, v = edges[i]
        for bit, adj in ((0, blue), (1, red)):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            if not _copy_through(adj, N, pattern, plans, u, v):
                colors_out.append(bit)
                if dfs(i + 1):
                    return True
                colors_out.pop()
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return False

    if dfs(0):
        bits = sum(b << i for i, b in enumerate(colors_out))
        witness = TwoColoring.from_bits(N, bits)
        for color in (Color.RED, Color.BLUE):
            if find_mono_copy(witness, color, pattern, node_limit=None) is not None:
                raise DeclaredFailure(f"non-arrowing witness holds a {color.value} copy")
        return ArrowResult(N, pattern, False, witness, nodes)
    return ArrowResult(N, pattern, True, None, nodes)


def ramsey_number_exact(pattern: Graph, n_max: int, max_edges: int = DEFAULT_MAX_EDGES) -> int | None:
    """Least N <= n_max with N -> pattern, or None if no such N is within reach."""
    if pattern.isolated_vertices():
        raise ValueError("pattern must not have isolated vertices")
    previous = None
    for N in range(max(pattern.n, 1), n_max + 1):
        res = arrows(N, pattern, max_edges)
        if res.arrows:
            if N > 1:
                below = previous if previous is not None else arrows(N - 1, pattern, max_edges)
                if below.arrows:
                    raise AssertionError("arrow relation not monotone")
            return N
        previous = res
    return None
