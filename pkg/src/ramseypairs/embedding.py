"""Embedding bounded-degree patterns, or finding sparse structure instead.

Three layers:

* ``find_copy`` / ``find_mono_copy``: exact backtracking subgraph search.
* ``embed_or_sparse_pair``: greedy candidate-set embedding; when it gets
  stuck the stuck candidate sets themselves give a low-density pair.
* ``sparse_subset``: recursive refinement through sparse pairs down to a set
  of low edge density.

Every returned object is re-verified before it leaves this module.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import _interval as I
from ._bits import full, mask_of, members, popcount
from .errors import DeclaredFailure, PreconditionError, ResourceLimitError
from .graph import Color, Graph, TwoColoring

DEFAULT_NODE_LIMIT = 2_000_000


@dataclass(frozen=True)
class Embedding:
    """``mapping[i]`` is the host vertex carrying pattern vertex ``i``."""

    mapping: tuple[int, ...]
    color: Color | None = None

    def verify(self, host_adj: tuple[int, ...], pattern: Graph) -> bool:
        if len(self.mapping) != pattern.n or len(set(self.mapping)) != pattern.n:
            return False
        if any(not 0 <= h < len(host_adj) for h in self.mapping):
            return False
        return all(host_adj[self.mapping[u]] >> self.mapping[v] & 1 for u, v in pattern.edges)

    def to_json(self) -> dict:
        return {"kind": "embedding", "color": self.color.value if self.color else None, "map": list(self.mapping)}


@dataclass(frozen=True)
class SparsePairWitness:
    X: tuple[int, ...]
    Y: tuple[int, ...]
    density: Fraction

    def verify(self, host_adj: tuple[int, ...], eps: Fraction) -> bool:
        xm, ym = mask_of(self.X), mask_of(self.Y)
        if xm & ym or len(self.X) != len(self.Y) or not self.X:
            return False
        e = sum(popcount(host_adj[x] & ym) for x in self.X)
        actual = Fraction(e, len(self.X) * len(self.Y))
        return actual == self.density and actual <= eps

    def to_json(self) -> dict:
        return {
            "kind": "sparse-pair",
            "X": list(self.X),
            "Y": list(self.Y),
            "density": f"{self.density.numerator}/{self.density.denominator}",
        }


def sparse_pair_exponent(eps: Fraction) -> int:
    """Smallest integer h with 2^h >= 2/eps."""
    h = 0
    while Fraction(2**h) * eps < 2:
        h += 1
    return h


@dataclass(frozen=True)
class SparsityParams:
    eps: Fraction
    delta: int
    n: int

    @property
    def rho(self) -> Fraction:
        return self.eps**self.delta / (self.delta + 1)

    @property
    def h(self) -> int:
        return sparse_pair_exponent(self.eps)

    def host_threshold(self) -> Fraction:
        """(delta+1) eps^-delta n: host order above which one outcome is guaranteed."""
        return (self.delta + 1) * self.eps ** (-self.delta) * self.n


# ---------------------------------------------------------------------------
# exact search


class _Budget(Exception):
    pass


def _search_order(pattern: Graph) -> list[int]:
    deg = pattern.degrees
    todo = {v for v in range(pattern.n) if deg[v] > 0}
    order: list[int] = []
    placed = 0
    while todo:
        v = min(todo, key=lambda u: (-popcount(pattern.adj[u] & placed), -deg[u], u))
        order.append(v)
        placed |= 1 << v
        todo.discard(v)
    return order


def find_copy(
    host_adj: tuple[int, ...],
    U: int,
    pattern: Graph,
    node_limit: int | None = DEFAULT_NODE_LIMIT,
) -> tuple[int, ...] | None:
    """Injective edge-preserving map of ``pattern`` into the host restricted to ``U``.

    Complete backtracking; candidates tried in ascending host index.  Raises
    ``ResourceLimitError`` once ``node_limit`` search nodes have been spent.
    """
    if pattern.n > popcount(U):
        return None
    order = _search_order(pattern)
    deg = pattern.degrees
    host_deg = {}
    image: dict[int, int] = {}
    nodes = 0

    def degree_in_U(h: int) -> int:
        d = host_deg.get(h)
        if d is None:
            d = host_deg[h] = popcount(host_adj[h] & U)
        return d

    def rec(i: int, used: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Budget
        u = order[i]
        cand = U & ~used
        for w in members(pattern.adj[u]):
            if w in image:
                cand &= host_adj[image[w]]
        for h in members(cand):
            if degree_in_U(h) < deg[u]:
                continue
            image[u] = h
            if rec(i + 1, used | 1 << h):
                return True
            del image[u]
        return False

    try:
        ok = rec(0, 0)
    except _Budget:
        raise ResourceLimitError(f"subgraph search exceeded {node_limit} nodes") from None
    if not ok:
        return None
    used = mask_of(image.values())
    spare = members(U & ~used)
    for v in range(pattern.n):
        if v not in image:
            image[v] = next(spare)
    return tuple(image[v] for v in range(pattern.n))


def find_mono_copy(
    c: TwoColoring, color: Color, pattern: Graph, node_limit: int | None = DEFAULT_NODE_LIMIT
) -> Embedding | None:
    if pattern.n > c.N:
        return None
    adj = c.adj(color)
    found = find_copy(adj, full(c.N), pattern, node_limit)
    if found is None:
        return None
    emb = Embedding(found, color)
    if not emb.verify(adj, pattern):
        raise DeclaredFailure("monochromatic copy failed verification")
    return emb


def find_embedding(host: Graph, pattern: Graph, node_limit: int | None = DEFAULT_NODE_LIMIT) -> Embedding | None:
    found = find_copy(host.adj, full(host.n), pattern, node_limit)
    return None if found is None else Embedding(found)


# ---------------------------------------------------------------------------
# embed or exhibit a sparse pair


def _greedy_coloring(pattern: Graph, order: list[int]) -> dict[int, int]:
    col: dict[int, int] = {}
    for v in order:
        taken = {col[u] for u in members(pattern.adj[v]) if u in col}
        col[v] = next(i for i in range(pattern.n + 1) if i not in taken)
    return col


def _balance(adj: tuple[int, ...], P: int, Q: int) -> tuple[int, int]:
    """Equal-size sub-pair of (P, Q) whose cross density is at most that of (P, Q).

    The larger side keeps the vertices with fewest neighbours on the other side.
    """
    p, q = popcount(P), popcount(Q)
    if p > q:
        keep = sorted(members(P), key=lambda v: (popcount(adj[v] & Q), v))[:q]
        return mask_of(keep), Q
    if q > p:
        keep = sorted(members(Q), key=lambda v: (popcount(adj[v] & P), v))[:p]
        return P, mask_of(keep)
    return P, Q


def _pair_density(adj: tuple[int, ...], X: int, Y: int) -> Fraction:
    return Fraction(sum(popcount(adj[x] & Y) for x in members(X)), popcount(X) * popcount(Y))


def _greedy_embed(adj: tuple[int, ...], U: int, pattern: Graph, eps: Fraction):
    """Candidate-set embedding.  Returns ("embedding", image) or ("stuck", [(P, Q), ...])."""
    deg = pattern.degrees
    order = sorted((v for v in range(pattern.n) if deg[v] > 0), key=lambda v: (-deg[v], v))
    col = _greedy_coloring(pattern, order)
    parts_count = max(col.values(), default=0) + 1
    parts = [0] * parts_count
    for i, h in enumerate(members(U)):
        parts[i % parts_count] |= 1 << h
    cand = {v: parts[col[v]] for v in order}
    image: dict[int, int] = {}
    used = 0
    for u in order:
        avail = cand[u] & ~used
        ahead = [w for w in members(pattern.adj[u]) if w not in image]
        chosen = None
        for h in members(avail):
            if all(popcount(adj[h] & cand[w]) * eps.denominator >= eps.numerator * popcount(cand[w]) for w in ahead):
                chosen = h
                break
        if chosen is None:
            stuck = []
            for w in ahead:
                bad = 0
                for h in members(avail):
                    if popcount(adj[h] & cand[w]) * eps.denominator < eps.numerator * popcount(cand[w]):
                        bad |= 1 << h
                if bad and cand[w]:
                    stuck.append((bad, cand[w]))
            return "stuck", stuck
        image[u] = chosen
        used |= 1 << chosen
        for w in ahead:
            cand[w] &= adj[chosen]
    spare = members(U & ~used)
    for v in range(pattern.n):
        if v not in image:
            nxt = next(spare, None)
            if nxt is None:
                return "stuck", []
            image[v] = nxt
    return "embedding", tuple(image[v] for v in range(pattern.n))


def _embed_or_sparse(adj: tuple[int, ...], U: int, pattern: Graph, eps: Fraction, node_limit: int | None):
    params = SparsityParams(eps, pattern.max_degree, pattern.n)
    size = popcount(U)
    kind, payload = _greedy_embed(adj, U, pattern, eps)
    if kind == "embedding":
        return Embedding(payload)

    best = None
    for P, Q in payload:
        X, Y = _balance(adj, P, Q)
        d = _pair_density(adj, X, Y)
        if d > eps:
            continue
        key = (-popcount(X), d, tuple(members(X)), tuple(members(Y)))
        if best is None or key < best[0]:
            best = (key, X, Y, d)
    if best is not None and popcount(best[1]) >= params.rho * size:
        _, X, Y, d = best
        return SparsePairWitness(tuple(members(X)), tuple(members(Y)), d)

    found = find_copy(adj, U, pattern, node_limit)
    if found is not None:
        return Embedding(found)
    above = size >= params.host_threshold()
    raise DeclaredFailure(
        "no embedding and no sparse pair of the required size"
        + (" (host meets the order threshold)" if above else " (host below the order threshold)")
    )


def embed_or_sparse_pair(
    host: Graph, pattern: Graph, eps: Fraction, node_limit: int | None = DEFAULT_NODE_LIMIT
) -> Embedding | SparsePairWitness:
    """Embedding of ``pattern`` into ``host``, or an equal-size pair of density <= eps.

    A returned witness has ``|X| = |Y| >= rho |V(host)|`` with
    ``rho = eps^delta / (delta + 1)``.  Exact search runs first, so a host that
    contains the pattern always yields an embedding; the greedy pass then only
    has to supply the pair for pattern-free hosts.
    """
    eps = Fraction(eps)
    if not 0 < eps <= Fraction(1, 2):
        raise PreconditionError(f"embedding lemma needs 0 < eps <= 1/2, got {eps}")
    try:
        found = find_copy(host.adj, full(host.n), pattern, node_limit)
    except ResourceLimitError:
        found = None  # budget spent; the greedy pass still decides
    if found is not None:
        out = Embedding(found)
    else:
        out = _embed_or_sparse(host.adj, full(host.n), pattern, eps, node_limit)
    if isinstance(out, Embedding):
        if not out.verify(host.adj, pattern):
            raise DeclaredFailure("embedding failed verification")
    elif not out.verify(host.adj, eps):
        raise DeclaredFailure("sparse pair failed verification")
    return out


# ---------------------------------------------------------------------------
# sparse subset


def _edges_in(adj: tuple[int, ...], S: int) -> int:
    return sum(popcount(adj[v] & S) for v in members(S)) // 2


def _sparse_enough(adj: tuple[int, ...], S: int, eps: Fraction) -> bool:
    s = popcount(S)
    return s < 2 or _edges_in(adj, S) * eps.denominator <= eps.numerator * comb(s, 2)


def _peel(adj: tuple[int, ...], S: int, eps: Fraction) -> int:
    """Drop max-degree vertices until the density is <= eps (never raises the density)."""
    deg = {v: popcount(adj[v] & S) for v in members(S)}
    e = sum(deg.values()) // 2
    s = len(deg)
    while s >= 2 and e * eps.denominator > eps.numerator * comb(s, 2):
        v = max(deg, key=lambda u: (deg[u], -u))
        S &= ~(1 << v)
        e -= deg.pop(v)
        s -= 1
        for u in members(adj[v] & S):
            deg[u] -= 1
    return S


def _augment(adj: tuple[int, ...], U: int, S: int, eps: Fraction) -> int:
    """Grow S inside U by min-degree vertices while the density stays <= eps."""
    deg = {v: popcount(adj[v] & S) for v in members(U & ~S)}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    e, s = _edges_in(adj, S), popcount(S)
    while heap:
        d, v = heapq.heappop(heap)
        if v not in deg or deg[v] != d:
            continue
        if (e + d) * eps.denominator > eps.numerator * comb(s + 1, 2):
            break
        del deg[v]
        S |= 1 << v
        e += d
        s += 1
        for u in members(adj[v] & U & ~S):
            deg[u] += 1
            heapq.heappush(heap, (deg[u], u))
    return S


def _refine(adj, U, pattern, eps, level, h, node_limit):
    if popcount(U) < 2 or _sparse_enough(adj, U, eps):
        return U
    if level >= h:
        return None
    try:
        out = _embed_or_sparse(adj, U, pattern, eps / 8, node_limit)
    except (DeclaredFailure, ResourceLimitError):
        return None
    if isinstance(out, Embedding):
        raise PreconditionError("host contains a copy of the pattern", evidence=out)
    X, Y = mask_of(out.X), mask_of(out.Y)
    if _sparse_enough(adj, X | Y, eps):
        return X | Y
    SX = _refine(adj, X, pattern, eps, level + 1, h, node_limit)
    SY = _refine(adj, Y, pattern, eps, level + 1, h, node_limit)
    options = [s for s in (SX, SY) if s is not None]
    if SX is not None and SY is not None:
        options.append(_peel(adj, SX | SY, eps))
    if not options:
        return None
    return max(options, key=lambda s: (popcount(s), -s))


def _sparse_subset(adj, U, pattern, eps, node_limit, copy_free_known=False) -> int:
    if not copy_free_known and popcount(U) <= 256:
        try:
            found = find_copy(adj, U, pattern, node_limit)
        except ResourceLimitError:
            found = None
        if found is not None:
            raise PreconditionError("host contains a copy of the pattern", evidence=Embedding(found))
    h = sparse_pair_exponent(eps)
    refined = _refine(adj, U, pattern, eps, 0, h, node_limit)
    # refinement can settle on the small side of a lopsided host; plain peeling is a cheap second opinion
    starts = [_peel(adj, U, eps)] if refined is None else [refined, _peel(adj, U, eps)]
    S = max((_augment(adj, U, s, eps) for s in starts), key=lambda s: (popcount(s), -s))
    if not _sparse_enough(adj, S, eps):
        raise DeclaredFailure(f"sparse subset has density above {eps}", trace=tuple(members(S)))
    return S


def shrink_factor_log2(eps: Fraction, delta: int):
    """log2 of eps^(-4 delta log2 eps); exact int when eps is a power of two."""
    num, den = eps.numerator, eps.denominator
    if num == 1 and den & (den - 1) == 0:
        a = den.bit_length() - 1
        return -4 * delta * a * a
    lg = I.log2(eps)
    return -I.ival(4 * delta) * lg * lg


def sparse_subset(
    host: Graph, pattern: Graph, eps: Fraction, node_limit: int | None = DEFAULT_NODE_LIMIT
) -> tuple[int, ...]:
    """Vertex set of ``host`` with edge density <= eps, for a host free of ``pattern``.

    When ``|V| >= eps^(4 delta log eps) n`` the result also has at least
    ``eps^(-4 delta log eps) |V|`` vertices, and this is checked.
    """
    eps = Fraction(eps)
    if not 0 < eps <= Fraction(1, 8):
        raise PreconditionError(f"sparse subset needs 0 < eps <= 1/8, got {eps}")
    U = full(host.n)
    S = _sparse_subset(host.adj, U, pattern, eps, node_limit)
    _check_size_guarantee(host.n, popcount(S), pattern, eps)
    return tuple(members(S))


def _check_size_guarantee(V: int, s: int, pattern: Graph, eps: Fraction) -> None:
    if V == 0 or pattern.n == 0:
        return
    lg = shrink_factor_log2(eps, pattern.max_degree)
    # hypothesis: log2 V >= -lg + log2 n
    if isinstance(lg, int):
        met = V >= Fraction(2) ** (-lg) * pattern.n
        if met and Fraction(s) < Fraction(2) ** lg * V:
            raise DeclaredFailure(f"sparse subset of size {s} misses the guaranteed fraction 2^{lg}")
    else:
        met = I.ge(I.log2(V), -lg + I.log2(pattern.n))
        if met and (s == 0 or not I.ge(I.log2(s), lg + I.log2(V))):
            raise DeclaredFailure(f"sparse subset of size {s} misses the guaranteed fraction")
