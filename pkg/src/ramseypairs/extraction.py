"""Monochromatic pair extraction.

``es_pair`` follows the pivot recursion behind the Erdős–Szekeres bound and
``esz_pair`` runs the sparse-red pipeline: shed high red degree vertices,
grab a blue clique ``B``, filter by red degree into ``B``, pick the best red
hull ``R`` by pigeonhole, then finish either with ``(B \\ R, S_R)`` or by
recursing with ``es_pair`` inside ``S_R``.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb

import numpy as np

from . import _interval as I
from ._bits import full, lowest, mask_of, members, popcount
from .errors import DeclaredFailure, PreconditionError
from .graph import Color, TwoColoring, _is_mono_pair_mask

EXACT_HULL_LIMIT = 10**6
ZETA_MAX_BITS = 22


class Strictness(str, enum.Enum):
    PAPER = "paper"
    RELAXED = "relaxed"


@dataclass(frozen=True)
class MonoPair:
    color: Color
    X: tuple[int, ...]
    Y: tuple[int, ...]

    @classmethod
    def from_masks(cls, color: Color, xm: int, ym: int) -> MonoPair:
        return cls(color, tuple(members(xm)), tuple(members(ym)))

    @property
    def x_mask(self) -> int:
        return mask_of(self.X)

    @property
    def y_mask(self) -> int:
        return mask_of(self.Y)

    def is_valid(self, c: TwoColoring) -> bool:
        xm, ym = self.x_mask, self.y_mask
        return not (xm & ym) and not ((xm | ym) >> c.N) and _is_mono_pair_mask(c.adj(self.color), xm, ym)

    def relabel(self, order: tuple[int, ...]) -> MonoPair:
        return MonoPair(self.color, tuple(order[v] for v in self.X), tuple(order[v] for v in self.Y))

    def to_json(self) -> dict:
        return {"color": self.color.value, "X": list(self.X), "Y": list(self.Y)}


@dataclass(frozen=True)
class ExtractionParams:
    k: int = 0
    l: int = 0
    eps: Fraction = Fraction(1, 7)
    t: int = 1
    strictness: Strictness = Strictness.RELAXED


@dataclass
class EszTrace:
    S: tuple[int, ...] = ()
    B: tuple[int, ...] = ()
    Sprime: tuple[int, ...] = ()
    R: tuple[int, ...] = ()
    S_R: tuple[int, ...] = ()
    deleted: int = 0
    filtered: int = 0
    hull_size: int = 0
    hull_method: str = ""
    pigeonhole_ok: bool = True
    branch: str = ""
    es_k: int | None = None
    es_l: int | None = None
    bounds: str = "unchecked"
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "S_size": len(self.S),
            "B": list(self.B),
            "Sprime_size": len(self.Sprime),
            "R": list(self.R),
            "S_R_size": len(self.S_R),
            "S": list(self.S),
            "Sprime": list(self.Sprime),
            "S_R": list(self.S_R),
            "deleted": self.deleted,
            "filtered": self.filtered,
            "hull_size": self.hull_size,
            "hull_method": self.hull_method,
            "pigeonhole_ok": self.pigeonhole_ok,
            "branch": self.branch,
            "es_k": self.es_k,
            "es_l": self.es_l,
            "bounds": self.bounds,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# pivot recursion


def es_pair(c: TwoColoring, k: int, l: int) -> MonoPair:
    """Red pair with |X| = k or blue pair with |X| = l.

    The pivot is the smallest remaining vertex; the branch taken is the one the
    degree-split argument prescribes.  When that branch runs out of vertices
    (only possible when the size bound is already vacuous) the other branch is
    tried before giving up.
    """
    if k < 0 or l < 0:
        raise ValueError("k and l must be non-negative")
    found = _es_masks(c.adj(Color.RED), full(c.N), k, l)
    if found is None:
        raise DeclaredFailure(f"K_{c.N} is too small to hold a red K_{k} or blue K_{l} along the pivot recursion")
    color, xm, ym = found
    pair = MonoPair.from_masks(color, xm, ym)
    assert _is_mono_pair_mask(c.adj(color), xm, ym)
    return pair


def _es_masks(red: tuple[int, ...], U: int, k: int, l: int):
    stack: list[list] = []
    while True:
        if k == 0 or l == 0:
            result = (Color.RED if k == 0 else Color.BLUE, 0, U)
        elif not U:
            result = None
        else:
            v = lowest(U)
            rest = U & ~(1 << v)
            red_nb = red[v] & rest
            blue_nb = rest & ~red_nb
            options = [(Color.RED, red_nb, k - 1, l), (Color.BLUE, blue_nb, k, l - 1)]
            if popcount(red_nb) * (k + l) < k * popcount(rest):
                options.reverse()
            stack.append([v, options, 0])
            _, U, k, l = options[0]
            continue

        while stack:
            frame = stack[-1]
            v, options, idx = frame
            if result is None:
                if idx == 0:
                    frame[2] = 1
                    _, U, k, l = options[1]
                    break
                stack.pop()
                continue
            color, xm, ym = result
            if color is options[idx][0]:
                result = (color, xm | 1 << v, ym)
            stack.pop()
        else:
            return result


def es_size_bound(N: int, k: int, l: int) -> Fraction:
    return Fraction(N, comb(k + l, k)) - k - l


# ---------------------------------------------------------------------------
# clique search


def max_clique(adj: tuple[int, ...], U: int, cap: int | None = None) -> int:
    """Clique inside ``U`` of size ``cap`` if one exists, else a maximum clique.

    Branch and bound in ascending vertex order; the bound for the suffix
    starting at ``v`` is the number of colors a greedy coloring (run from the
    top index down) has used by the time it reaches ``v``.  Among cliques of
    the returned size the lexicographically smallest is found first.
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be >= 1")
    if not U:
        return 0
    limit = cap if cap is not None else popcount(U)

    best = 0
    P = U
    while P and popcount(best) < limit:
        v = lowest(P)
        best |= 1 << v
        P &= adj[v] & ~((2 << v) - 1)
    best_size = popcount(best)
    if best_size >= limit:
        return best

    def expand(C: int, size: int, P: int) -> bool:
        nonlocal best, best_size
        if size > best_size:
            best, best_size = C, size
            if best_size >= limit:
                return True
        if not P or size + popcount(P) <= best_size:
            return False
        bound = _suffix_color_bounds(adj, P)
        for v in members(P):
            if size + bound[v] <= best_size:
                break
            above = P & ~((2 << v) - 1)
            if expand(C | 1 << v, size + 1, above & adj[v]):
                return True
        return False

    expand(0, 0, U)
    return best


def _suffix_color_bounds(adj: tuple[int, ...], P: int) -> dict[int, int]:
    classes: list[int] = []
    bound = {}
    for v in reversed(list(members(P))):
        bit = 1 << v
        nb = adj[v]
        for i, cls in enumerate(classes):
            if not cls & nb:
                classes[i] = cls | bit
                break
        else:
            classes.append(bit)
        bound[v] = len(classes)
    return bound


def max_blue_clique(c: TwoColoring, U, cap: int | None = None) -> tuple[int, ...]:
    return tuple(members(max_clique(c.adj(Color.BLUE), mask_of(U), cap)))


# ---------------------------------------------------------------------------
# red hull selection


def choose_hull(buckets: dict[int, int], b: int, r: int) -> tuple[int, str]:
    """Subset ``R`` of ``range(b)`` with ``|R| = r`` maximizing the bucket mass inside it.

    ``buckets`` maps a local bit mask (red neighbourhood inside B) to a vertex
    count.  Ties go to the lexicographically smallest sorted ``R``.
    """
    if r < 0 or r > b:
        raise ValueError("hull size out of range")
    if b <= ZETA_MAX_BITS:
        return _hull_zeta(buckets, b, r), "exact-zeta"
    if comb(b, r) <= EXACT_HULL_LIMIT:
        return _hull_enumerate(buckets, b, r), "exact-enumeration"
    return _hull_greedy(buckets, b, r), "greedy"


def _hull_zeta(buckets: dict[int, int], b: int, r: int) -> int:
    size = 1 << b
    f = np.zeros(size, dtype=np.int64)
    for m, cnt in buckets.items():
        f[m] += cnt
    for i in range(b):
        step = 1 << i
        f = f.reshape(-1, 2 * step)
        f[:, step:] += f[:, :step]
    f = f.reshape(-1)
    idx = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    rev = np.zeros(size, dtype=np.int64)
    for i in range(b):
        bit = (idx >> i) & 1
        pc += bit
        rev |= bit << (b - 1 - i)
    cand = np.flatnonzero(pc == r)
    vals = f[cand]
    top = cand[vals == vals.max()]
    return int(top[np.argmax(rev[top])])


def _hull_enumerate(buckets: dict[int, int], b: int, r: int) -> int:
    best, best_val = None, -1
    items = list(buckets.items())
    for combo in itertools.combinations(range(b), r):
        R = mask_of(combo)
        val = sum(cnt for m, cnt in items if m & ~R == 0)
        if val > best_val:
            best, best_val = R, val
    return best


def _hull_greedy(buckets: dict[int, int], b: int, r: int) -> int:
    R = 0
    for m, _ in sorted(buckets.items(), key=lambda kv: (-kv[1], popcount(kv[0]), kv[0])):
        if popcount(R | m) <= r:
            R |= m
    for i in range(b):
        if popcount(R) >= r:
            break
        R |= 1 << i
    return R


def hull_mass(buckets: dict[int, int], R: int) -> int:
    return sum(cnt for m, cnt in buckets.items() if m & ~R == 0)


# ---------------------------------------------------------------------------
# sparse-red pipeline


def _check_paper_preconditions(N: int, eps: Fraction, t: int) -> None:
    if not (0 < eps <= Fraction(1, 7)):
        raise PreconditionError(f"sparse-pair lemma needs 0 < eps <= 1/7, got eps={eps}")
    if t * eps < 1:
        raise PreconditionError(f"sparse-pair lemma needs t >= 1/eps, got t={t}, eps={eps}")
    # log2 N >= log2 t + 14 eps t log2(1/eps)
    need = I.log2(t) + I.ival(14 * eps * t) * I.log2(1 / eps)
    if not I.ge(I.log2(N), need):
        raise PreconditionError(f"sparse-pair lemma needs N >= t*eps^(-14 eps t) ~ 2^{I.lower_str(need, 3)}, got N={N}")


def esz_pair(c: TwoColoring, p: ExtractionParams) -> tuple[MonoPair, EszTrace]:
    N, eps, t = c.N, Fraction(p.eps), p.t
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if t < 1:
        raise PreconditionError("t must be >= 1")
    red = c.adj(Color.RED)
    blue = c.adj(Color.BLUE)
    if N >= 2:
        density = Fraction(c.red.m, comb(N, 2))
        if density > eps:
            raise PreconditionError(f"red edge density {density} exceeds eps={eps}")
    strict = p.strictness is Strictness.PAPER
    if strict:
        _check_paper_preconditions(N, eps, t)

    trace = EszTrace(bounds="checked" if strict else "unchecked")

    # (1) shed vertices whose red degree is still >= eps*N
    S = full(N)
    deg = list(c.red.degrees)
    heavy = lambda d: d * eps.denominator >= eps.numerator * N  # noqa: E731
    heap = [v for v in range(N) if heavy(deg[v])]
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        if not heavy(deg[v]):
            continue
        S &= ~(1 << v)
        trace.deleted += 1
        for u in members(red[v] & S):
            deg[u] -= 1
    trace.S = tuple(members(S))

    # (2) blue clique of size 2t, or a maximum one
    Bm = max_clique(blue, S, cap=2 * t)
    B = tuple(members(Bm))
    bsize = len(B)
    trace.B = B

    # (3) drop vertices with >= 3 eps |B| red neighbours in B
    num3, den3 = 3 * eps.numerator * bsize, eps.denominator
    Sp = 0
    for v in members(S & ~Bm):
        if popcount(red[v] & Bm) * den3 < num3:
            Sp |= 1 << v
    trace.filtered = popcount(S & ~Bm) - popcount(Sp)
    trace.Sprime = tuple(members(Sp))

    # (4) red hull R of size floor(3 eps |B|) capturing the most of S'
    # (eps > 1/3 only under relaxed use; the hull then is all of B)
    r = min(num3 // den3, bsize)
    trace.hull_size = r
    local = {v: i for i, v in enumerate(B)}
    buckets: dict[int, int] = {}
    for v in members(Sp):
        lm = 0
        for u in members(red[v] & Bm):
            lm |= 1 << local[u]
        buckets[lm] = buckets.get(lm, 0) + 1
    Rlocal, method = choose_hull(buckets, bsize, r) if bsize else (0, "empty")
    trace.hull_method = method
    R = tuple(B[i] for i in members(Rlocal))
    Rm = mask_of(R)
    SR = 0
    for v in members(Sp):
        if red[v] & Bm & ~Rm == 0:
            SR |= 1 << v
    trace.R, trace.S_R = R, tuple(members(SR))
    if bsize:
        # pigeonhole: |S_R| >= |S'| / C(|B|, r)
        trace.pigeonhole_ok = popcount(SR) * comb(bsize, r) >= popcount(Sp)
        if not trace.pigeonhole_ok:
            trace.notes.append("hull selection fell short of the pigeonhole guarantee")

    # (5) finish
    if bsize >= 2 * t:
        trace.branch = "blue-clique"
        pair = MonoPair.from_masks(Color.BLUE, Bm & ~Rm, SR)
    else:
        trace.branch = "es-pair"
        k, l = t, max(ceil(7 * eps * t), r + 1)
        trace.es_k, trace.es_l = k, l
        found = _es_masks(red, SR, k, l)
        if found is None:
            raise DeclaredFailure(
                f"S_R has {popcount(SR)} vertices, too few for a red K_{k} or blue K_{l}", trace=trace
            )
        pair = MonoPair.from_masks(*found)
        if pair.color is Color.BLUE:
            trace.notes.append("es-pair returned blue inside S_R although B was a maximum blue clique")

    if not pair.is_valid(c):
        raise DeclaredFailure("extracted pair failed verification", trace=trace)

    if strict:
        if pair.color is not Color.RED and trace.branch == "es-pair":
            raise DeclaredFailure("es-pair inside S_R returned blue under paper strictness", trace=trace)
        if len(pair.X) < t:
            raise DeclaredFailure(f"|X| = {len(pair.X)} < t = {t}", trace=trace)
        # |Y| >= eps^(14 eps t) N
        need = I.ival(N) * I.pow2(-I.ival(14 * eps * t) * I.log2(1 / eps))
        if not I.ge(len(pair.Y), need):
            raise DeclaredFailure("|Y| below eps^(14 eps t) N", trace=trace)
    return pair, trace


def verify_esz_invariants(c: TwoColoring, eps: Fraction, trace: EszTrace) -> list[str]:
    """Recheck the deletion / filter / S_R invariants of a trace; returns violated ones."""
    bad = []
    N = c.N
    red = c.adj(Color.RED)
    Sm, Bm, Spm, Rm, SRm = (mask_of(x) for x in (trace.S, trace.B, trace.Sprime, trace.R, trace.S_R))
    if 2 * c.red.m * eps.denominator <= eps.numerator * N * N and 2 * popcount(Sm) < N:
        bad.append("deletion: |S| < N/2")
    for v in members(Sm):
        if popcount(red[v] & Sm) * eps.denominator >= eps.numerator * N:
            bad.append(f"deletion: vertex {v} still has red degree >= eps N inside S")
            break
    if Bm & ~Sm or not _is_mono_pair_mask(c.adj(Color.BLUE), Bm, 0):
        bad.append("B is not a blue clique inside S")
    b = popcount(Bm)
    for v in members(Spm):
        if popcount(red[v] & Bm) * eps.denominator >= 3 * eps.numerator * b:
            bad.append(f"filter: vertex {v} has >= 3 eps |B| red neighbours in B")
            break
    for v in members(Sm & ~Bm & ~Spm):
        if popcount(red[v] & Bm) * eps.denominator < 3 * eps.numerator * b:
            bad.append(f"filter: vertex {v} removed without cause")
            break
    if Spm & Bm:
        bad.append("S' meets B")
    if Rm & ~Bm:
        bad.append("R not inside B")
    for v in members(Spm):
        inside = red[v] & Bm & ~Rm == 0
        if inside != bool(SRm >> v & 1):
            bad.append(f"S_R definition fails at vertex {v}")
            break
    if SRm & ~Spm:
        bad.append("S_R not inside S'")
    # every vertex of B has red degree < eps N inside S, so the filter can drop at most N/3
    if 3 * (popcount(Sm & ~Bm) - popcount(Spm)) > N:
        bad.append("filter removed more than N/3 vertices")
    return bad
