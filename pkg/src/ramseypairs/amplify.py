"""Pair amplification, the iteration driver built on it, and a coloring-free bound tracer.

One amplification step turns a monochromatic pair whose clique side has
about alpha*sqrt(m) vertices into one whose clique side has about
2^(2 alpha^(1/3)) sqrt(m) vertices, unless it finds the pattern on the way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import _interval as I
from ._bits import full, members, popcount
from .checks import InequalityCheck, add, exact, fmt, method_of, mul, sound_ge, sound_le
from .embedding import DEFAULT_NODE_LIMIT, Embedding, _check_size_guarantee, _sparse_subset, find_copy
from .errors import DeclaredFailure, PreconditionError, ResourceLimitError
from .extraction import ExtractionParams, MonoPair, Strictness, es_pair, esz_pair, max_clique
from .graph import Color, Graph, PatternSplit, TwoColoring, top_degree_split

SMALL_M_CUTOFF = 3906
ALPHA_START = Fraction(27)
GROWTH = Fraction(64, 27)  # (4/3)^3
SATURATION_CBRT = 4096


# ---------------------------------------------------------------------------
# the alpha sequence


@dataclass(frozen=True)
class AlphaTerm:
    """``value`` and its cube root, each an exact Fraction when that is possible."""

    value: object
    cbrt: object

    @classmethod
    def of(cls, alpha: Fraction) -> AlphaTerm:
        alpha = Fraction(alpha)
        c = I.icbrt_exact(alpha)
        return cls(alpha, c if c is not None else I.cbrt(alpha))

    @property
    def exact(self) -> bool:
        return exact(self.value) and exact(self.cbrt)

    @property
    def inv_cbrt(self):
        return 1 / self.cbrt if exact(self.cbrt) else 1 / I.ival(self.cbrt)

    @property
    def saturated(self) -> bool:
        return sound_ge(self.cbrt, SATURATION_CBRT)

    def lower(self) -> Fraction:
        """Rational lower bound (the value itself when exact)."""
        if exact(self.value):
            return self.value
        return Fraction(int(I.to_fraction_lo(self.value) * 2**64), 2**64)

    def next(self) -> AlphaTerm:
        """The term 2^(2 * cbrt)."""
        if self.saturated:
            raise OverflowError("alpha sequence saturated")
        e = 2 * self.cbrt if exact(self.cbrt) else 2 * I.ival(self.cbrt)
        if exact(e) and e.denominator == 1:
            e = int(e)
            value = Fraction(2**e)
            c = Fraction(2 ** (e // 3)) if e % 3 == 0 else I.pow2(Fraction(e, 3))
            return AlphaTerm(value, c)
        return AlphaTerm(I.pow2(e), I.pow2(I.ival(e) / 3))

    def text(self) -> str:
        return fmt(self.value)


def alpha_ceiling(m: int):
    """log2(m)^3 / 8, exact when m is a power of two."""
    if m & (m - 1) == 0:
        k = m.bit_length() - 1
        return Fraction(k**3, 8)
    return I.log2(m) ** 3 / 8


def reached_ceiling(term: AlphaTerm, m: int) -> bool:
    """Has the sequence reached log2(m)^3/8?  An undecided interval overlap counts as reached."""
    cap = alpha_ceiling(m)
    if exact(term.value) and exact(cap):
        return term.value >= cap
    return not I.lt(term.value, cap)


def alpha_sequence(m: int) -> list[AlphaTerm]:
    """alpha_1 = 27, alpha_{i+1} = 2^(2 alpha_i^(1/3)), up to and including the first term >= log2(m)^3/8."""
    seq = [AlphaTerm.of(ALPHA_START)]
    while not reached_ceiling(seq[-1], m):
        seq.append(seq[-1].next())
    return seq


# ---------------------------------------------------------------------------
# one amplification step


@dataclass(frozen=True)
class AmplifyParams:
    alpha: Fraction
    m: int
    profile: Strictness
    eps: Fraction
    t: int

    @classmethod
    def build(cls, alpha, m: int, profile: Strictness = Strictness.RELAXED, t: int | None = None) -> AmplifyParams:
        """Derive eps = 2^-ceil(3 alpha^(1/3)) and t = ceil(2^(2 alpha^(1/3)) sqrt(m)).

        A smaller ``t`` may be forced under the relaxed profile so that the
        step can run on desk-sized colorings.
        """
        alpha = Fraction(alpha)
        profile = Strictness(profile)
        if m < 1:
            raise PreconditionError(f"pattern must have at least one edge, got m={m}")
        if alpha < 1:
            raise PreconditionError(f"alpha must be at least 1 so that eps <= 1/8, got {fmt(alpha)}")
        if profile is Strictness.PAPER:
            cap = alpha_ceiling(m)
            if alpha < ALPHA_START or not sound_le(alpha, cap):
                raise PreconditionError(
                    f"amplification needs 27 <= alpha <= log2(m)^3/8 = {fmt(cap)}, got alpha={fmt(alpha)}"
                )
        eps = Fraction(1, 2 ** I.ceil_cbrt_times(alpha, 3))
        derived = derived_t(alpha, m)
        if t is None:
            t = derived
        elif profile is Strictness.PAPER and t != derived:
            raise PreconditionError("t cannot be overridden under the paper profile")
        if t < 1:
            raise PreconditionError("t must be positive")
        return cls(alpha, m, profile, eps, t)


def derived_t(alpha: Fraction, m: int) -> int:
    c = I.icbrt_exact(alpha)
    root = isqrt(m)
    if c is not None and (2 * c).denominator == 1 and root * root == m:
        return 2 ** int(2 * c) * root
    c = I.cbrt(alpha) if c is None else I.ival(c)
    return I.ceil_hi(I.pow2(2 * c) * I.sqrt(m))


@dataclass
class AmplifyStep:
    """Everything one amplification step did; ``result`` is its answer."""

    params: AmplifyParams
    input_pair: MonoPair
    split: PatternSplit | None = None
    copy: Embedding | None = None
    sparse_set: tuple[int, ...] = ()
    pair: MonoPair | None = None
    esz: object = None
    notes: list[str] = field(default_factory=list)

    @property
    def result(self) -> Embedding | MonoPair | None:
        return self.copy if self.copy is not None else self.pair

    def to_json(self) -> dict:
        p = self.params
        out = {
            "alpha": fmt(p.alpha),
            "eps": fmt(p.eps),
            "t": p.t,
            "profile": p.profile.value,
            "input": self.input_pair.to_json(),
            "split_A": list(self.split.A) if self.split else None,
            "sparse_size": len(self.sparse_set),
            "notes": list(self.notes),
        }
        if self.copy is not None:
            out["copy"] = self.copy.to_json()
        if self.pair is not None:
            out["pair"] = self.pair.to_json()
        if self.esz is not None:
            out["esz"] = {"branch": self.esz.branch, "B": list(self.esz.B), "R": list(self.esz.R)}
        return out


def _embed_into_clique(clique: tuple[int, ...], G: Graph, color: Color) -> Embedding:
    return Embedding(tuple(clique[: G.n]), color)


def _checked(emb: Embedding, c: TwoColoring, G: Graph) -> Embedding:
    if not emb.verify(c.adj(emb.color), G):
        raise DeclaredFailure("assembled copy failed edge-by-edge verification", trace=emb)
    return emb


def _paper_entry_check(pair: MonoPair, p: AmplifyParams) -> None:
    a = AlphaTerm.of(p.alpha)
    # |X| >= alpha sqrt(m)  <=>  |X|^2 >= alpha^2 m
    if Fraction(len(pair.X)) ** 2 < p.alpha**2 * p.m:
        raise PreconditionError(
            f"amplification needs |X| >= alpha*sqrt(m) = {fmt(p.alpha)}*sqrt({p.m}), got {len(pair.X)}"
        )
    need = 125 * I.ival(a.inv_cbrt) * I.sqrt(p.m)
    if not pair.Y or not I.ge(I.log2(len(pair.Y)), need):
        raise PreconditionError(
            f"amplification needs |Y| >= 2^(125 alpha^(-1/3) sqrt(m)) ~ 2^{I.lower_str(need, 3)}, got {len(pair.Y)}"
        )


def amplify_step(
    c: TwoColoring, G: Graph, pair: MonoPair, p: AmplifyParams, node_limit: int | None = DEFAULT_NODE_LIMIT
) -> AmplifyStep:
    if not pair.is_valid(c):
        raise PreconditionError("input pair is not monochromatic in the coloring")
    if G.m != p.m:
        raise PreconditionError(f"params were built for m={p.m}, pattern has m={G.m}")
    if G.isolated_vertices():
        raise PreconditionError("pattern must not have isolated vertices")
    strict = p.profile is Strictness.PAPER
    if strict:
        _paper_entry_check(pair, p)

    step = AmplifyStep(p, pair)
    color = pair.color
    adj = c.adj(color)

    if len(pair.X) >= G.n:
        step.copy = _checked(_embed_into_clique(pair.X, G, color), c, G)
        step.notes.append("clique side already holds the pattern")
        return step

    # (1) peel off the |X| highest-degree pattern vertices
    split = top_degree_split(G, len(pair.X))
    step.split = split

    # (2) the remainder inside Y, in the pair's color, completes a copy
    found = find_copy(adj, pair.y_mask, split.gprime, node_limit)
    if found is not None:
        mapping = [0] * G.n
        for a, x in zip(split.A, pair.X):
            mapping[a] = x
        for i, h in enumerate(found):
            mapping[split.rest[i]] = h
        step.copy = _checked(Embedding(tuple(mapping), color), c, G)
        return step

    # (3) Y has no copy of the remainder, so it has a sparse subset
    S = _sparse_subset(adj, pair.y_mask, split.gprime, p.eps, node_limit, copy_free_known=True)
    step.sparse_set = tuple(members(S))
    if strict:
        _check_size_guarantee(len(pair.Y), popcount(S), split.gprime, p.eps)

    # (4) sparse-pair extraction inside S, with the pair's color playing red
    sub, order = c.restrict(step.sparse_set)
    if color is Color.BLUE:
        sub = sub.swapped()
    try:
        inner, tr = esz_pair(sub, ExtractionParams(eps=p.eps, t=p.t, strictness=p.profile))
    except DeclaredFailure as exc:
        step.esz = exc.trace
        raise DeclaredFailure(f"amplification step could not extract a pair inside S: {exc}", trace=step) from exc
    step.esz = tr
    out_color = inner.color if color is Color.RED else inner.color.other
    out = MonoPair(out_color, tuple(order[v] for v in inner.X), tuple(order[v] for v in inner.Y))
    if not out.is_valid(c) or (out.x_mask | out.y_mask) & ~S:
        raise DeclaredFailure("amplified pair failed verification", trace=step)
    step.pair = out

    if strict:
        if len(out.X) < p.t:
            raise DeclaredFailure(f"|X'| = {len(out.X)} < t = {p.t}", trace=step)
        a = AlphaTerm.of(p.alpha)
        drop = 120 * I.ival(a.inv_cbrt) * I.sqrt(p.m)
        if not I.ge(I.log2(len(out.Y)), I.log2(len(pair.Y)) - drop):
            raise DeclaredFailure("|Y'| below 2^(-120 alpha^(-1/3) sqrt(m)) |Y|", trace=step)
    return step


def amplify(
    c: TwoColoring, G: Graph, pair: MonoPair, p: AmplifyParams, node_limit: int | None = DEFAULT_NODE_LIMIT
) -> Embedding | MonoPair:
    """One amplification step: a monochromatic copy of ``G``, or a pair with a larger clique side."""
    return amplify_step(c, G, pair, p, node_limit).result


# ---------------------------------------------------------------------------
# driver


class Outcome:
    MONO_COPY = "mono-copy"
    EXHAUSTED = "exhausted"
    PRECONDITION_STOP = "precondition-stop"


@dataclass
class IterationRecord:
    i: int
    step: str
    alpha: Fraction | None
    color: str | None
    x_size: int
    y_size: int
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "i": self.i,
            "step": self.step,
            "alpha": fmt(self.alpha) if self.alpha is not None else None,
            "color": self.color,
            "x_size": self.x_size,
            "y_size": self.y_size,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class AmplificationTrace:
    m: int
    n: int
    N: int
    profile: str
    route: str
    iterations: list[IterationRecord] = field(default_factory=list)
    outcome: str = Outcome.EXHAUSTED
    copy: Embedding | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "N": self.N,
            "profile": self.profile,
            "route": self.route,
            "iterations": [r.to_json() for r in self.iterations],
            "outcome": self.outcome,
            "copy": self.copy.to_json() if self.copy else None,
            "notes": list(self.notes),
        }


def _ceil_27_sqrt(m: int) -> int:
    target = 729 * m
    r = isqrt(target)
    return r if r * r == target else r + 1


def _mono_clique(c: TwoColoring, size: int) -> tuple[Color, tuple[int, ...]] | None:
    """A monochromatic clique of the given size: pivot recursion first, exact search as fallback."""
    try:
        pair = es_pair(c, size, size)
        return pair.color, pair.X
    except DeclaredFailure:
        pass
    for color in (Color.RED, Color.BLUE):
        found = max_clique(c.adj(color), full(c.N), cap=size)
        if popcount(found) >= size:
            return color, tuple(members(found))[:size]
    return None


def drive(
    c: TwoColoring,
    G: Graph,
    profile: Strictness = Strictness.RELAXED,
    small_m_cutoff: int = SMALL_M_CUTOFF,
    initial_size: int | None = None,
    t_override: int | None = None,
    node_limit: int | None = DEFAULT_NODE_LIMIT,
) -> AmplificationTrace:
    """Run the full search and return its trace; ``trace.copy`` holds any copy found.

    ``initial_size`` and ``t_override`` shrink the iteration route's
    parameters so that it can be exercised on desk-sized colorings.
    """
    if G.isolated_vertices():
        raise PreconditionError("pattern must not have isolated vertices")
    profile = Strictness(profile)
    m, n, N = G.m, G.n, c.N
    trace = AmplificationTrace(m, n, N, profile.value, "clique" if m <= small_m_cutoff else "amplify")
    if profile is Strictness.PAPER and not I.ge(I.log2(max(N, 1)), 250 * I.sqrt(m)):
        trace.notes.append("N is below 2^(250 sqrt(m)); running with the relaxed profile")
        profile = Strictness.RELAXED
        trace.profile = profile.value

    def finish(emb: Embedding) -> AmplificationTrace:
        trace.copy = _checked(emb, c, G)
        trace.outcome = Outcome.MONO_COPY
        return trace

    if trace.route == "clique":
        found = _mono_clique(c, n) if n <= N else None
        if found is None:
            trace.iterations.append(IterationRecord(1, "clique", None, None, 0, 0, f"no monochromatic K_{n}"))
            trace.outcome = Outcome.EXHAUSTED
            return trace
        color, X = found
        trace.iterations.append(IterationRecord(1, "clique", None, color.value, len(X), 0))
        return finish(_embed_into_clique(X, G, color))

    k = initial_size if initial_size is not None else _ceil_27_sqrt(m)
    try:
        pair = es_pair(c, k, k)
    except DeclaredFailure as exc:
        trace.iterations.append(IterationRecord(1, "es-pair", ALPHA_START, None, 0, 0, str(exc)))
        trace.outcome = Outcome.EXHAUSTED
        return trace
    term = AlphaTerm.of(ALPHA_START)
    i = 1
    trace.iterations.append(IterationRecord(i, "es-pair", term.lower(), pair.color.value, len(pair.X), len(pair.Y)))

    final = False
    while True:
        if len(pair.X) >= n:
            return finish(_embed_into_clique(pair.X, G, pair.color))
        if final:
            trace.outcome = Outcome.EXHAUSTED
            trace.notes.append("final amplification did not reach a clique of the pattern's order")
            return trace
        final = reached_ceiling(term, m)
        alpha = term.lower()
        try:
            params = AmplifyParams.build(alpha, m, profile, t=t_override)
            step = amplify_step(c, G, pair, params, node_limit)
        except PreconditionError as exc:
            trace.iterations.append(IterationRecord(i + 1, "amplify", alpha, None, 0, 0, str(exc)))
            trace.outcome = Outcome.PRECONDITION_STOP
            return trace
        except (DeclaredFailure, ResourceLimitError) as exc:
            trace.iterations.append(IterationRecord(i + 1, "amplify", alpha, None, 0, 0, str(exc)))
            trace.outcome = Outcome.EXHAUSTED
            return trace
        i += 1
        kind = "final" if final else "amplify"
        if step.copy is not None:
            trace.iterations.append(IterationRecord(i, kind, alpha, step.copy.color.value, 0, 0, "copy found"))
            return finish(step.copy)
        pair = step.pair
        trace.iterations.append(IterationRecord(i, kind, alpha, pair.color.value, len(pair.X), len(pair.Y)))
        if not final:
            term = term.next()
        elif profile is Strictness.PAPER and len(pair.X) < 2 * m:
            raise DeclaredFailure(f"final clique side {len(pair.X)} < 2m = {2 * m}", trace=trace)


def prove_or_find(
    c: TwoColoring,
    G: Graph,
    profile: Strictness = Strictness.RELAXED,
    small_m_cutoff: int = SMALL_M_CUTOFF,
    **kwargs,
) -> Embedding | AmplificationTrace:
    """A verified monochromatic copy of ``G`` if the search finds one, else the trace explaining why not."""
    trace = drive(c, G, profile, small_m_cutoff, **kwargs)
    return trace.copy if trace.copy is not None else trace


# ---------------------------------------------------------------------------
# coloring-free bound tracer


@dataclass
class BoundReport:
    m: int
    n_exponent: int
    initial_exponent: int
    floor_exponent: Fraction  # per-iteration floor on log2|Y| / sqrt(m)
    iterations: list[dict]
    stop_index: int
    final_alpha: str
    checks: list[InequalityCheck]

    @property
    def alphas(self) -> list[str]:
        return [r["alpha"] for r in self.iterations if r["step"] != "final"]

    @property
    def ok(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "N_log2": f"{self.n_exponent}*sqrt(m)",
            "initial_y_log2_lb": f"{self.initial_exponent}*sqrt(m)",
            "floor_y_log2_lb": f"{fmt(self.floor_exponent)}*sqrt(m)",
            "alphas": list(self.alphas),
            "stop_index": self.stop_index,
            "final_alpha": self.final_alpha,
            "final_x_lb": "m^(3/2)",
            "iterations": self.iterations,
            "checks": [{"name": ch.name, "pass": ch.passed} for ch in self.checks],
        }


def _coef(x) -> str:
    return f"{fmt(x)}*sqrt(m)"


def trace_bounds(m: int) -> BoundReport:
    if m < 2:
        raise ValueError("trace_bounds needs m >= 2")
    seq = alpha_sequence(m)
    stop = len(seq)
    after = seq[-1].next()  # alpha_{stop+1}, needed by the partial-sum bound at i = stop
    terms = seq + [after]
    checks: list[InequalityCheck] = []

    n_exp, first_k = 250, 27
    initial = n_exp - 2 * first_k
    checks.append(InequalityCheck("initial_exponent", "identity", initial == 196, "exact", note="250-2*27=196"))
    floor = initial - Fraction(120) * Fraction(4, 3)
    checks.append(InequalityCheck("floor_exponent", "identity", floor == 36, "exact", note="196-120*4/3=36"))

    # growth alpha_{i+1} >= (64/27) alpha_i
    bad = None
    methods = []
    for i in range(stop):
        a, b = terms[i], terms[i + 1]
        lhs = b.value
        rhs = mul(GROWTH, a.value)
        methods.append(method_of(lhs, rhs))
        if lhs is None or not sound_ge(lhs, rhs):
            bad = bad or f"i={i + 1}"
    checks.append(InequalityCheck("alpha_growth", f"i=1..{stop}", bad is None, _merge(methods), bad, points=stop))
    eq = terms[1].value == GROWTH * terms[0].value
    checks.append(InequalityCheck("alpha_growth_equality", "i=1", eq, "exact", None if eq else "i=1"))

    # partial sums and per-iteration exponents
    records = []
    running = Fraction(0)
    bad, methods = None, []
    for i in range(1, stop + 1):
        a = terms[i - 1]
        cumulative = add(initial, mul(-120, running))
        per_iter = Fraction(initial) if i == 1 else _lin(36, 480, a.inv_cbrt)
        records.append(
            {
                "i": i,
                "step": "amplify" if i < stop else "stop",
                "alpha": a.text(),
                "x_size": _coef(a.value),
                "y_log2_lb": _coef(per_iter),
                "y_log2_cumulative": _coef(cumulative),
                "entry_log2_need": _coef(_lin(0, 125, a.inv_cbrt)),
            }
        )
        running = add(running, a.inv_cbrt)
        bound = _lin(Fraction(4, 3), -4, terms[i].inv_cbrt)
        methods.append(method_of(running, bound))
        if not sound_le(running, bound):
            bad = bad or f"i={i}"
    checks.append(
        InequalityCheck(
            "sum_bound", f"i=1..{stop}", bad is None, _merge(methods), bad, reading="(3/4)^(+j)", points=stop
        )
    )

    # lemma window for every application before the stop
    cap = alpha_ceiling(m)
    bad = None
    for i in range(1, stop):
        v = terms[i - 1].value
        if not (sound_le(ALPHA_START, v) and sound_le(v, cap)):
            bad = bad or f"i={i}"
    checks.append(
        InequalityCheck("lemma_window", f"i=1..{stop - 1}", bad is None, "outward-rounded", bad, points=stop - 1)
    )

    # final application at alpha_f = (log2(m)/2)^3, so alpha_f^(1/3) = log2(m)/2
    lg = Fraction(m.bit_length() - 1) if m & (m - 1) == 0 else I.log2(m)
    final_cbrt = lg / 2
    final_alpha = final_cbrt**3
    ok_start = sound_le(27, final_alpha)
    ok_cover = sound_ge(seq[-1].value, final_alpha)
    checks.append(
        InequalityCheck(
            "final_alpha_window",
            f"m={m}",
            ok_start and ok_cover,
            method_of(final_alpha),
            None if ok_start and ok_cover else f"alpha_f={fmt(final_alpha)}",
            note="27 <= (log2 m/2)^3 <= alpha_stop",
        )
    )
    # entry requirement: Y exponent available >= 125 alpha^(-1/3)
    bad = None
    for i in range(1, stop):
        have = Fraction(initial) if i == 1 else _lin(36, 480, terms[i - 1].inv_cbrt)
        if not sound_ge(have, _lin(0, 125, terms[i - 1].inv_cbrt)):
            bad = bad or f"i={i}"
    need_final = 125 / final_cbrt if exact(final_cbrt) else 125 / I.ival(final_cbrt)
    if not sound_ge(36, need_final):
        bad = bad or "final"
    checks.append(InequalityCheck("entry_requirement", f"i=1..{stop}", bad is None, "outward-rounded", bad))

    # |X'| >= 2^(2 alpha_f^(1/3)) sqrt(m) = m^(3/2) >= 2m
    ok = m >= 4
    checks.append(
        InequalityCheck("final_clique", f"m={m}", ok, "exact", None if ok else f"m={m}", note="m^(3/2) >= 2m")
    )
    big = m >= 3600
    checks.append(
        InequalityCheck(
            "iteration_route_applies",
            f"m={m}",
            big,
            "exact",
            None if big else f"m={m}",
            note="below 60^2 the direct clique route covers the pattern",
        )
    )

    records.append(
        {
            "i": stop + 1,
            "step": "final",
            "alpha": fmt(final_alpha),
            "x_size": "m^(3/2)",
            "y_log2_lb": None,
            "y_log2_cumulative": None,
            "entry_log2_need": _coef(need_final),
        }
    )
    return BoundReport(m, n_exp, initial, floor, records, stop, fmt(final_alpha), checks)


def _lin(a, b, x):
    """a + b*x, exact when x is."""
    return add(a, mul(b, x))


def _merge(methods: list[str]) -> str:
    return "exact" if all(x == "exact" for x in methods) else "outward-rounded"
