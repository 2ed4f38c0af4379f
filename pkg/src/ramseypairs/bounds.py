"""Grid verification of the constant chains, and the classical clique bounds at desk scale."""

from __future__ import annotations

from fractions import Fraction
from math import ceil, comb, isqrt

from . import _interval as I
from . import ramsey
from .amplify import ALPHA_START, GROWTH, AlphaTerm, _mono_clique
from .checks import InequalityCheck, add, exact, fmt, mul, sound_ge, sound_le
from .embedding import find_mono_copy
from .errors import InvalidSizeError
from .graph import Color, Graph, TwoColoring

DEFAULT_M_VALUES = (3600, 10**4, 10**6, 10**8)
DEFAULT_EPS_GRID = (Fraction(1, 7), Fraction(1, 8), Fraction(1, 16), Fraction(1, 128))
DEFAULT_ALPHA_POINTS = 200
SEQUENCE_LENGTH = 50
# past a cube root of 2^12 the next cube root exceeds 2^(2*4096/3)
SATURATED_INV_CBRT = Fraction(1, 2**2730)


def _eps_domain(grid) -> str:
    return "eps=" + ",".join(fmt(e) for e in grid)


class _Sweep:
    """Collects the first failing point of a grid sweep."""

    def __init__(self):
        self.cex: str | None = None
        self.points = 0
        self.exact_only = True

    def check(self, ok: bool, where: str, *values) -> None:
        self.points += 1
        if not all(exact(v) for v in values):
            self.exact_only = False
        if not ok and self.cex is None:
            self.cex = where

    def result(self, name: str, domain: str, **kw) -> InequalityCheck:
        method = "exact" if self.exact_only else "outward-rounded"
        return InequalityCheck(name, domain, self.cex is None, method, self.cex, points=self.points, **kw)


# ---------------------------------------------------------------------------
# sparse-pair extraction constants


def _check_ratio(eps_grid) -> InequalityCheck:
    sw = _Sweep()
    for eps in eps_grid:
        lhs = I.ival(7 * eps) / (I.E * I.ival(1 + 7 * eps))
        sw.check(I.ge(lhs, I.ival(Fraction(6, 5) * eps)), f"eps={fmt(eps)}", lhs)
        # l/(e(t+l)) with l = 7 eps t is the same ratio for every t
        for t in range(ceil(1 / eps), ceil(1 / eps) + 8):
            l = 7 * eps * t
            sw.check(l / (t + l) == 7 * eps / (1 + 7 * eps), f"eps={fmt(eps)},t={t}")
    return sw.result("ratio_7eps_over_e", _eps_domain(eps_grid), note="7eps/(e(1+7eps)) >= 1.2eps")


def _check_power() -> InequalityCheck:
    v = Fraction(6, 5) ** 7
    ok = v >= Fraction(7, 2) and v / 7 >= Fraction(1, 2)
    return InequalityCheck(
        "pow_1.2_7", "constant", ok, "exact", None if ok else fmt(v), note=f"1.2^7={fmt(v)}", points=2
    )


def _check_binomial(limit: int = 64) -> InequalityCheck:
    sw = _Sweep()
    for a in range(1, limit + 1):
        for b in range(1, a + 1):
            lhs = I.ival(comb(a, b) * b**b)
            rhs = I.E**b * I.ival(a**b)
            sw.check(I.le(lhs, rhs), f"a={a},b={b}", lhs)
    return sw.result("binomial_entropy", f"1<=b<=a<={limit}", note="C(a,b) <= (ea/b)^b")


def _check_closing(eps_grid) -> InequalityCheck:
    """The closing steps: (1/2 - 2 eps) >= eps and the survivor count N/2 - 2t - N/3 >= N/7."""
    sw = _Sweep()
    for eps in eps_grid:
        sw.check(Fraction(1, 2) - 2 * eps >= eps, f"eps={fmt(eps)}", eps)
    # N/2 - N/3 - N/7 = N/42 >= 2t once N >= 7^14 t
    spare = Fraction(1, 2) - Fraction(1, 3) - Fraction(1, 7)
    sw.check(spare == Fraction(1, 42) and Fraction(7**14, 42) >= 2, "survivors", spare)
    return sw.result("closing_chain", _eps_domain(eps_grid))


def _check_t_reading(eps_grid) -> InequalityCheck:
    """1.2^(7 eps t) >= 1.2^7 needs eps*t >= 1: the hypothesis t >= 1/eps, not t <= 1/eps.

    The base exceeds 1, so the power comparison is the exact exponent comparison 7 eps t >= 7.
    """
    sw = _Sweep()
    for eps in eps_grid:
        for t in range(ceil(1 / eps), ceil(1 / eps) + 16):
            sw.check(7 * eps * t >= 7, f"eps={fmt(eps)},t={t}", eps)
    literal = None
    for eps in eps_grid:
        for t in range(1, int(1 / eps) + 1):
            if literal is None and not 7 * eps * t >= 7:
                literal = f"eps={fmt(eps)},t={t}"
    note = "literal t<=1/eps fails at " + literal if literal else "literal t<=1/eps also holds on the grid"
    return sw.result("reading_t_bound", _eps_domain(eps_grid), note=note, reading="t>=1/eps")


# ---------------------------------------------------------------------------
# amplification window


def _alpha_grid(m: int, points: int) -> list[Fraction]:
    cap = I.to_fraction_lo(I.log2(m) ** 3 / 8)
    return [ALPHA_START + (cap - ALPHA_START) * j / points for j in range(points)]


def _check_alpha_tail(m_values, points) -> InequalityCheck:
    sw = _Sweep()
    for m in m_values:
        for a in _alpha_grid(m, points):
            c = AlphaTerm.of(a).cbrt
            lhs = 42 * I.ival(c) * I.pow2(-I.ival(c))
            rhs = 48 / I.ival(c)
            sw.check(I.le(lhs, rhs), f"m={m},alpha={fmt(a)}", lhs)
    return sw.result("alpha_tail_48", _m_domain(m_values, points), note="42a^(1/3)2^(-a^(1/3)) <= 48a^(-1/3)")


def _check_size_chain(m_values, points) -> InequalityCheck:
    """In log2 form: 5/c sqrt(m) >= 10 sqrt(m)/L >= 1.5L >= 2c + L/2 >= 3c, and 53/c sqrt(m) > 3L."""
    sw = _Sweep()
    for m in m_values:
        L = I.log2(m)
        r = I.sqrt(m)
        for a in _alpha_grid(m, points):
            c = I.ival(AlphaTerm.of(a).cbrt)
            where = f"m={m},alpha={fmt(a)}"
            sw.check(I.ge(5 * r / c, 10 * r / L), where, c)
            sw.check(I.ge(10 * r / L, 3 * L / 2), where, c)
            sw.check(I.ge(3 * L / 2, 2 * c + L / 2), where, c)
            sw.check(I.ge(2 * c + L / 2, 3 * c), where, c)  # t >= 1/eps
            sw.check(I.lt(3 * L, 53 * r / c), where, c)
    return sw.result("size_chain", _m_domain(m_values, points), note="2^(5a^(-1/3)sqrt m) >= m^(3/2) >= t >= 1/eps")


def _m_domain(m_values, points) -> str:
    return "m=" + ",".join(str(m) for m in m_values) + f";alpha:{points}pts/window"


# ---------------------------------------------------------------------------
# alpha sequence


def _sequence(length: int) -> list[AlphaTerm]:
    seq = [AlphaTerm.of(ALPHA_START)]
    while len(seq) < length and not seq[-1].saturated:
        seq.append(seq[-1].next())
    return seq


def _inv_cbrt(seq: list[AlphaTerm], j: int):
    """Upper bound on alpha_j^(-1/3) (1-based), exact or interval while materialized."""
    return seq[j - 1].inv_cbrt if j <= len(seq) else SATURATED_INV_CBRT


def _check_growth(length: int) -> list[InequalityCheck]:
    seq = _sequence(length + 1)
    sw = _Sweep()
    for i in range(1, min(len(seq), length + 1)):
        a, b = seq[i - 1], seq[i]
        if b.value is None:
            break
        sw.check(sound_ge(b.value, mul(GROWTH, a.value)), f"i={i}", a.value, b.value)
    tail = len(seq) < length + 1
    note = "terms past the saturated one grow by a factor >= 2^8156 each" if tail else ""
    out = [sw.result("alpha_growth", f"i=1..{length}", note=note)]
    eq = seq[1].value == GROWTH * seq[0].value
    out.append(
        InequalityCheck(
            "alpha_growth_equality", "i=1", eq, "exact", None if eq else "i=1", note="2^6=64=(64/27)*27", points=1
        )
    )
    return out


def _check_sums(length: int) -> list[InequalityCheck]:
    seq = _sequence(length + 1)
    sw = _Sweep()
    shifted = _Sweep()
    running = Fraction(0)
    for i in range(1, length + 1):
        running = add(running, _inv_cbrt(seq, i))
        nxt = _inv_cbrt(seq, i + 1)
        bound = add(Fraction(4, 3), mul(-4, nxt))
        sw.check(sound_le(running, bound), f"i={i}", running, bound)
        # the geometric steps with exponent +j and upper index i-1
        geo = Fraction(1, 3) * sum(Fraction(3, 4) ** j for j in range(i))
        shifted.check(sound_le(running, geo), f"i={i}", running)
        shifted.check(geo == Fraction(4, 3) - Fraction(4, 3) * Fraction(3, 4) ** i, f"i={i}")
        shifted.check(sound_le(mul(4, nxt), Fraction(4, 3) * Fraction(3, 4) ** i), f"i={i}", nxt)
    out = [sw.result("sum_bound", f"i=1..{length}", note="sum alpha_j^(-1/3) <= 4/3 - 4alpha_(i+1)^(-1/3)")]

    literal = None
    plus_upper_i = None
    for i in range(1, length + 1):
        nxt = _inv_cbrt(seq, i + 1)
        rhs = add(Fraction(4, 3), mul(-4, nxt))
        minus = Fraction(1, 3) * sum(Fraction(4, 3) ** j for j in range(i + 1))
        plus = Fraction(1, 3) * sum(Fraction(3, 4) ** j for j in range(i + 1))
        if literal is None and not sound_le(minus, rhs):
            literal = f"i={i}:{fmt(minus)}>{fmt(rhs)}"
        if plus_upper_i is None and not sound_le(plus, rhs):
            plus_upper_i = f"i={i}:{fmt(plus)}>{fmt(rhs)}"
    note = f"literal (3/4)^(-j) fails at {literal}"
    if plus_upper_i:
        note += f"; (3/4)^(+j) summed to j=i fails at {plus_upper_i}"
    out.append(shifted.result("reading_geometric_sign", f"i=1..{length}", note=note, reading="(3/4)^(+j),j=0..i-1"))
    return out


def _check_ledger() -> InequalityCheck:
    identities = {
        "250-2*27=196": 250 - 2 * 27 == 196,
        "196-120*4/3=36": 196 - Fraction(120) * Fraction(4, 3) == 36,
        "120*4=480": 120 * 4 == 480,
        "4*2*3*3=72": 4 * 2 * 3 * 3 == 72,
        "125-72=53": 125 - 72 == 53,
        "5+48=53": 5 + 48 == 53,
        "72+48=120": 72 + 48 == 120,
        "14*3=42": 14 * 3 == 42,
    }
    bad = next((k for k, ok in identities.items() if not ok), None)
    return InequalityCheck("exponent_ledger", "identities", bad is None, "exact", bad, points=len(identities))


def verify_inequalities(
    m_values=DEFAULT_M_VALUES,
    alpha_points: int = DEFAULT_ALPHA_POINTS,
    eps_grid=DEFAULT_EPS_GRID,
    sequence_length: int = SEQUENCE_LENGTH,
) -> list[InequalityCheck]:
    """Check every constant chain over the given grids; results come in a fixed order."""
    m_values = tuple(int(m) for m in m_values)
    eps_grid = tuple(Fraction(e) for e in eps_grid)
    if any(m < 3600 for m in m_values):
        raise ValueError("the amplification window is only checked for m >= 3600")
    if any(not 0 < e <= Fraction(1, 7) for e in eps_grid):
        raise ValueError("eps grid must lie in (0, 1/7]")
    checks = [
        _check_ratio(eps_grid),
        _check_power(),
        _check_binomial(),
        _check_closing(eps_grid),
        _check_t_reading(eps_grid),
        _check_alpha_tail(m_values, alpha_points),
        _check_size_chain(m_values, alpha_points),
    ]
    checks += _check_growth(sequence_length)
    checks += _check_sums(sequence_length)
    checks.append(_check_ledger())
    return checks


# ---------------------------------------------------------------------------
# classical clique bounds


def expected_mono_cliques(N: int, n: int) -> Fraction:
    """C(N, n) * 2^(1 - C(n, 2)): expected number of monochromatic K_n in a uniform coloring of K_N."""
    if n < 2:
        raise InvalidSizeError("n must be at least 2")
    if N < n:
        return Fraction(0)
    return comb(N, n) * Fraction(2) ** (1 - comb(n, 2))


def first_moment_threshold(n: int) -> int:
    """floor(2^(n/2))."""
    return isqrt(2**n)


def lower_bound_witness_search(G: Graph, N: int, trials: int, seed: int) -> TwoColoring | None:
    """First sampled coloring of K_N with no monochromatic ``G``, or None after ``trials`` misses."""
    if N < G.n:
        raise InvalidSizeError(f"N={N} is smaller than the pattern order {G.n}")
    for trial in range(trials):
        c = ramsey.uniform_coloring(N, seed, trial)
        if find_mono_copy(c, Color.RED, G) is None and find_mono_copy(c, Color.BLUE, G) is None:
            return c
    return None


def es_clique_bound_check(n: int, N: int | None = None, max_edges: int = 15) -> InequalityCheck:
    """Does every coloring of K_N hold a monochromatic K_n?  N defaults to C(2n-2, n-1)."""
    if n < 2:
        raise InvalidSizeError("n must be at least 2")
    if N is None:
        N = comb(2 * n - 2, n - 1)
    E = comb(N, 2)
    domain = f"all_2^{E}_colorings_of_K_{N}"
    if E > max_edges:
        return InequalityCheck(f"mono_K{n}_in_K{N}", domain, None, "exact", note="beyond the exhaustive limit")
    for bits in range(1 << E):
        c = TwoColoring.from_bits(N, bits)
        if n > N or _mono_clique(c, n) is None:
            red = ",".join(f"{u}-{v}" for u, v in sorted(c.red.edges))
            return InequalityCheck(
                f"mono_K{n}_in_K{N}",
                domain,
                False,
                "exact",
                f"red={red or 'none'}",
                note="exhaustive enumeration",
                points=bits + 1,
            )
    return InequalityCheck(f"mono_K{n}_in_K{N}", domain, True, "exact", note="exhaustive enumeration", points=1 << E)
