"""Outward-rounded interval helpers on top of ``mpmath.iv`` (128-bit).

A comparison helper returns True only when it holds for every point of both
intervals, so a True is a proof and a False may just mean "not decided".
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import iv

PREC = 128
iv.prec = PREC

Interval = type(iv.mpf(0))


def ival(x) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    if isinstance(x, int):
        return iv.mpf(x)
    if isinstance(x, str) and "/" in x:
        return ival(Fraction(x))
    return iv.mpf(x)


def lo(x: Interval):
    return x.a


def hi(x: Interval):
    return x.b


def le(a, b) -> bool:
    return bool(hi(ival(a)) <= lo(ival(b)))


def lt(a, b) -> bool:
    return bool(hi(ival(a)) < lo(ival(b)))


def ge(a, b) -> bool:
    return le(b, a)


def log2(x) -> Interval:
    return iv.log(ival(x)) / iv.log(iv.mpf(2))


def pow2(x) -> Interval:
    return iv.mpf(2) ** ival(x)


def cbrt(x) -> Interval:
    return ival(x) ** (iv.mpf(1) / 3)


def sqrt(x) -> Interval:
    return iv.sqrt(ival(x))


E = iv.e


def floor_lo(x: Interval) -> int:
    return math.floor(lo(x))


def ceil_hi(x: Interval) -> int:
    return math.ceil(hi(x))


def midpoint_str(x: Interval, digits: int = 12) -> str:
    from mpmath import mp, nstr

    with mp.workprec(PREC):
        return nstr((mp.mpf(lo(x)) + mp.mpf(hi(x))) / 2, digits)


def lower_str(x: Interval, digits: int = 9) -> str:
    """Decimal string that is <= every point of ``x``."""
    scaled = math.floor(to_fraction_lo(x) * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpi_[0]
    value = Fraction(int(man)) * (Fraction(2) ** exp)
    return -value if sign else value


def to_fraction_lo(x: Interval) -> Fraction:
    return _mpf_to_fraction(lo(x))


def to_fraction_hi(x: Interval) -> Fraction:
    return _mpf_to_fraction(hi(x))


def icbrt_exact(q: Fraction) -> Fraction | None:
    """Exact rational cube root of ``q >= 0`` if there is one."""
    if q < 0:
        return None
    num = _iroot3(q.numerator)
    den = _iroot3(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _iroot3(n: int) -> int | None:
    r = _newton3(n)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**3 == n:
            return cand
    return None


def _newton3(n: int) -> int:
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def ceil_cbrt_times(q: Fraction, factor: int) -> int:
    """Smallest integer c with c >= factor * q^(1/3), computed exactly."""
    target = q * factor**3
    c = max(_newton3(int(target)), 0)
    while Fraction(c) ** 3 < target:
        c += 1
    while c > 0 and Fraction(c - 1) ** 3 >= target:
        c -= 1
    return c
