"""Named inequality results and sound comparisons over exact or interval values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _interval as I


@dataclass(frozen=True)
class InequalityCheck:
    """Outcome of checking one inequality over a finite parameter grid.

    ``passed`` is None when the check could not be run (out of reach).
    A failing check always carries a concrete ``counterexample``.
    """

    name: str
    domain: str
    passed: bool | None
    method: str
    counterexample: str | None = None
    note: str = ""
    reading: str | None = None
    points: int = 0

    @property
    def status(self) -> str:
        return {True: "pass", False: "fail", None: "unchecked"}[self.passed]

    def line(self) -> str:
        tag = {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]
        parts = [tag, self.name, self.domain]
        if self.counterexample:
            parts.append(self.counterexample)
        return " ".join(parts)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "pass": self.passed,
            "domain": self.domain,
            "method": self.method,
            "points": self.points,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.reading is not None:
            out["reading"] = self.reading
        if self.note:
            out["note"] = self.note
        return out


def exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def sound_le(a, b) -> bool:
    if exact(a) and exact(b):
        return a <= b
    return I.le(a, b)


def sound_ge(a, b) -> bool:
    return sound_le(b, a)


def sound_lt(a, b) -> bool:
    if exact(a) and exact(b):
        return a < b
    return I.lt(a, b)


def method_of(*values) -> str:
    return "exact" if all(exact(v) for v in values) else "outward-rounded"


def fmt(x) -> str:
    """Exact values print as ``p/q``; intervals as a rounded-down decimal."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return I.lower_str(x, 6)


def _iv(x):
    return I.ival(x)


def add(a, b):
    """a + b, staying exact when both are."""
    return a + b if exact(a) and exact(b) else _iv(a) + _iv(b)


def mul(a, b):
    return a * b if exact(a) and exact(b) else _iv(a) * _iv(b)
