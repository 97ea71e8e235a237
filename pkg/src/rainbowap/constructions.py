"""Explicit rainbow-free colorings and the window function Q(n).

``c0`` is the period-17 coloring with G on multiples of 17, R on residues
+-1, +-2, +-4, +-8 and B on +-3, +-5, +-6, +-7. ``c15`` is the period-15
analogue (R on +-1, +-2, +-4, +-7, B on +-3, +-5, +-6) whose zero residue is
left to the caller. ``Q(n)`` is the smallest largest-class size over all
length-``n`` windows of ``c0``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .core import B, G, R, RGB, Coloring, Interval, census

FREE = None


@dataclass(frozen=True)
class PeriodicPattern:
    """Coloring of ``Z`` determined by ``i mod period``; ``None`` marks a free residue."""

    period: int
    residue_colors: tuple
    name: str = ""

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be positive")
        if len(self.residue_colors) != self.period:
            raise ValueError("every residue must be mapped or marked free")

    def color(self, i: int) -> int:
        col = self.residue_colors[i % self.period]
        if col is FREE:
            raise ValueError(f"residue {i % self.period} of {self.name or 'pattern'} is free")
        return col

    @property
    def free_residues(self):
        return [r for r, col in enumerate(self.residue_colors) if col is FREE]

    def with_residue(self, residue: int, color: int) -> "PeriodicPattern":
        cols = list(self.residue_colors)
        cols[residue % self.period] = color
        return PeriodicPattern(self.period, tuple(cols), self.name)

    def is_symmetric(self) -> bool:
        p = self.period
        return all(self.residue_colors[r] == self.residue_colors[-r % p] for r in range(p))

    def coloring(self, lo: int, hi: int) -> Coloring:
        if lo > hi + 1:
            raise ValueError("lo must not exceed hi")
        return Coloring(tuple(self.color(i) for i in range(lo, hi + 1)), lo)

    def to_json(self) -> dict:
        residues = {
            str(r): (None if col is FREE else (RGB[col] if col <= 2 else col))
            for r, col in enumerate(self.residue_colors)
        }
        return {"period": self.period, "residues": residues, "name": self.name}

    @classmethod
    def from_json(cls, obj) -> "PeriodicPattern":
        if isinstance(obj, str):
            obj = json.loads(obj)
        p = int(obj["period"])
        cols = [FREE] * p
        seen = set()
        for key, value in obj["residues"].items():
            r = int(key)
            if not 0 <= r < p:
                raise ValueError(f"residue {r} outside 0..{p - 1}")
            seen.add(r)
            if value is None or value == "free":
                cols[r] = FREE
            elif isinstance(value, str):
                cols[r] = RGB.index(value)
            else:
                cols[r] = int(value)
        if seen != set(range(p)):
            raise ValueError("every residue must be listed (null marks a free residue)")
        return cls(p, tuple(cols), obj.get("name", ""))


def _symmetric_pattern(period, red, blue, zero, name):
    cols = [FREE] * period
    cols[0] = zero
    for r in red:
        cols[r % period] = cols[-r % period] = R
    for r in blue:
        cols[r % period] = cols[-r % period] = B
    return PeriodicPattern(period, tuple(cols), name)


C0_PATTERN = _symmetric_pattern(17, (1, 2, 4, 8), (3, 5, 6, 7), G, "c0")


def c15_pattern(zero_color: Optional[int] = G) -> PeriodicPattern:
    return _symmetric_pattern(15, (1, 2, 4, 7), (3, 5, 6), zero_color, "c15")


C15_PATTERN = c15_pattern(G)


def c0(lo: int, hi: int) -> Coloring:
    return C0_PATTERN.coloring(lo, hi)


def c15(lo: int, hi: int, zero_color: int = G) -> Coloring:
    return c15_pattern(zero_color).coloring(lo, hi)


def ternary_valuation(n: int) -> Coloring:
    """Color ``i`` in ``[1, n]`` by the exponent of 3 in ``i``."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for i in range(1, n + 1):
        q = 0
        while i % 3 == 0:
            i //= 3
            q += 1
        out.append(q)
    return Coloring(tuple(out), 1)


@dataclass(frozen=True)
class PeriodicCheck:
    ok: bool
    certificate: Optional[tuple] = None  # (a mod p, d mod p) of a rainbow progression
    colors: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def verify_periodic_rainbow_free(p: PeriodicPattern) -> PeriodicCheck:
    """Decide rainbow-freeness of the infinite periodic coloring.

    Every progression over ``Z`` reduces to a pair of residues
    ``(a mod period, d mod period)``, and every pair is realised by some
    progression with ``d > 0``, so the finite scan is exact.
    """
    if p.free_residues:
        raise ValueError("assign the free residues before verifying")
    cols = p.residue_colors
    per = p.period
    for a in range(per):
        x = cols[a]
        for d in range(per):
            y = cols[(a + d) % per]
            z = cols[(a + 2 * d) % per]
            if x != y and y != z and x != z:
                return PeriodicCheck(False, (a, d), (x, y, z))
    return PeriodicCheck(True)


def q_of_interval(c: Coloring, interval: Interval) -> int:
    """Largest color class of ``c`` inside ``interval``."""
    return census(c, interval).largest


@dataclass(frozen=True)
class QValue:
    n: int
    formula_value: int
    epsilon: int
    scan_value: int
    scan_offset: int  # least window start in 1..17 attaining scan_value

    @property
    def agrees(self) -> bool:
        return self.formula_value == self.scan_value


def _window_counts(pattern, lo, n):
    """Per-color counts of ``pattern`` on ``[lo, lo + n - 1]`` in O(period)."""
    per = pattern.period
    full, rest = divmod(n, per)
    counts = {}
    for r in range(per):
        col = pattern.residue_colors[r]
        counts[col] = counts.get(col, 0) + full
    for i in range(lo, lo + rest):
        col = pattern.color(i)
        counts[col] = counts.get(col, 0) + 1
    return counts


def q_epsilon(n: int) -> int:
    return 1 if n % 17 in (3, 5) else 0


def q_formula(n: int) -> int:
    """Closed form ``ceil(8(n-1)/17) + epsilon``; meaningful for ``n >= 2``."""
    return -(-8 * (n - 1) // 17) + q_epsilon(n)


def window_scan(n: int, pattern: PeriodicPattern = C0_PATTERN, offsets=None):
    """``(min largest class, least start)`` over windows of length ``n``.

    By periodicity the starts ``1..period`` cover every window.
    """
    if offsets is None:
        offsets = range(1, pattern.period + 1)
    best = None
    for s in offsets:
        m = max(_window_counts(pattern, s, n).values())
        if best is None or m < best[0]:
            best = (m, s)
    return best


def Q(n: int) -> QValue:
    if n < 1:
        raise ValueError("n must be positive")
    value, offset = window_scan(n)
    return QValue(n, q_formula(n), q_epsilon(n), value, offset)


def extremal_witness(n: int) -> Coloring:
    """A window of ``c0`` re-based to ``[1, n]`` whose largest class is ``Q(n)``."""
    q = Q(n)
    return Coloring(c0(q.scan_offset, q.scan_offset + n - 1).colors, 1)
