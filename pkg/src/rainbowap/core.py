"""Colorings of integer intervals and the primitive queries on them.

A :class:`Coloring` is an immutable sequence of small non-negative color ids
attached to the interval ``[start, start + n - 1]``. Every query takes and
returns absolute positions. The three-color names used throughout are
``R = 0``, ``G = 1``, ``B = 2``; they are only a presentation convention.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from . import kernels

R, G, B = 0, 1, 2
RGB = "RGB"
ALPHABET = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"


class DomainError(ValueError):
    """A position or interval lies outside the coloring's domain."""


class FormatError(ValueError):
    """Malformed coloring text; carries 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Interval:
    """Closed integer interval ``[lo, hi]``; empty when ``hi < lo``."""

    lo: int
    hi: int

    def __len__(self):
        return max(0, self.hi - self.lo + 1)

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    @property
    def empty(self):
        return self.hi < self.lo

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class APTriple:
    """The progression ``a, a + d, a + 2d``."""

    a: int
    d: int

    @property
    def terms(self):
        return (self.a, self.a + self.d, self.a + 2 * self.d)


@dataclass(frozen=True)
class ColorCensus:
    counts: dict
    domain_size: int

    def __getitem__(self, color):
        return self.counts.get(color, 0)

    def __add__(self, other):
        merged = Counter(self.counts)
        merged.update(other.counts)
        return ColorCensus(dict(merged), self.domain_size + other.domain_size)

    @property
    def largest(self):
        return max(self.counts.values(), default=0)


@dataclass(frozen=True)
class Coloring:
    colors: tuple
    start: int = 1

    def __post_init__(self):
        colors = tuple(int(x) for x in self.colors)
        if any(x < 0 for x in colors):
            raise ValueError("color ids must be non-negative")
        object.__setattr__(self, "colors", colors)

    @classmethod
    def from_string(cls, tokens: str, start: int = 1) -> "Coloring":
        return cls(_decode_tokens(tokens), start)

    def __len__(self):
        return len(self.colors)

    @property
    def n(self):
        return len(self.colors)

    @property
    def stop(self):
        """Last position (``start - 1`` for the empty coloring)."""
        return self.start + len(self.colors) - 1

    @property
    def domain(self):
        return Interval(self.start, self.stop)

    @property
    def palette(self):
        return sorted(set(self.colors))

    def __getitem__(self, pos):
        if not self.start <= pos <= self.stop:
            raise DomainError(f"position {pos} outside {self.domain}")
        return self.colors[pos - self.start]

    def items(self):
        return zip(range(self.start, self.stop + 1), self.colors)

    def window(self, lo, hi, start=None):
        """Restriction to ``[lo, hi]``, optionally re-based at ``start``."""
        _check_inside(self, Interval(lo, hi))
        part = self.colors[lo - self.start:hi - self.start + 1]
        return Coloring(part, lo if start is None else start)

    def reversed(self):
        return Coloring(self.colors[::-1], self.start)

    def to_text(self, rgb=False):
        """Shared one-line text form, preceded by ``start=`` when not 1."""
        header = f"start={self.start}\n" if self.start != 1 else ""
        return header + _encode_tokens(self.colors, rgb) + "\n"

    def to_json(self):
        return {"start": self.start, "colors": list(self.colors)}

    def __str__(self):
        try:
            return _encode_tokens(self.colors, set(self.colors) <= {R, G, B})
        except FormatError:
            return json.dumps(list(self.colors))


def _encode_tokens(colors, rgb):
    if rgb:
        if any(x > 2 for x in colors):
            raise FormatError("RGB tokens need color ids 0..2")
        return "".join(RGB[x] for x in colors)
    if any(x >= len(ALPHABET) for x in colors):
        raise FormatError("more than 62 colors; use the JSON form")
    text = "".join(ALPHABET[x] for x in colors)
    if text and set(text) <= set(RGB):
        raise FormatError("token string would be read as R/G/B aliases; use the JSON form")
    return text


def _decode_tokens(tokens, line=1, col0=1):
    # Strings made only of R, G, B use the aliases; anything else the alphabet.
    if tokens and set(tokens) <= set(RGB):
        return tuple(RGB.index(t) for t in tokens)
    out = []
    for j, t in enumerate(tokens):
        idx = ALPHABET.find(t)
        if idx < 0:
            raise FormatError(f"illegal color token {t!r}", line, col0 + j)
        out.append(idx)
    return tuple(out)


def parse_coloring(text: str) -> Coloring:
    """Parse the text form (optional ``start=<int>`` header) or the JSON form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(obj, dict) or "colors" not in obj:
            raise FormatError("JSON coloring needs a 'colors' list", 1, 1)
        colors = obj["colors"]
        start = obj.get("start", 1)
        if not isinstance(start, int) or not all(isinstance(x, int) and x >= 0 for x in colors):
            raise FormatError("'start' must be an int and colors non-negative ints", 1, 1)
        return Coloring(tuple(colors), start)

    start = 1
    body = None
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        col0 = raw.index(line[0]) + 1
        if body is None and not header_seen and line.startswith("start="):
            header_seen = True
            value = line[len("start="):].strip()
            try:
                start = int(value)
            except ValueError:
                raise FormatError(f"bad start value {value!r}", lineno, col0 + 6) from None
            continue
        if body is not None:
            raise FormatError("unexpected extra line", lineno, col0)
        for j, ch in enumerate(line):
            if ch.isspace():
                raise FormatError("whitespace inside the token string", lineno, col0 + j)
        body = _decode_tokens(line, lineno, col0)
    return Coloring(body or (), start)


def _check_inside(c, interval):
    if interval.empty:
        return
    if interval.lo < c.start or interval.hi > c.stop:
        raise DomainError(f"{interval} exceeds domain {c.domain}")


def find_rainbow_ap3(c: Coloring) -> Optional[APTriple]:
    """Least ``(a, d)`` whose progression carries three distinct colors."""
    hit = kernels.find_rainbow(c.colors)
    if hit is None:
        return None
    return APTriple(c.start + hit[0], hit[1])


def is_rainbow_free(c: Coloring) -> bool:
    return kernels.find_rainbow(c.colors) is None


def census(c: Coloring, s: Union[Interval, Iterable[int], None] = None) -> ColorCensus:
    if s is None:
        s = c.domain
    if isinstance(s, Interval):
        _check_inside(c, s)
        part = c.colors[s.lo - c.start:s.hi - c.start + 1] if not s.empty else ()
        return ColorCensus(dict(Counter(part)), len(part))
    positions = list(s)
    counts = Counter(c[p] for p in positions)
    return ColorCensus(dict(counts), len(positions))


def is_solitary(c: Coloring, x: int) -> bool:
    cs = c.colors
    return not any(cs[i] == x and cs[i + 1] == x for i in range(len(cs) - 1))


def neighbor_set(c: Coloring, x: int) -> set:
    cs = c.colors
    n = len(cs)
    return {
        c.start + i
        for i in range(n)
        if (i + 1 < n and cs[i + 1] == x) or (i > 0 and cs[i - 1] == x)
    }


def _pattern_ids(pattern):
    if isinstance(pattern, str):
        return _decode_tokens(pattern)
    return tuple(pattern)


def contains_pattern(c: Coloring, interval: Optional[Interval], pattern) -> Optional[int]:
    """Least ``x`` in ``interval`` with ``x + k`` in it and ``c(x+i) = A_i``."""
    pat = _pattern_ids(pattern)
    if not pat:
        raise ValueError("pattern must be non-empty")
    if interval is None:
        interval = c.domain
    lo = max(interval.lo, c.start)
    hi = min(interval.hi, c.stop)
    k = len(pat) - 1
    cs = c.colors
    for x in range(lo, hi - k + 1):
        off = x - c.start
        if cs[off:off + k + 1] == pat:
            return x
    return None


def canonicalize(c: Coloring) -> Coloring:
    """Relabel colors by order of first occurrence (restricted growth form)."""
    relabel = {}
    out = []
    for x in c.colors:
        if x not in relabel:
            relabel[x] = len(relabel)
        out.append(relabel[x])
    return Coloring(tuple(out), c.start)


def merge_colors(c: Coloring, keep: int, absorb: int) -> Coloring:
    """Recolor class ``absorb`` with ``keep``."""
    return Coloring(tuple(keep if x == absorb else x for x in c.colors), c.start)


def class_positions(c: Coloring) -> dict:
    classes = {}
    for pos, x in c.items():
        classes.setdefault(x, []).append(pos)
    return classes


@dataclass(frozen=True)
class SpecialIntervals:
    """Named pieces of the split ``I_1 | I_2 | I_3`` around the first BB.

    ``anchor`` plays G, ``neighbor`` plays R and ``pair`` plays B.
    """

    anchor: int
    neighbor: int
    pair: int
    l: int
    b: int
    I0: Interval
    I1: Interval
    I2: Interval
    I2p: Interval
    I2pp: Interval
    I3: Interval
    It: Interval


@dataclass(frozen=True)
class IntervalDecomposition:
    anchor_color: int
    initial: Interval
    xx_intervals: tuple
    terminal: Interval
    special: Optional[SpecialIntervals] = None
    length_histogram: dict = field(default_factory=dict)

    def pieces(self):
        return [self.initial, *self.xx_intervals, self.terminal]


def _pair_positions(cs, color):
    return [i for i in range(len(cs) - 1) if cs[i] == color and cs[i + 1] == color]


def _special(c, x):
    cs = c.colors
    s = c.start
    if not is_solitary(c, x) or x not in cs:
        return None
    nbr = {c[p] for p in neighbor_set(c, x)}
    if len(nbr) != 1:
        return None
    (rho,) = nbr
    others = set(cs) - {x, rho}
    if len(others) != 1:
        return None
    (beta,) = others
    pairs = _pair_positions(cs, beta)
    if not pairs:
        return None
    b = s + pairs[0]
    anchors = [s + i for i, v in enumerate(cs) if v == x]
    before = [p for p in anchors if p < b]
    if not before:
        return None
    l = before[-1]
    n_end = c.stop
    # I_2' mirrors I_1 \ {l} about l.
    mirror_hi = 2 * l - s
    return SpecialIntervals(
        anchor=x,
        neighbor=rho,
        pair=beta,
        l=l,
        b=b,
        I0=Interval(s, anchors[0] - 1),
        I1=Interval(s, l),
        I2=Interval(l + 1, b + 1),
        I2p=Interval(l + 1, mirror_hi),
        I2pp=Interval(max(l + 1, mirror_hi + 1), b + 1),
        I3=Interval(b + 2, n_end),
        It=Interval(s + _pair_positions(cs, beta)[-1] + 1, n_end),
    )


def decompose(c: Coloring, x: int) -> IntervalDecomposition:
    """Split the domain at occurrences of ``x`` into initial, X-X and terminal pieces."""
    anchors = [p for p, v in c.items() if v == x]
    if not anchors:
        return IntervalDecomposition(x, c.domain, (), Interval(c.stop + 1, c.stop), None, {})
    xx = tuple(Interval(p, q - 1) for p, q in zip(anchors, anchors[1:]))
    hist = dict(Counter(len(iv) for iv in xx))
    return IntervalDecomposition(
        anchor_color=x,
        initial=Interval(c.start, anchors[0] - 1),
        xx_intervals=xx,
        terminal=Interval(anchors[-1], c.stop),
        special=_special(c, x),
        length_histogram=hist,
    )


def contains_pair(c: Coloring, color: int, interval: Optional[Interval] = None) -> bool:
    return contains_pattern(c, interval, (color, color)) is not None


def as_coloring(obj: Union[Coloring, str, Sequence[int]], start: int = 1) -> Coloring:
    if isinstance(obj, Coloring):
        return obj
    if isinstance(obj, str):
        return Coloring.from_string(obj, start)
    return Coloring(tuple(obj), start)
