"""Constraint propagation for colorings around a fixed G-G window.

Domains are 3-bit masks over ``{R, G, B}``. Three rules are applied to a
fixpoint:

* progression: if two terms of an AP(3) are fixed to different colours the
  third term cannot take the remaining colour;
* a cell fixed to G forces both neighbours to R (G solitary, ``N(G) = R``);
* a cell that cannot be R cannot sit next to a G.

Starting from one period of ``c15`` (or ``c0``) with G at both ends, the
rules alone pin down every cell of a long ambient interval except those at
the free residue.
"""
from __future__ import annotations

import time
from collections import deque
from typing import Optional

from ..constructions import C0_PATTERN, FREE, PeriodicPattern, c15_pattern, verify_periodic_rainbow_free
from ..core import B, G, R, RGB, Coloring
from .report import LemmaReport

ALL = 0b111
BIT = (1, 2, 4)


def _single(mask):
    return mask and not mask & (mask - 1)


def _color(mask):
    return BIT.index(mask)


class Contradiction(Exception):
    pass


def propagate(domains: list) -> list:
    """Fixpoint of the three rules; raises :class:`Contradiction` on an empty domain."""
    D = list(domains)
    L = len(D)
    queue = deque(range(L))
    queued = [True] * L

    def narrow(p, mask):
        new = D[p] & mask
        if new != D[p]:
            if not new:
                raise Contradiction(p)
            D[p] = new
            if not queued[p]:
                queued[p] = True
                queue.append(p)

    while queue:
        p = queue.popleft()
        queued[p] = False
        dp = D[p]
        if dp == BIT[G]:
            for q in (p - 1, p + 1):
                if 0 <= q < L:
                    narrow(q, BIT[R])
        if not dp & BIT[R]:
            for q in (p - 1, p + 1):
                if 0 <= q < L:
                    narrow(q, ALL ^ BIT[G])
        if not _single(dp):
            continue
        # p is fixed: look at every progression through p with one more fixed term.
        for d in range(1, L):
            hit = False
            for a, b2, c in ((p, p + d, p + 2 * d), (p - d, p, p + d), (p - 2 * d, p - d, p)):
                if a < 0 or c >= L:
                    continue
                hit = True
                tri = (a, b2, c)
                for i in range(3):
                    u, v, w = tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]
                    du, dv = D[u], D[v]
                    if _single(du) and _single(dv) and du != dv:
                        narrow(w, du | dv)
            if not hit:
                break
    return D


def window_domains(length: int, window, offset: int) -> list:
    """Domains for ``[0, length)`` with ``window`` (colour ids) fixed at ``offset``."""
    D = [ALL] * length
    for j, col in enumerate(window):
        if 0 <= offset + j < length:
            D[offset + j] = BIT[col]
    return D


def propagate_window(window, ambient_length: int, offset: int = 0) -> list:
    """Propagated domains of an ambient interval around ``window``.

    An ambient no longer than the window is returned as the window itself.
    """
    window = tuple(window)
    if ambient_length <= len(window):
        return [BIT[x] for x in window]
    return propagate(window_domains(ambient_length, window, offset))


def render_domains(D) -> str:
    return "".join(RGB[_color(m)] if _single(m) else "*" for m in D)


def _pattern_window(pattern):
    """One period of ``pattern`` closed by G at both ends (length ``period + 1``)."""
    p = pattern.with_residue(0, G)
    return tuple(p.color(i) for i in range(p.period + 1))


def forced_extension(pattern: PeriodicPattern, ambient_length: int, offset: int) -> dict:
    """Propagate one window of ``pattern`` placed at ``offset`` and compare with ``pattern``."""
    per = pattern.period
    D = propagate_window(_pattern_window(pattern), ambient_length, offset)
    mismatches = []
    residue_zero = {}
    for pos, mask in enumerate(D):
        r = (pos - offset) % per
        if r == 0:
            residue_zero[pos] = render_domains([mask])
            continue
        expected = pattern.residue_colors[r]
        if mask != BIT[expected]:
            mismatches.append(pos)
    return {"offset": offset, "domains": D, "mismatches": mismatches, "residue_zero": residue_zero}


def _residues_from_domains(D, offset, per):
    cols = [FREE] * per
    for pos, mask in enumerate(D):
        r = (pos - offset) % per
        if r and _single(mask):
            cols[r] = _color(mask)
    return tuple(cols)


def check_pattern_lemmas(ambient_periods: int = 6, offsets=None) -> LemmaReport:
    """The 15- and 17-windows force their periodic extension off residue 0."""
    t0 = time.perf_counter()
    cases = [("c15", c15_pattern(FREE)), ("c0", C0_PATTERN.with_residue(0, FREE))]
    rows = {}
    total = 0
    violations = []
    for name, pattern in cases:
        per = pattern.period
        length = ambient_periods * per
        offs = list(range(length - per)) if offsets is None else list(offsets)
        total += len(offs)
        bad = 0
        for off in offs:
            res = forced_extension(pattern, length, off)
            residues = _residues_from_domains(res["domains"], off, per)
            periodic_ok = FREE not in residues[1:] and bool(
                verify_periodic_rainbow_free(PeriodicPattern(per, (G,) + residues[1:])))
            if res["mismatches"] or not periodic_ok:
                bad += 1
                violations.append({"pattern": name, "offset": off, "mismatches": res["mismatches"],
                                   "propagated": render_domains(res["domains"])})
        rows[name] = {"period": per, "ambient_length": length, "offsets": len(offs), "failures": bad}
    rep = LemmaReport("patterns", "window of c15 / c0 at every offset of an ambient of "
                      f"{ambient_periods} periods; rainbow-free plus G solitary with N(G) = R",
                      total, total, total, violations, time.perf_counter() - t0, {"cases": rows})
    return rep


# -- ambient existence search ------------------------------------------------

def extend_in_ambient(window, ambient_length: int, offset: int, require_bb: bool = True,
                      node_limit: int = 200_000) -> Optional[Coloring]:
    """A coloring of ``[0, ambient_length)`` containing ``window`` at ``offset``.

    It must be rainbow-free, with G solitary, every neighbour of G coloured R,
    and (with ``require_bb``) two adjacent B cells. Returns ``None`` when no
    such coloring exists; raises ``RuntimeError`` past ``node_limit``.
    """
    try:
        D0 = propagate_window(window, ambient_length, offset)
    except Contradiction:
        return None
    nodes = [0]

    def has_bb(D):
        return any(D[i] == BIT[B] and D[i + 1] == BIT[B] for i in range(len(D) - 1))

    def could_bb(D):
        return any(D[i] & BIT[B] and D[i + 1] & BIT[B] for i in range(len(D) - 1))

    def dfs(D):
        nodes[0] += 1
        if nodes[0] > node_limit:
            raise RuntimeError("ambient search budget exceeded")
        if require_bb and not could_bb(D):
            return None
        free = [i for i, m in enumerate(D) if not _single(m)]
        if not free:
            return D if (not require_bb or has_bb(D)) else None
        p = free[0]
        for col in (B, R, G):
            if D[p] & BIT[col]:
                trial = list(D)
                trial[p] = BIT[col]
                try:
                    trial = propagate(trial)
                except Contradiction:
                    continue
                out = dfs(trial)
                if out is not None:
                    return out
        return None

    D = dfs(D0)
    if D is None:
        return None
    return Coloring(tuple(_color(m) for m in D), 0)
