"""Exhaustive small-n checks of the structural lemmas.

Every sweep walks the raw universe of 3^n assignments ``[1, n] -> {R, G, B}``
for each ``n`` in range, keeps the rainbow-free ones, and applies the
lemma's hypotheses and conclusion as plain predicates on the survivors.
The universe is cut into ``3^p`` prefix blocks that are enumerated
independently and concatenated in prefix order.

Colour names follow the lemma statements: ``G`` is the solitary colour,
``R`` the colour of its neighbours and ``B`` the remaining one. Since the raw
universe contains every relabelling, fixing the names loses nothing.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from math import comb

from .. import kernels
from ..core import B, G, R, Coloring, as_coloring, decompose, find_rainbow_ap3
from .report import LemmaReport

MAX_SWEEP_N = 14
PREFIX_DEPTH = 2

_width = 1


def set_parallel_width(width: int) -> None:
    global _width
    if width < 1:
        raise ValueError("width must be at least 1")
    _width = width


@lru_cache(maxsize=32)
def _universe(n, prune, backend):
    p = min(n, PREFIX_DEPTH)
    prefixes = list(itertools.product(range(3), repeat=p))

    def block(prefix):
        return kernels.rainbow_free_colorings(n, 3, prefix, prune)

    if _width > 1:
        with ThreadPoolExecutor(max_workers=_width) as pool:
            blocks = list(pool.map(block, prefixes))
    else:
        blocks = [block(x) for x in prefixes]
    survivors = []
    checked = 0
    for cols, count in blocks:
        survivors.extend(cols)
        checked += count
    return tuple(survivors), checked


def rainbow_free_3colorings(n: int, prune: bool = False):
    """``(survivors, instances)`` for ``[n]``: all rainbow-free maps into 3 colours.

    ``prune`` grows assignments left to right and drops rainbow prefixes; the
    survivors are identical, only the route differs.
    """
    if not 1 <= n <= MAX_SWEEP_N:
        raise ValueError(f"sweeps cover 1 <= n <= {MAX_SWEEP_N}")
    return _universe(n, bool(prune), kernels.BACKEND)


# -- predicates on plain tuples (0-based) ------------------------------------

def _solitary(c, x):
    return not any(c[i] == x and c[i + 1] == x for i in range(len(c) - 1))


def _neighbors(c, x):
    n = len(c)
    return [i for i in range(n) if (i + 1 < n and c[i + 1] == x) or (i > 0 and c[i - 1] == x)]


def _has_pair(c, color, lo=0, hi=None):
    """Pair ``color color`` with both cells in ``[lo, hi]`` (0-based, inclusive)."""
    hi = len(c) - 1 if hi is None else hi
    return any(c[i] == color and c[i + 1] == color for i in range(lo, hi))


def _contains(c, pat):
    k = len(pat)
    return any(c[i:i + k] == pat for i in range(len(c) - k + 1))


def _surjective(c):
    return len(set(c)) == 3


def _standing(c):
    """G solitary and every neighbour of G coloured R."""
    return _solitary(c, G) and all(c[i] == R for i in _neighbors(c, G))


def _gg_gaps(c):
    g = [i for i, v in enumerate(c) if v == G]
    return list(zip(g, g[1:]))


# -- single-instance diagnostics ----------------------------------------------

def solitary_colors(c) -> list:
    c = as_coloring(c).colors
    return [x for x in sorted(set(c)) if _solitary(c, x)]


def neighbor_solitary_instance(c) -> dict:
    col = as_coloring(c)
    c = col.colors
    rec = {
        "rainbow_free": find_rainbow_ap3(col) is None,
        "g_solitary": G in c and _solitary(c, G),
        "g_count": c.count(G),
        "neighbor_colors": sorted({c[i] for i in _neighbors(c, G)}),
    }
    rec["hypothesis"] = rec["rainbow_free"] and rec["g_solitary"] and rec["g_count"] >= 3
    rec["holds"] = not rec["hypothesis"] or len(rec["neighbor_colors"]) <= 1
    return rec


def grg_instance(c) -> dict:
    col = as_coloring(c)
    c = col.colors
    rec = {
        "rainbow_free": find_rainbow_ap3(col) is None,
        "standing": G in c and _standing(c),
        "has_BB": _has_pair(c, B),
    }
    rec["hypothesis"] = rec["rainbow_free"] and rec["standing"] and rec["has_BB"]
    rec["parts"] = _grg_parts(c)
    rec["holds"] = not rec["hypothesis"] or all(rec["parts"].values())
    return rec


def _grg_parts(c):
    n = len(c)
    gb = (G, B)
    return {
        "a": all(not (c[i] in gb and c[i + 1] in gb) or c[i] == c[i + 1] == B for i in range(n - 1)),
        "b": not _contains(c, (G, R, G)),
        "c": not _contains(c, (G, R, R, G)),
        "d": all(not (c[i] in gb and c[i + 2] in gb) or c[i] == c[i + 2] == B for i in range(n - 2)),
    }


def bb_instance(c) -> list:
    """Pairs ``(x, y)`` of G positions (1-based) with BB outside but not between."""
    c = as_coloring(c).colors
    n = len(c)
    g = [i for i, v in enumerate(c) if v == G]
    bad = []
    for x, y in itertools.combinations(g, 2):
        if _has_pair(c, B, 0, x) and _has_pair(c, B, y, n - 1) and not _has_pair(c, B, x, y):
            bad.append((x + 1, y + 1))
    return bad


def bbrr_instance(c) -> list:
    """Violating ``(x, z)`` (1-based) for the adjacency lemma, empty if it holds."""
    c = as_coloring(c).colors
    n = len(c)
    bad = []
    for x in range(n - 1):
        X = c[x]
        if c[x + 1] != X:
            continue
        for z in range(x + 1, n - 1):
            Z = c[z]
            if Z == X or c[z + 1] != Z:
                continue
            if not any({c[w], c[w + 1]} == {X, Z} for w in range(x + 1, z)):
                bad.append((x + 1, z + 1))
    return bad


def interval_instance(c) -> dict:
    """Quantities of the interval inequalities for one coloring, or ``{}``."""
    col = as_coloring(c)
    sp = decompose(col, G).special
    if sp is None or sp.neighbor != R:
        return {}
    cs = col.colors

    def count(iv, color):
        return sum(1 for p in iv if col[p] == color)

    I23 = range(sp.I2.lo, sp.I3.hi + 1)
    rec = {
        "l": sp.l,
        "b": sp.b,
        "len_I1": len(sp.I1),
        "len_I2": len(sp.I2),
        "len_I3": len(sp.I3),
        "r_I1": count(sp.I1, R),
        "r_I2p": count(sp.I2p, R),
        "r_I3": count(sp.I3, R),
        "g_I1": count(sp.I1, G),
        "g_I23": sum(1 for p in I23 if col[p] == G),
        "I2p_inside_I2": sp.I2p.lo >= sp.I2.lo and sp.I2p.hi <= sp.I2.hi,
    }
    rec["I1_holds"] = (rec["len_I1"] <= rec["len_I2"] + 1 and rec["r_I2p"] >= rec["r_I1"]
                       and rec["I2p_inside_I2"])
    rec["I3_applies"] = rec["g_I1"] >= 3
    rec["I3_holds"] = not rec["I3_applies"] or (
        rec["g_I23"] <= 2 and 4 * rec["r_I3"] >= rec["len_I3"] - 3)
    rec["has_gg_without_BB"] = any(not _has_pair(cs, B, x, y) for x, y in _gg_gaps(cs))
    return rec


# -- sweep driver ---------------------------------------------------------------

def _sweep(lemma_id, description, max_n, min_n, prune, body, max_allowed=MAX_SWEEP_N):
    if not 1 <= min_n <= max_n <= max_allowed:
        raise ValueError(f"need 1 <= min_n <= max_n <= {max_allowed}")
    t0 = time.perf_counter()
    rep = LemmaReport(lemma_id, description, sum(3 ** n for n in range(min_n, max_n + 1)))
    per_n = {}
    for n in range(min_n, max_n + 1):
        survivors, checked = rainbow_free_3colorings(n, prune)
        rep.instances_checked += checked
        hyp = 0
        for c in survivors:
            verdict = body(c)
            if verdict is None:
                continue
            hyp += 1
            if verdict is not True:
                rep.violations.append({"n": n, "coloring": str(Coloring(c)), "detail": verdict})
        rep.hypothesis_count += hyp
        per_n[n] = {"rainbow_free": len(survivors), "hypothesis": hyp}
    rep.notes["per_n"] = per_n
    rep.runtime = time.perf_counter() - t0
    return rep


_UNIVERSE = "all maps [1,n] -> {{R,G,B}}, n in {lo}..{hi}; "


def check_solitary(max_n: int, min_n: int = 1, prune: bool = False) -> LemmaReport:
    """Every surjective rainbow-free 3-coloring has a colour with no two adjacent cells."""
    def body(c):
        if not _surjective(c):
            return None
        return True if any(_solitary(c, x) for x in range(3)) else "no solitary colour"

    return _sweep("solitary", _UNIVERSE.format(lo=min_n, hi=max_n) + "hypothesis: rainbow-free, 3 colours used",
                  max_n, min_n, prune, body)


def check_neighbor_solitary(max_n: int, min_n: int = 1, prune: bool = False) -> LemmaReport:
    def body(c):
        if not _surjective(c) or not _solitary(c, G) or c.count(G) < 3:
            return None
        cols = {c[i] for i in _neighbors(c, G)}
        return True if len(cols) == 1 else "neighbour set of G not monochromatic"

    return _sweep("neighbor_solitary",
                  _UNIVERSE.format(lo=min_n, hi=max_n)
                  + "hypothesis: rainbow-free, 3 colours used, G solitary, at least three G",
                  max_n, min_n, prune, body)


def check_grg(max_n: int, min_n: int = 1, prune: bool = False) -> LemmaReport:
    """Parts (a)-(d) under the standing hypotheses; (a) again without the BB requirement."""
    extra = {"a_without_BB": 0, "a_without_BB_violations": []}

    def body(c):
        if not _surjective(c) or not _standing(c):
            return None
        parts = _grg_parts(c)
        if not _has_pair(c, B):
            extra["a_without_BB"] += 1
            if not parts["a"]:
                extra["a_without_BB_violations"].append(str(Coloring(c)))
            return None
        bad = [k for k, ok in parts.items() if not ok]
        return True if not bad else "parts failing: " + ",".join(bad)

    rep = _sweep("grg", _UNIVERSE.format(lo=min_n, hi=max_n)
                 + "hypothesis: rainbow-free, 3 colours used, G solitary, N(G) all R, BB present",
                 max_n, min_n, prune, body)
    rep.notes["part_a_without_BB"] = {"checked": extra["a_without_BB"],
                                      "violations": extra["a_without_BB_violations"]}
    for v in extra["a_without_BB_violations"]:
        rep.violations.append({"coloring": v, "detail": "part a fails without BB"})
    return rep


def check_bb_lemma(max_n: int, min_n: int = 1, prune: bool = False) -> LemmaReport:
    def body(c):
        if not _surjective(c) or not _standing(c) or not _has_pair(c, B):
            return None
        bad = bb_instance(c)
        return True if not bad else f"G pairs without BB between: {bad}"

    return _sweep("bb", _UNIVERSE.format(lo=min_n, hi=max_n)
                  + "hypothesis: rainbow-free, 3 colours used, G solitary, N(G) all R, BB present",
                  max_n, min_n, prune, body)


def check_bbrr(max_n: int, min_n: int = 1, prune: bool = False) -> LemmaReport:
    def body(c):
        # Colorings without two distinct monochromatic pairs pass vacuously.
        pair_colors = {c[i] for i in range(len(c) - 1) if c[i] == c[i + 1]}
        if len(pair_colors) < 2:
            return None
        bad = bbrr_instance(c)
        return True if not bad else f"no mixed adjacency between {bad}"

    return _sweep("bbrr", _UNIVERSE.format(lo=min_n, hi=max_n)
                  + "hypothesis: rainbow-free, monochromatic pairs of two different colours",
                  max_n, min_n, prune, body)


def check_interval_lemmas(max_n: int, min_n: int = 1, prune: bool = False) -> LemmaReport:
    """Both interval inequalities under the Case 2 structure.

    The structure is rare at small ``n`` (the first instance is at ``n = 14``),
    so the same inequalities are also tallied, in ``notes`` only, over the
    colorings that miss just the "G-G interval without BB" condition.
    """
    wider = {"checked": 0, "I3_applies": 0, "violations": []}

    def body(c):
        if not _surjective(c) or not _standing(c) or not _has_pair(c, B):
            return None
        rec = interval_instance(c)
        if not rec:
            return None
        ok = rec["I1_holds"] and rec["I3_holds"]
        if not rec["has_gg_without_BB"]:
            wider["checked"] += 1
            wider["I3_applies"] += rec["I3_applies"]
            if not ok:
                wider["violations"].append(str(Coloring(c)))
            return None
        if ok:
            return True
        return {k: v for k, v in rec.items() if not isinstance(v, bool) or k.endswith("holds")}

    rep = _sweep("intervals", _UNIVERSE.format(lo=min_n, hi=max_n)
                 + "hypothesis: rainbow-free, 3 colours used, G solitary, N(G) all R, BB present, "
                 "a G-G interval without BB, a G before the first BB",
                 max_n, min_n, prune, body)
    rep.notes["vacuous"] = rep.hypothesis_count == 0
    rep.notes["without_gg_condition"] = wider
    return rep


def _af_hypothesis_count(n):
    """Number of maps ``[n] -> 3 colours`` whose classes all exceed ``(n+4)/6``."""
    total = 0
    for a in range(n + 1):
        for b in range(n - a + 1):
            sizes = (a, b, n - a - b)
            if all(6 * s > n + 4 for s in sizes):
                total += comb(n, a) * comb(n - a, b)
    return total


def check_af_theorem(max_n: int, min_n: int = 1, prune: bool = False) -> LemmaReport:
    """Large classes force a rainbow progression; tightness at ``n = 6k-4`` is reported."""
    if max_n > 13:
        raise ValueError("the theorem sweep is capped at n = 13")

    def body(c):
        n = len(c)
        sizes = [c.count(x) for x in range(3)]
        if all(6 * s > n + 4 for s in sizes):
            return "rainbow-free with every class larger than (n+4)/6"
        return None

    rep = _sweep("af", _UNIVERSE.format(lo=min_n, hi=max_n)
                 + "hypothesis: every class larger than (n+4)/6", max_n, min_n, prune, body, 13)
    # Survivors only see rainbow-free maps; the hypothesis count is over the raw universe.
    rep.hypothesis_count = sum(_af_hypothesis_count(n) for n in range(min_n, max_n + 1))
    tight = {}
    for n in range(min_n, max_n + 1):
        if (n + 4) % 6:
            continue
        k = (n + 4) // 6
        survivors, _ = rainbow_free_3colorings(n, prune)
        hit = next((c for c in survivors if min(c.count(x) for x in range(3)) == k), None)
        tight[n] = {"k": k, "exists": hit is not None, "example": None if hit is None else str(Coloring(hit))}
    rep.notes["min_class_k_at_6k_minus_4"] = tight
    return rep
