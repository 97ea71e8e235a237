"""Merge the classes of a bounded rainbow-free coloring down to three.

Merging classes never creates a rainbow progression, so the only question
is the class sizes. Write ``t = (n + 4) / 6``. With two classes larger than
``t`` the rest fits into one class of size at most ``t <= m``. The other two
cases are handled by greedy accumulation; for valid inputs they cannot
occur (the accumulated coloring would be a rainbow-free 3-coloring with all
classes larger than ``t``). Every candidate is checked against the
postconditions before it is returned.
"""
from __future__ import annotations

from fractions import Fraction

from ..core import Coloring, census, class_positions, find_rainbow_ap3


class PreconditionError(ValueError):
    """Raised with the violated inequality spelled out."""


class MergeError(RuntimeError):
    pass


def _check_pre(c, m):
    n = c.n
    if n < 21:
        raise PreconditionError(f"need n >= 21, got n = {n}")
    if not Fraction(n + 4, 6) <= m:
        raise PreconditionError(f"need (n+4)/6 <= m, got (n+4)/6 = {Fraction(n + 4, 6)} > m = {m}")
    if not m < Fraction(n - 4, 2):
        raise PreconditionError(f"need m < (n-4)/2, got m = {m} >= (n-4)/2 = {Fraction(n - 4, 2)}")
    big = census(c).largest
    if big > m:
        raise PreconditionError(f"need every class <= m, got a class of size {big} > m = {m}")
    if find_rainbow_ap3(c) is not None:
        raise PreconditionError("need a rainbow-free coloring, got one with a rainbow AP(3)")


def _from_groups(c, groups):
    color_of = {}
    for new, group in enumerate(groups):
        for old in group:
            color_of[old] = new
    return Coloring(tuple(color_of[x] for x in c.colors), c.start)


def _accumulate(classes, sizes, t):
    """Shortest prefix of ``classes`` whose total size exceeds ``t``."""
    taken, total = [], 0
    for x in classes:
        taken.append(x)
        total += sizes[x]
        if total > t:
            break
    return taken


def merge_plan(c: Coloring, m: int):
    """``(case, groups)`` where each group lists the input classes merged together."""
    _check_pre(c, m)
    pos = class_positions(c)
    sizes = {x: len(p) for x, p in pos.items()}
    # Decreasing size, ties by colour id.
    order = sorted(sizes, key=lambda x: (-sizes[x], x))
    t = Fraction(c.n + 4, 6)
    big = [x for x in order if sizes[x] > t]
    if len(big) >= 2:
        return "two_big", [[order[0]], [order[1]], order[2:]]
    if len(big) == 1:
        rest = order[1:]
        T = _accumulate(rest, sizes, t)
        return "one_big", [[order[0]], T, [x for x in rest if x not in T]]
    B1 = _accumulate(order, sizes, t)
    left = [x for x in order if x not in B1]
    B2 = _accumulate(left, sizes, t)
    return "greedy", [B1, B2, [x for x in left if x not in B2]]


def merge_to_three(c: Coloring, m: int) -> Coloring:
    """A rainbow-free 3-coloring whose classes are unions of ``c``'s and have size <= ``m``."""
    _check_pre(c, m)
    if len(set(c.colors)) == 3:
        return c
    case, groups = merge_plan(c, m)
    if any(not g for g in groups):
        raise MergeError(f"case {case}: an empty group; fewer than three classes available")
    out = _from_groups(c, groups)
    sizes = census(out)
    if sizes.largest > m:
        raise MergeError(f"case {case}: merged class of size {sizes.largest} exceeds m = {m}")
    if find_rainbow_ap3(out) is not None:
        raise MergeError(f"case {case}: merged coloring has a rainbow AP(3)")
    return out


def refined_witnesses(n_values=range(50, 151), splits=(1, 2, 3)):
    """Rainbow-free inputs with more than three classes.

    Each is an extremal ``c0`` window whose G class is split in two by the
    rank of its cells modulo ``s``. Any progression through two G cells of a
    ``c0`` window stays inside the G class, so splitting G in two keeps the
    coloring rainbow-free.
    """
    from ..constructions import extremal_witness
    from ..core import G

    for n in n_values:
        base = extremal_witness(n)
        g = [i for i, x in enumerate(base.colors) if x == G]
        for s in splits:
            cols = list(base.colors)
            for j, i in enumerate(g):
                if j % (s + 1) == s:
                    cols[i] = 3
            yield Coloring(tuple(cols), base.start)


def check_merging(n_values=range(50, 151)):
    """Run :func:`merge_to_three` on refined witnesses for every admissible ``m``."""
    import time

    from .report import LemmaReport

    t0 = time.perf_counter()
    cases = []
    for c in refined_witnesses(n_values):
        lo = census(c).largest
        for m in range(lo, -(-(c.n - 4) // 2)):
            cases.append((c, m))
    violations = []
    for c, m in cases:
        try:
            out = merge_to_three(c, m)
        except (MergeError, PreconditionError) as exc:
            violations.append({"coloring": str(c), "m": m, "detail": str(exc)})
            continue
        groups = {}
        for old, new in zip(c.colors, out.colors):
            groups.setdefault(old, set()).add(new)
        ok = (len(set(out.colors)) == 3 and census(out).largest <= m
              and find_rainbow_ap3(out) is None and all(len(v) == 1 for v in groups.values()))
        if not ok:
            violations.append({"coloring": str(c), "m": m, "detail": "postcondition failed"})
    return LemmaReport("merging", "refined extremal c0 windows, every m from the largest class to below (n-4)/2",
                       len(cases), len(cases), len(cases), violations, time.perf_counter() - t0,
                       {"n_values": list(n_values)})
