"""G-G intervals: the doubling constraint system and its solutions.

An interval ``[0, k-1]`` with ``c(0) = c(k) = G`` and no G inside must obey
``c(x) = c(2x)`` for ``0 < x < k/2`` (progression ``0, x, 2x``) and
``c(2x-k) = c(x)`` for ``k/2 < x < k`` (progression ``2x-k, x, k``), and
``c(1) = c(k-1) = R`` since G has only R neighbours. The equalities split
the interior into classes; a class touching 1 or ``k-1`` is R, the others
are free over ``{R, B}``.

Free classes are printed as ``x``, ``y``, ``z``, ... in order of first
appearance. When B is required and only one class is free, that class must
be B and is printed as such.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .report import LemmaReport

WILDCARDS = "xyzuvw"
TABLE_LENGTHS = range(4, 22)


@dataclass(frozen=True)
class GGConstraintSystem:
    k: int
    forced: dict = field(hash=False)
    equalities: tuple

    @classmethod
    def build(cls, k: int) -> "GGConstraintSystem":
        if k < 2:
            raise ValueError("a G-G interval has length at least 2")
        forced = {0: "G", 1: "R", k - 1: "R"}
        eq = []
        for x in range(1, k):
            if 2 * x < k:
                eq.append((x, 2 * x))
            elif 2 * x > k:
                eq.append((x, 2 * x - k))
        return cls(k, forced, tuple(eq))

    def classes(self) -> list:
        """Interior positions grouped by the equalities, ordered by least member."""
        parent = list(range(self.k))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in self.equalities:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups = {}
        for p in range(1, self.k):
            groups.setdefault(find(p), []).append(p)
        return sorted(groups.values())

    def free_classes(self) -> list:
        return [g for g in self.classes() if not any(p in self.forced for p in g)]

    def violations(self, tokens) -> list:
        """Raw constraints broken by a concrete row of ``G``/``R``/``B`` tokens."""
        bad = [("forced", p) for p, col in self.forced.items() if tokens[p] != col]
        bad += [("interior", p) for p in range(1, self.k) if tokens[p] == "G"]
        bad += [("equal", a, b) for a, b in self.equalities if tokens[a] != tokens[b]]
        return bad


@dataclass(frozen=True)
class WildcardRow:
    k: int
    tokens: tuple

    @property
    def symbols(self) -> list:
        seen = []
        for t in self.tokens:
            if t.islower() and t not in seen:
                seen.append(t)
        return seen

    def concretizations(self) -> list:
        out = []
        syms = self.symbols
        for values in itertools.product("RB", repeat=len(syms)):
            env = dict(zip(syms, values))
            out.append(tuple(env.get(t, t) for t in self.tokens))
        return out

    def with_b(self) -> list:
        return [row for row in self.concretizations() if "B" in row]

    def __str__(self):
        return " ".join(self.tokens)


def derive_gg_colorings(k: int, require_B: bool = True) -> list:
    """Solutions of the constraint system for length ``k`` in wildcard form.

    Returns ``[]`` or a single :class:`WildcardRow`.
    """
    if not 4 <= k <= 30:
        raise ValueError("derivation covers 4 <= k <= 30")
    system = GGConstraintSystem.build(k)
    free = system.free_classes()
    if require_B and not free:
        return []
    if len(free) > len(WILDCARDS):
        raise ValueError("too many free classes to name")
    tokens = ["R"] * k
    tokens[0] = "G"
    if require_B and len(free) == 1:
        for p in free[0]:
            tokens[p] = "B"
    else:
        for name, group in zip(WILDCARDS, free):
            for p in group:
                tokens[p] = name
    return [WildcardRow(k, tuple(tokens))]


def load_table1(text: Optional[str] = None) -> dict:
    """Golden rows keyed by length; lengths absent from the file map to nothing."""
    if text is None:
        text = resources.files("rainbowap").joinpath("data/table1.txt").read_text()
    rows = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        k, *tokens = line.split()
        k = int(k)
        if len(tokens) != k:
            raise ValueError(f"row {k} has {len(tokens)} tokens")
        rows[k] = WildcardRow(k, tuple(tokens))
    return rows


def check_table1(lengths=TABLE_LENGTHS, golden: Optional[dict] = None,
                 ambient: Optional[int] = None) -> LemmaReport:
    """Compare the derived rows with the golden table, length by length.

    Beyond exact equality each length records whether the golden
    concretizations lie inside the derived ones. With ``ambient`` set, every
    derived B-containing concretization is also tested for extension to a
    standing-hypothesis coloring of an ambient of that length.
    """
    t0 = time.perf_counter()
    golden = load_table1() if golden is None else golden
    lengths = list(lengths)
    per_k = {}
    violations = []
    for k in lengths:
        derived = derive_gg_colorings(k, require_B=True)
        d_str = [str(r) for r in derived]
        g_str = [str(golden[k])] if k in golden else []
        d_conc = {row for r in derived for row in r.with_b()}
        g_conc = {row for row in golden[k].with_b()} if k in golden else set()
        rec = {
            "derived": d_str,
            "golden": g_str,
            "match": d_str == g_str,
            "golden_inside_derived": g_conc <= d_conc,
            "derived_count": len(d_conc),
            "golden_count": len(g_conc),
        }
        for r in derived:
            closed = all(not GGConstraintSystem.build(k).violations(row) for row in r.concretizations())
            rec["closed_under_constraints"] = closed
        if ambient is not None and d_conc:
            rec["extends"] = _ambient_report(k, sorted(d_conc), ambient)
        per_k[k] = rec
        if not rec["match"]:
            violations.append({"k": k, "derived": d_str, "golden": g_str})
    return LemmaReport("table1", f"G-G interval lengths {lengths[0]}..{lengths[-1]} against the golden rows",
                       len(lengths), len(lengths), sum(1 for k in lengths if k in golden),
                       violations, time.perf_counter() - t0, {"per_length": per_k})


def _ambient_report(k, rows, length):
    from .patterns import extend_in_ambient

    code = {"R": 0, "G": 1, "B": 2}
    out = {}
    for row in rows:
        window = tuple(code[t] for t in row) + (1,)
        hit = None
        for off in range(length - k):
            try:
                c = extend_in_ambient(window, length, off)
            except RuntimeError:
                hit = "budget"
                break
            if c is not None:
                hit = off
                break
        out["".join(row)] = hit
    return out
