"""Exact search for bounded rainbow-free colorings of ``[n]``.

``feasible`` decides whether some coloring of ``[n]`` has every class of size
at most ``k`` and no rainbow 3-term progression. ``f(n)`` is the least such
``k`` and ``sr3(k)`` the largest ``n`` with ``f(n) <= k``.

The engine assigns positions left to right, trying existing classes by id
and then one fresh class, so every coloring is visited once in canonical
(restricted growth) form. The tree is cut at a fixed depth into independent
subtrees; results are merged in canonical order, which makes the witness,
the enumeration and the node count independent of the worker count.
"""
from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import kernels
from .constructions import C0_PATTERN, Q, extremal_witness
from .core import Coloring, canonicalize, census, find_rainbow_ap3

ENGINE_VERSION = "1"
BRUTE_FORCE_CEILING = 14
DEFAULT_SPLIT_DEPTH = 6

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
BUDGET_EXCEEDED = "budget_exceeded"


class SearchIntegrityError(AssertionError):
    """The engine produced a witness that fails the independent re-check."""


class MonotonicityError(AssertionError):
    pass


class OracleRefusal(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    max_colors: Optional[int] = None
    node_limit: Optional[int] = None
    parallel_width: int = 1
    enumerate_all: bool = False
    quotient_reversal: bool = False
    split_depth: int = DEFAULT_SPLIT_DEPTH

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.max_colors is not None and self.max_colors < 1:
            raise ValueError("max_colors must be at least 1")
        if self.parallel_width < 1:
            raise ValueError("parallel_width must be at least 1")

    @property
    def colors_cap(self) -> int:
        return self.n if self.max_colors is None else min(self.max_colors, self.n)


@dataclass
class SearchOutcome:
    status: str
    witness: Optional[Coloring] = None
    witnesses: Optional[list] = None
    witness_count: Optional[int] = None
    nodes_explored: int = 0
    wall_time: float = 0.0

    @property
    def feasible(self) -> Optional[bool]:
        """``True``/``False`` verdict, ``None`` when the budget ran out."""
        if self.status == BUDGET_EXCEEDED:
            return None
        return self.status == FEASIBLE


def check_witness(c: Coloring, k: int) -> None:
    if find_rainbow_ap3(c) is not None:
        raise SearchIntegrityError(f"witness {c} contains a rainbow AP(3)")
    if census(c).largest > k:
        raise SearchIntegrityError(f"witness {c} has a class larger than {k}")


def _reversal_rep(colors) -> bool:
    return colors <= canonicalize(Coloring(colors[::-1])).colors


def feasible(cfg: SearchConfig) -> SearchOutcome:
    t0 = time.perf_counter()
    n, k, cap = cfg.n, cfg.k, cfg.colors_cap
    if -(-n // k) > cap:
        # cap colors of size <= k cannot cover [n]
        out = SearchOutcome(INFEASIBLE, witnesses=[] if cfg.enumerate_all else None,
                            witness_count=0 if cfg.enumerate_all else None, nodes_explored=1)
        out.wall_time = time.perf_counter() - t0
        return out

    depth = min(cfg.split_depth, n)
    _, prefixes, nodes0 = kernels.search(depth, k, cap, (), 0, True)

    def run(prefix):
        return kernels.search(n, k, cap, prefix, cfg.node_limit, cfg.enumerate_all)

    results = []
    if cfg.parallel_width == 1:
        # Sequential order is the canonical order; stop once decided.
        spent = nodes0
        for prefix in prefixes:
            res = run(prefix)
            results.append(res)
            spent += res[2] - 1
            if cfg.node_limit and spent > cfg.node_limit:
                break
            if not cfg.enumerate_all and res[0] != kernels.EXHAUSTED:
                break
    else:
        with ThreadPoolExecutor(max_workers=cfg.parallel_width) as pool:
            results = list(pool.map(run, prefixes))

    nodes = nodes0
    leaves = []
    status, witness = INFEASIBLE, None
    for code, payload, used in results:
        # Subtree roots were already counted by the prefix pass.
        nodes += used - 1
        if cfg.node_limit and nodes > cfg.node_limit or code == kernels.BUDGET:
            status = BUDGET_EXCEEDED
            break
        if cfg.enumerate_all:
            leaves.extend(payload)
            continue
        if code == kernels.FOUND:
            status, witness = FEASIBLE, Coloring(payload)
            break

    out = SearchOutcome(status, nodes_explored=nodes)
    if cfg.enumerate_all:
        if cfg.quotient_reversal:
            leaves = [x for x in leaves if _reversal_rep(x)]
        out.witnesses = [Coloring(x) for x in leaves]
        out.witness_count = len(leaves)
        if status != BUDGET_EXCEEDED:
            out.status = FEASIBLE if leaves else INFEASIBLE
        if out.witnesses:
            out.witness = out.witnesses[0]
        for w in out.witnesses:
            check_witness(w, k)
    elif witness is not None:
        check_witness(witness, k)
        out.witness = witness
    out.wall_time = time.perf_counter() - t0
    return out


@dataclass
class FResult:
    n: int
    value: Optional[int]
    lower: int
    upper: int
    witness: Optional[Coloring]
    nodes_explored: int = 0
    q_formula: int = 0
    q_scan: int = 0
    from_cache: bool = False

    @property
    def complete(self) -> bool:
        return self.value is not None

    @property
    def gap(self) -> Optional[int]:
        return None if self.value is None else self.q_scan - self.value

    def row(self) -> dict:
        return {
            "n": self.n,
            "f": self.value,
            "Q_formula": self.q_formula,
            "Q_scan": self.q_scan,
            "witness": "" if self.witness is None else self.witness.to_text().strip(),
            "gap": self.gap,
            "lower": self.lower,
            "upper": self.upper,
            "complete": self.complete,
        }


def f(n: int, *, paranoid: bool = False, node_limit: Optional[int] = None,
      parallel_width: int = 1, max_colors: Optional[int] = None,
      cache: Optional["FCache"] = None) -> FResult:
    """Smallest ``k`` admitting a k-bounded rainbow-free coloring of ``[n]``.

    The scan starts at ``max(1, Q(n) - 4)`` (or at 1 when ``paranoid``) and
    never needs to search ``k = Q(n)``, which a window of ``c0`` certifies.
    """
    if cache is not None:
        hit = cache.get(n, paranoid)
        if hit is not None:
            return hit
    q = Q(n)
    lo = 1 if paranoid else max(1, q.scan_value - 4)
    nodes = 0
    for k in range(lo, q.scan_value):
        out = feasible(SearchConfig(n, k, max_colors=max_colors, node_limit=node_limit,
                                    parallel_width=parallel_width))
        nodes += out.nodes_explored
        if out.status == BUDGET_EXCEEDED:
            return FResult(n, None, k, q.scan_value, canonicalize(extremal_witness(n)),
                           nodes, q.formula_value, q.scan_value)
        if out.status == FEASIBLE:
            res = FResult(n, k, k, k, out.witness, nodes, q.formula_value, q.scan_value)
            break
    else:
        witness = canonicalize(extremal_witness(n))
        check_witness(witness, q.scan_value)
        res = FResult(n, q.scan_value, q.scan_value, q.scan_value, witness, nodes,
                      q.formula_value, q.scan_value)
    if cache is not None:
        cache.put(res, paranoid)
    return res


def f_table(n_max: int, n_min: int = 1, **kwargs) -> list:
    """``f`` for ``n_min..n_max``; raises :class:`MonotonicityError` on a decrease."""
    rows = [f(n, **kwargs) for n in range(n_min, n_max + 1)]
    assert_monotone(rows)
    return rows


def assert_monotone(rows) -> None:
    done = [r for r in rows if r.complete]
    for a, b in zip(done, done[1:]):
        if b.n == a.n + 1 and b.value < a.value:
            raise MonotonicityError(f"f({b.n})={b.value} < f({a.n})={a.value}")


@dataclass
class SrResult:
    k: int
    value: Optional[int]
    f_at_value: Optional[int]
    f_at_next: Optional[int]
    table: list = field(default_factory=list)
    bracket: Optional[tuple] = None

    @property
    def complete(self) -> bool:
        return self.value is not None

    def within_bounds(self) -> bool:
        # 17k/8 - 4 <= sr <= 17k/8 + 10, cleared of fractions
        return 17 * self.k - 32 <= 8 * self.value <= 17 * self.k + 80


def sr3(k: int, **kwargs) -> SrResult:
    """Largest ``n`` with ``f(n) <= k``, scanning ``n`` upward."""
    if k < 1:
        raise ValueError("k must be positive")
    table = []
    n = 1
    while True:
        res = f(n, **kwargs)
        table.append(res)
        assert_monotone(table)
        if not res.complete:
            if res.lower > k:
                break
            # f(n) is bracketed; sr3(k) is undetermined from here on.
            return SrResult(k, None, None, None, table, bracket=(n - 1, None))
        if res.value > k:
            break
        n += 1
    last = table[-1]
    prev = table[-2] if len(table) > 1 else None
    return SrResult(k, n - 1, prev.value if prev else None, last.value, table)


# -- independent oracle ------------------------------------------------------

def _has_rainbow_ending(a, i):
    zi = a[i]
    for d in range(1, i // 2 + 1):
        if len({a[i - 2 * d], a[i - d], zi}) == 3:
            return True
    return False


def _has_rainbow(a):
    return any(_has_rainbow_ending(a, i) for i in range(2, len(a)))


def rainbow_free_partitions(n: int, cutoff: bool = True):
    """Yield rainbow-free restricted growth strings of length ``n``.

    With ``cutoff`` a prefix that already holds a rainbow triple is not
    extended; without it every one of the Bell(n) strings is generated and
    tested whole.
    """
    if n == 0:
        yield ()
        return
    a = [0] * n
    top = [0] * n  # top[i] = max(a[:i+1])
    i = 1
    if n == 1:
        yield (0,)
        return
    a[1] = -1
    while i > 0:
        a[i] += 1
        if a[i] > top[i - 1] + 1:
            a[i] = 0
            i -= 1
            continue
        top[i] = max(top[i - 1], a[i])
        if cutoff and _has_rainbow_ending(a, i):
            continue
        if i == n - 1:
            if cutoff or not _has_rainbow(a):
                yield tuple(a)
            continue
        i += 1
        a[i] = -1


def _max_block(a):
    counts = {}
    for x in a:
        counts[x] = counts.get(x, 0) + 1
    return max(counts.values())


def brute_force_f(n: int, cutoff: bool = True) -> int:
    """``f(n)`` by exhaustive enumeration of set partitions of ``[n]``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > BRUTE_FORCE_CEILING:
        raise OracleRefusal(f"brute force refuses n={n} > {BRUTE_FORCE_CEILING}")
    return min(_max_block(a) for a in rainbow_free_partitions(n, cutoff))


def brute_force_extremal(n: int) -> list:
    if n > BRUTE_FORCE_CEILING:
        raise OracleRefusal(f"brute force refuses n={n} > {BRUTE_FORCE_CEILING}")
    parts = list(rainbow_free_partitions(n))
    best = min(_max_block(a) for a in parts)
    return [Coloring(a) for a in parts if _max_block(a) == best]


# -- extremal colorings --------------------------------------------------------

def _c0_window_forms(n):
    return {canonicalize(C0_PATTERN.coloring(s, s + n - 1)).colors for s in range(17)}


@dataclass
class ExtremalEnumeration:
    n: int
    f: int
    colorings: list
    complete: bool
    c0_windows: list  # parallel flags: coloring is a relabelled c0 window

    @property
    def count(self):
        return len(self.colorings)


def enumerate_extremal(n: int, *, quotient_reversal: bool = False,
                       node_limit: Optional[int] = None, parallel_width: int = 1,
                       f_value: Optional[int] = None) -> ExtremalEnumeration:
    """All canonical rainbow-free colorings of ``[n]`` with largest class ``f(n)``."""
    if f_value is None:
        res = f(n, node_limit=node_limit, parallel_width=parallel_width)
        if not res.complete:
            return ExtremalEnumeration(n, res.upper, [], False, [])
        f_value = res.value
    out = feasible(SearchConfig(n, f_value, node_limit=node_limit, parallel_width=parallel_width,
                                enumerate_all=True, quotient_reversal=quotient_reversal))
    forms = _c0_window_forms(n)
    cols = out.witnesses or []
    return ExtremalEnumeration(n, f_value, cols, out.status != BUDGET_EXCEEDED,
                               [c.colors in forms for c in cols])


# -- memo file -----------------------------------------------------------------

def _witness_from_text(text):
    from .core import parse_coloring

    return parse_coloring(text) if text else None


class FCache:
    """Append-only JSON-lines memo of ``f`` values keyed by ``n``.

    Records carry the engine version; records from another version are
    ignored, so they get recomputed and appended again.
    """

    def __init__(self, path):
        self.path = Path(path)
        self._rows = {}
        if self.path.exists():
            with self.path.open() as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = json.loads(line)
                    except json.JSONDecodeError:
                        continue
                    if rec.get("engine") != ENGINE_VERSION or rec.get("f") is None:
                        continue
                    self._rows[(rec["n"], bool(rec.get("paranoid", False)))] = rec

    def get(self, n: int, paranoid: bool = False) -> Optional[FResult]:
        rec = self._rows.get((n, paranoid)) or (None if paranoid else self._rows.get((n, True)))
        if rec is None:
            return None
        return FResult(n, rec["f"], rec["f"], rec["f"], _witness_from_text(rec["witness"]), 0,
                       rec["Q_formula"], rec["Q_scan"], from_cache=True)

    def put(self, res: FResult, paranoid: bool = False) -> None:
        if not res.complete:
            return
        rec = res.row()
        rec.update(engine=ENGINE_VERSION, paranoid=paranoid, nodes=res.nodes_explored)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self._rows[(res.n, paranoid)] = rec

    def __contains__(self, n):
        return (n, False) in self._rows or (n, True) in self._rows


def default_cache_path() -> Optional[Path]:
    root = os.environ.get("RAINBOWAP_CACHE_DIR")
    return Path(root) / "f_values.jsonl" if root else None


ROW_FIELDS = ["n", "f", "Q_formula", "Q_scan", "witness", "gap", "lower", "upper", "complete"]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=ROW_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({key: r.get(key) for key in ROW_FIELDS})
    return buf.getvalue()
