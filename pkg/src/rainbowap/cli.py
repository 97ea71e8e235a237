"""``rainbowap`` command line.

Exit codes: 0 success, 1 rainbow AP(3) found / lemma violated / oracle
mismatch, 2 usage or input error, 3 search budget exhausted. JSON output is
the stable machine format; text tables are for people and may change.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kernels
from .constructions import Q, c0, c15, ternary_valuation
from .core import RGB, FormatError, find_rainbow_ap3, parse_coloring
from .search import (
    FCache,
    assert_monotone,
    brute_force_f,
    default_cache_path,
    enumerate_extremal,
    f,
    rows_to_csv,
    sr3,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
ORACLE_MAX = 12


class UsageError(Exception):
    pass


def _global_options(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=("text", "json", "csv"), default=d if suppress else "text")
    parser.add_argument("--parallel", type=int, default=d if suppress else 1, metavar="W",
                        help="worker threads for search and sweeps")
    parser.add_argument("--node-limit", type=int, default=d, metavar="N",
                        help="node budget per search call")
    parser.add_argument("--cache", default=d, metavar="PATH",
                        help="f-value cache file (default: $RAINBOWAP_CACHE_DIR/f_values.jsonl)")
    parser.add_argument("--no-cache", action="store_true", default=d if suppress else False)
    parser.add_argument("--quiet", action="store_true", default=d if suppress else False)
    parser.add_argument("--backend", choices=("compiled", "python"), default=d)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    _global_options(common, suppress=True)
    p = argparse.ArgumentParser(prog="rainbowap", description=__doc__.splitlines()[0], allow_abbrev=False)
    _global_options(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="check a coloring file for rainbow AP(3)s")
    s.add_argument("path", help="coloring file, '-' for stdin")
    s.add_argument("--ap3", action="store_true", help="progression length 3 (the only one supported)")

    s = sub.add_parser("f", parents=[common], allow_abbrev=False, help="exact f(n)")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--range", type=int, nargs=2, metavar=("A", "B"))
    s.add_argument("--oracle", action="store_true", help=f"cross-check with brute force for n <= {ORACLE_MAX}")
    s.add_argument("--paranoid", action="store_true", help="scan k from 1 instead of Q(n)-4")

    s = sub.add_parser("sr", parents=[common], allow_abbrev=False, help="sr(3, k)")
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("q", parents=[common], allow_abbrev=False, help="Q(n) by formula and window scan")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--range", type=int, nargs=2, metavar=("A", "B"))

    s = sub.add_parser("construct", parents=[common], allow_abbrev=False, help="emit an explicit coloring")
    s.add_argument("--name", required=True, help="c0, c15 or ternary")
    s.add_argument("--lo", type=int, default=1)
    s.add_argument("--hi", type=int, required=True)
    s.add_argument("--zero", choices=tuple(RGB), default="G", help="colour of residue 0 for c15")
    s.add_argument("--check", action="store_true", help="also verify rainbow-freeness")
    s.add_argument("--out", help="write to a file instead of stdout")

    s = sub.add_parser("extremal", parents=[common], allow_abbrev=False, help="all extremal colorings of [n]")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--quotient-reversal", action="store_true")

    s = sub.add_parser("lemmas", parents=[common], allow_abbrev=False, help="run lemma suites")
    s.add_argument("--suite", required=True)
    s.add_argument("--max-n", type=int, default=12)
    s.add_argument("--prune", action="store_true", help="enumerate by pruned growth instead of raw 3^n")
    s.add_argument("--ambient", type=int, default=None, help="table1: ambient length for the extension test")

    s = sub.add_parser("export", parents=[common], allow_abbrev=False, help="export f rows as JSON or CSV")
    s.add_argument("--range", type=int, nargs=2, metavar=("A", "B"), required=True)
    s.add_argument("--out", required=True)
    return p


# -- output helpers ------------------------------------------------------------

class Out:
    def __init__(self, args):
        self.fmt = args.format
        self.quiet = args.quiet

    def emit(self, text):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")

    def json(self, obj):
        self.emit(json.dumps(obj, sort_keys=True))

    def note(self, text):
        if not self.quiet:
            sys.stderr.write(text + "\n")


def _table(rows, cols):
    widths = [max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in cols]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    for r in rows:
        lines.append("  ".join(str(r.get(c, "")).rjust(w) for c, w in zip(cols, widths)))
    return "\n".join(lines)


def _cache(args):
    if args.no_cache:
        return None
    path = getattr(args, "cache", None) or default_cache_path()
    return FCache(path) if path else None


def _search_kwargs(args):
    return {"node_limit": args.node_limit, "parallel_width": args.parallel}


def _positive(name, value, low=1):
    if value is None or value < low:
        raise UsageError(f"{name} must be >= {low}")


# -- subcommands -------------------------------------------------------------

def cmd_verify(args, out):
    try:
        text = sys.stdin.read() if args.path == "-" else Path(args.path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    c = parse_coloring(text)
    hit = find_rainbow_ap3(c)
    if out.fmt == "json":
        out.json({"n": c.n, "start": c.start, "rainbow_free": hit is None,
                  "witness": None if hit is None else {"a": hit.a, "d": hit.d, "terms": list(hit.terms)}})
    elif hit is None:
        out.emit("none")
    else:
        out.emit(f"rainbow AP(3) a={hit.a} d={hit.d} terms={' '.join(map(str, hit.terms))}")
    return EXIT_OK if hit is None else EXIT_NEGATIVE


def _n_values(args):
    if args.n is not None:
        _positive("--n", args.n)
        return [args.n]
    a, b = args.range
    _positive("range start", a)
    if b < a:
        raise UsageError("range end below range start")
    return list(range(a, b + 1))


def _emit_rows(out, rows, cols):
    if out.fmt == "json":
        for r in rows:
            out.json(r)
    elif out.fmt == "csv":
        out.emit(rows_to_csv(rows).rstrip("\n"))
    else:
        out.emit(_table(rows, cols))


def cmd_f(args, out):
    ns = _n_values(args)
    cache = _cache(args)
    results = [f(n, paranoid=args.paranoid, cache=cache, **_search_kwargs(args)) for n in ns]
    assert_monotone(results)
    rows = []
    status = EXIT_OK
    for r in results:
        row = r.row()
        row["nodes"] = r.nodes_explored
        if args.oracle:
            if r.n <= ORACLE_MAX:
                row["oracle"] = brute_force_f(r.n)
                if r.complete and row["oracle"] != r.value:
                    out.note(f"ORACLE MISMATCH at n={r.n}: engine {r.value}, oracle {row['oracle']}")
                    status = EXIT_NEGATIVE
            else:
                row["oracle"] = "-"
        if not r.complete:
            row["f"] = f"[{r.lower},{r.upper}]"
            if status == EXIT_OK:
                status = EXIT_BUDGET
        rows.append(row)
    cols = ["n", "f", "Q_formula", "Q_scan", "gap"] + (["oracle"] if args.oracle else []) + ["nodes", "witness"]
    _emit_rows(out, rows, cols)
    return status


def cmd_sr(args, out):
    _positive("--k", args.k)
    res = sr3(args.k, cache=_cache(args), **_search_kwargs(args))
    if not res.complete:
        lo, hi = res.bracket
        obj = {"k": args.k, "sr": None, "bracket": [lo, hi], "complete": False}
        out.json(obj) if out.fmt == "json" else out.emit(f"sr(3,{args.k}) >= {lo} (budget exhausted)")
        return EXIT_BUDGET
    lower, upper = 17 * args.k / 8 - 4, 17 * args.k / 8 + 10
    obj = {"k": args.k, "sr": res.value, "f_at_sr": res.f_at_value, "f_at_sr_plus_1": res.f_at_next,
           "bound_lower": lower, "bound_upper": upper, "within_bounds": res.within_bounds(), "complete": True}
    if out.fmt == "json":
        out.json(obj)
    else:
        out.emit(f"sr(3,{args.k}) = {res.value}")
        out.emit(f"certificate: f({res.value}) = {res.f_at_value} <= {args.k}, "
                 f"f({res.value + 1}) = {res.f_at_next}")
        out.emit(f"bounds: {lower:g} <= {res.value} <= {upper:g}: {'yes' if obj['within_bounds'] else 'NO'}")
    return EXIT_OK


def cmd_q(args, out):
    rows = []
    for n in _n_values(args):
        q = Q(n)
        rows.append({"n": n, "Q_formula": q.formula_value, "epsilon": q.epsilon, "Q_scan": q.scan_value,
                     "offset": q.scan_offset, "agrees": q.agrees})
    if out.fmt == "csv":
        cols = list(rows[0])
        out.emit(",".join(cols))
        for r in rows:
            out.emit(",".join(str(r[c]) for c in cols))
    else:
        _emit_rows(out, rows, ["n", "Q_formula", "epsilon", "Q_scan", "offset", "agrees"])
    return EXIT_OK


def cmd_construct(args, out):
    if args.lo > args.hi:
        raise UsageError("--lo must not exceed --hi")
    if args.name == "c0":
        c = c0(args.lo, args.hi)
    elif args.name == "c15":
        c = c15(args.lo, args.hi, RGB.index(args.zero))
    elif args.name == "ternary":
        _positive("--lo", args.lo)
        c = ternary_valuation(args.hi).window(args.lo, args.hi)
    else:
        raise UsageError(f"unknown construction {args.name!r}")
    text = c.to_json() + "\n" if out.fmt == "json" else c.to_text(rgb=args.name != "ternary")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.check:
        hit = find_rainbow_ap3(c)
        out.note("rainbow-free" if hit is None else f"rainbow AP(3) at a={hit.a} d={hit.d}")
        return EXIT_OK if hit is None else EXIT_NEGATIVE
    return EXIT_OK


def cmd_extremal(args, out):
    _positive("--n", args.n)
    e = enumerate_extremal(args.n, quotient_reversal=args.quotient_reversal, **_search_kwargs(args))
    rows = [{"coloring": c.to_text().strip(), "c0_window": flag} for c, flag in zip(e.colorings, e.c0_windows)]
    if out.fmt == "json":
        out.json({"n": e.n, "f": e.f, "count": e.count, "complete": e.complete, "colorings": rows})
    else:
        out.emit(f"n={e.n} f={e.f} extremal colorings: {e.count}" + ("" if e.complete else " (incomplete)"))
        for r in rows:
            out.emit(f"{r['coloring']}{'  c0-window' if r['c0_window'] else ''}")
    return EXIT_OK if e.complete else EXIT_BUDGET


def _run_suite(name, args):
    from . import verifier as v

    m = args.max_n
    if name == "table1":
        return v.check_table1(ambient=args.ambient)
    if name == "patterns":
        return v.check_pattern_lemmas()
    if name == "merging":
        return v.check_merging()
    sweeps = {
        "solitary": v.check_solitary,
        "neighbor": v.check_neighbor_solitary,
        "grg": v.check_grg,
        "bb": v.check_bb_lemma,
        "bbrr": v.check_bbrr,
        "intervals": v.check_interval_lemmas,
        "af": v.check_af_theorem,
    }
    fn = sweeps[name]
    if name == "af":
        m = min(m, 13)
    return fn(m, prune=args.prune)


def cmd_lemmas(args, out):
    from .verifier import SUITES
    from .verifier.sweeps import MAX_SWEEP_N, set_parallel_width

    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    if not 1 <= args.max_n <= MAX_SWEEP_N:
        raise UsageError(f"--max-n must be in 1..{MAX_SWEEP_N}")
    set_parallel_width(args.parallel)
    ok = True
    for name in names:
        rep = _run_suite(name, args)
        ok &= rep.passed
        if out.fmt == "json":
            out.emit(rep.dumps())
        else:
            out.emit(rep.summary())
        sys.stdout.flush()
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_export(args, out):
    args.n = None
    ns = _n_values(args)
    cache = _cache(args)
    results = [f(n, cache=cache, **_search_kwargs(args)) for n in ns]
    rows = [r.row() for r in results]
    path = Path(args.out)
    as_csv = out.fmt == "csv" or path.suffix == ".csv"
    path.write_text(rows_to_csv(rows) if as_csv else json.dumps(rows, indent=1, sort_keys=True) + "\n")
    out.note(f"wrote {len(rows)} rows to {path}")
    return EXIT_OK if all(r.complete for r in results) else EXIT_BUDGET


COMMANDS = {
    "verify": cmd_verify,
    "f": cmd_f,
    "sr": cmd_sr,
    "q": cmd_q,
    "construct": cmd_construct,
    "extremal": cmd_extremal,
    "lemmas": cmd_lemmas,
    "export": cmd_export,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Out(args)
    try:
        if args.parallel < 1:
            raise UsageError("--parallel must be >= 1")
        if args.node_limit is not None and args.node_limit < 1:
            raise UsageError("--node-limit must be >= 1")
        if getattr(args, "backend", None):
            kernels.use(args.backend)
        return COMMANDS[args.command](args, out)
    except FormatError as exc:
        sys.stderr.write(f"rainbowap: input error: {exc}\n")
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"rainbowap: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
