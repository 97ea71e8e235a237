"""Compiled vs pure-Python kernels on the three hot loops.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""
import argparse
import json
import time

from rainbowap import kernels
from rainbowap.constructions import c0


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(mod):
    scan = c0(1, 3000).colors
    return {
        "find_rainbow c0[1,3000]": lambda: mod.find_rainbow(scan),
        "search n=20 k=9 (infeasible)": lambda: mod.search(20, 9, 20, (), 0, False),
        "search n=16 k=7 enumerate": lambda: mod.search(16, 7, 16, (), 0, True),
        "sweep 3^10 raw": lambda: mod.rainbow_free_colorings(10, 3, (), False),
        "sweep n=12 pruned": lambda: mod.rainbow_free_colorings(12, 3, (), True),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json")
    args = ap.parse_args()
    names = kernels.available()
    if "compiled" not in names:
        print("compiled extension not built; timing the Python kernels only")
    results = {}
    for name in names:
        mod = kernels.load(name)
        for label, fn in cases(mod).items():
            results.setdefault(label, {})[name] = _best(fn, args.repeat)
    # Same answers from both backends before quoting any speedup.
    if len(names) == 2:
        py, cc = (kernels.load(n) for n in ("python", "compiled"))
        for label in cases(py):
            assert cases(py)[label]() == cases(cc)[label](), label
    print(f"{'case':34s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, t in results.items():
        p, c = t.get("python"), t.get("compiled")
        sp = f"{p / c:7.1f}x" if p and c else "-"
        print(f"{label:34s} {p:10.4f} {c if c is not None else float('nan'):10.4f} {sp:>8s}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=1)


if __name__ == "__main__":
    main()
