"""Rainbow 3-term progressions in colorings of integer intervals.

Exact computation of ``f(n)`` and ``sr(3, k)``, the explicit periodic
constructions, and exhaustive checks of the structural lemmas.
"""
from . import kernels
from .constructions import C0_PATTERN, C15_PATTERN, Q, PeriodicPattern, c0, c15, extremal_witness, ternary_valuation
from .core import (
    APTriple,
    Coloring,
    DomainError,
    FormatError,
    Interval,
    canonicalize,
    census,
    contains_pattern,
    decompose,
    find_rainbow_ap3,
    is_rainbow_free,
    parse_coloring,
)
from .search import SearchConfig, brute_force_f, enumerate_extremal, f, feasible, sr3

__version__ = "0.1.0"
