"""Backend selection for the hot loops.

The compiled extension is used when it imports; setting the environment
variable ``RAINBOWAP_PURE_PYTHON=1`` forces the pure-Python implementation.
Both expose ``find_rainbow``, ``search`` and ``rainbow_free_colorings``.
"""
import os

from . import _pykernels

EXHAUSTED = _pykernels.EXHAUSTED
FOUND = _pykernels.FOUND
BUDGET = _pykernels.BUDGET


def load(name=None):
    """Return the kernel module ``name`` ("compiled" or "python")."""
    if name == "python":
        return _pykernels
    if name in (None, "compiled"):
        try:
            from . import _ckernels
        except ImportError:
            if name == "compiled":
                raise
            return _pykernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def available():
    names = ["python"]
    try:
        load("compiled")
    except ImportError:
        pass
    else:
        names.insert(0, "compiled")
    return names


_active = load("python" if os.environ.get("RAINBOWAP_PURE_PYTHON") else None)
BACKEND = _active.BACKEND


def active():
    return _active


def use(name):
    """Switch the process-wide backend; returns the previous backend name."""
    global _active, BACKEND
    previous = BACKEND
    _active = load(name)
    BACKEND = _active.BACKEND
    return previous


def find_rainbow(colors):
    return _active.find_rainbow(colors)


def search(n, k, max_colors, prefix, node_limit, enumerate_all):
    return _active.search(n, k, max_colors, tuple(prefix), node_limit or 0, enumerate_all)


def rainbow_free_colorings(n, q, prefix=(), prune=False):
    return _active.rainbow_free_colorings(n, q, tuple(prefix), prune)
