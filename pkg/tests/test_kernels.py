import itertools
import random

import pytest

from rainbowap import _pykernels, kernels


def naive_rainbow(colors):
    n = len(colors)
    for a in range(n):
        for d in range(1, n):
            if a + 2 * d >= n:
                break
            if len({colors[a], colors[a + d], colors[a + 2 * d]}) == 3:
                return (a, d)
    return None


def test_backend_listing():
    assert "python" in kernels.available()
    assert kernels.load("python") is _pykernels
    with pytest.raises(ValueError):
        kernels.load("fortran")


def test_use_switches_and_restores():
    prev = kernels.use("python")
    assert kernels.BACKEND == "python"
    kernels.use(prev)
    assert kernels.BACKEND == prev


def test_find_rainbow_random(backend):
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(0, 60)
        q = rng.choice([1, 2, 3, 4])
        cols = [rng.randrange(q) for _ in range(n)]
        assert kernels.find_rainbow(cols) == naive_rainbow(cols)


def test_search_decision(backend):
    status, w, nodes = kernels.search(3, 1, 3, (), 0, False)
    assert status == kernels.EXHAUSTED and w is None
    status, w, nodes = kernels.search(4, 2, 4, (), 0, False)
    assert status == kernels.FOUND and naive_rainbow(w) is None
    assert max(w.count(x) for x in set(w)) <= 2


def test_search_enumeration_small(backend):
    status, leaves, nodes = kernels.search(4, 2, 4, (), 0, True)
    assert leaves == [(0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1, 0), (0, 1, 1, 2)]
    assert nodes == 11


def test_search_prefix_and_budget(backend):
    status, leaves, _ = kernels.search(6, 3, 6, (0, 1), 0, True)
    assert all(x[:2] == (0, 1) for x in leaves)
    status, _, nodes = kernels.search(25, 11, 25, (), 100, False)
    assert status == kernels.BUDGET and nodes == 101


def test_rainbow_free_colorings(backend):
    cols, inst = kernels.rainbow_free_colorings(6, 3)
    assert inst == 3 ** 6 and len(cols) == 225
    expect = [c for c in itertools.product(range(3), repeat=6) if naive_rainbow(c) is None]
    assert cols == expect
    pruned, inst2 = kernels.rainbow_free_colorings(6, 3, prune=True)
    assert pruned == cols and inst2 == inst


def test_rainbow_free_prefix(backend):
    cols, inst = kernels.rainbow_free_colorings(5, 3, (2, 0))
    assert inst == 27 and all(c[:2] == (2, 0) for c in cols)
    assert kernels.rainbow_free_colorings(3, 3, (0, 1, 2)) == ([], 1)


@pytest.mark.skipif("compiled" not in kernels.available(), reason="extension not built")
def test_backends_agree_on_search():
    py, cc = kernels.load("python"), kernels.load("compiled")
    for n, k in [(8, 3), (9, 3), (10, 4), (12, 5)]:
        assert py.search(n, k, n, (), 0, True) == cc.search(n, k, n, (), 0, True)
        assert py.search(n, k, n, (), 0, False) == cc.search(n, k, n, (), 0, False)
