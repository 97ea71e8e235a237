import json

import pytest

from rainbowap.constructions import Q
from rainbowap.core import Coloring, canonicalize, census, find_rainbow_ap3
from rainbowap.search import (
    BUDGET_EXCEEDED,
    FEASIBLE,
    INFEASIBLE,
    FCache,
    MonotonicityError,
    OracleRefusal,
    SearchConfig,
    assert_monotone,
    brute_force_extremal,
    brute_force_f,
    enumerate_extremal,
    f,
    f_table,
    feasible,
    rainbow_free_partitions,
    rows_to_csv,
    sr3,
)

# Frozen after an independent brute-force run (n <= 12) and the engine (beyond).
F_VALUES = [1, 1, 2, 2, 3, 3, 3, 3, 4, 5, 5, 6, 6, 7, 7, 7, 8, 8, 9, 10, 10, 11, 11, 11]


class TestConfig:
    def test_bounds(self):
        with pytest.raises(ValueError):
            SearchConfig(3, 0)
        with pytest.raises(ValueError):
            SearchConfig(3, 4)
        with pytest.raises(ValueError):
            SearchConfig(3, 1, max_colors=0)
        assert SearchConfig(5, 2).colors_cap == 5


class TestFeasible:
    def test_examples(self, backend):
        assert feasible(SearchConfig(3, 1)).status == INFEASIBLE
        out = feasible(SearchConfig(3, 2))
        assert out.feasible and out.witness == canonicalize(out.witness)
        out = feasible(SearchConfig(4, 2))
        assert out.feasible
        assert find_rainbow_ap3(out.witness) is None and census(out.witness).largest <= 2

    def test_budget_is_not_a_verdict(self, backend):
        out = feasible(SearchConfig(22, 9, node_limit=500))
        assert out.status == BUDGET_EXCEEDED and out.feasible is None and out.witness is None

    def test_max_colors_cover_check(self):
        out = feasible(SearchConfig(10, 3, max_colors=3))
        assert out.status == INFEASIBLE and out.nodes_explored == 1

    def test_max_colors_restricts(self, backend):
        # Two colours cannot make a rainbow, so k = ceil(n/2) suffices.
        assert feasible(SearchConfig(9, 5, max_colors=2)).feasible
        assert not feasible(SearchConfig(9, 4, max_colors=2)).feasible

    @pytest.mark.parametrize("width", [2, 3, 5])
    def test_parallel_determinism(self, width):
        for n, k in [(14, 6), (14, 7), (17, 8)]:
            a = feasible(SearchConfig(n, k))
            b = feasible(SearchConfig(n, k, parallel_width=width))
            assert (a.status, a.witness, a.nodes_explored) == (b.status, b.witness, b.nodes_explored)

    @pytest.mark.parametrize("width", [1, 4])
    def test_parallel_budget_determinism(self, width):
        ref = feasible(SearchConfig(24, 10, node_limit=5000))
        out = feasible(SearchConfig(24, 10, node_limit=5000, parallel_width=width))
        assert (out.status, out.nodes_explored) == (ref.status, ref.nodes_explored)

    def test_enumeration_determinism(self):
        a = feasible(SearchConfig(12, 6, enumerate_all=True))
        b = feasible(SearchConfig(12, 6, enumerate_all=True, parallel_width=4))
        assert a.witness_count == b.witness_count and a.witnesses == b.witnesses

    def test_split_depth_irrelevant(self, backend):
        a = feasible(SearchConfig(13, 6, enumerate_all=True, split_depth=1))
        b = feasible(SearchConfig(13, 6, enumerate_all=True, split_depth=9))
        assert a.witnesses == b.witnesses and a.nodes_explored == b.nodes_explored


class TestOracle:
    def test_small_values(self):
        assert brute_force_f(1) == 1
        assert brute_force_f(3) == 2

    def test_refuses_large(self):
        with pytest.raises(OracleRefusal):
            brute_force_f(15)

    def test_partition_counts(self):
        # Bell numbers without the rainbow filter being hit for n <= 2.
        assert len(list(rainbow_free_partitions(2))) == 2
        # Bell(4) = 15 partitions, six of them hold a rainbow progression.
        assert len(list(rainbow_free_partitions(4))) == 9
        assert list(rainbow_free_partitions(5)) == list(rainbow_free_partitions(5, cutoff=False))

    @pytest.mark.parametrize("n", range(1, 11))
    def test_engine_matches_oracle(self, n, backend):
        assert f(n).value == brute_force_f(n) == F_VALUES[n - 1]


class TestF:
    def test_frozen_table(self):
        rows = f_table(24)
        assert [r.value for r in rows] == F_VALUES

    def test_paranoid_agrees(self, backend):
        for n in range(1, 15):
            assert f(n, paranoid=True).value == F_VALUES[n - 1]

    def test_witness_and_sandwich(self):
        for n in range(1, 25):
            r = f(n)
            assert find_rainbow_ap3(r.witness) is None
            assert census(r.witness).largest == r.value
            assert max(1, Q(n).scan_value - 4) <= r.value <= Q(n).scan_value

    def test_observed_gap(self):
        assert [n for n in range(1, 25) if f(n).gap] == [8, 16]

    def test_budget_bracket(self):
        r = f(26, node_limit=1000)
        assert not r.complete and r.lower < r.upper == Q(26).scan_value

    def test_monotonicity_guard(self):
        a, b = f(9), f(10)
        b.value = 1
        with pytest.raises(MonotonicityError):
            assert_monotone([a, b])


class TestSr:
    def test_small(self):
        assert sr3(1).value == 2
        r = sr3(3)
        assert (r.value, r.f_at_value, r.f_at_next) == (8, 3, 4)

    def test_duality_and_bounds(self):
        for k in range(1, 8):
            r = sr3(k)
            assert r.f_at_value <= k and r.f_at_next == k + 1
            assert r.within_bounds()

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            sr3(0)


class TestExtremal:
    def test_n3(self):
        e = enumerate_extremal(3)
        assert e.count == 3 and e.f == 2
        assert [c.colors for c in e.colorings] == [(0, 0, 1), (0, 1, 0), (0, 1, 1)]

    def test_n1(self):
        e = enumerate_extremal(1)
        assert e.count == 1 and e.colorings[0].colors == (0,)

    @pytest.mark.parametrize("n", [6, 8, 10])
    def test_matches_oracle(self, n, backend):
        assert enumerate_extremal(n).colorings == brute_force_extremal(n)

    def test_reversal_quotient(self):
        full = enumerate_extremal(8).colorings
        half = enumerate_extremal(8, quotient_reversal=True).colorings
        assert set(half) <= set(full)
        for c in full:
            mirror = canonicalize(Coloring(c.colors[::-1]))
            assert c in half or mirror in half

    def test_c0_window_report(self):
        e = enumerate_extremal(17)
        assert any(e.c0_windows)


class TestCache:
    def test_warm_hit_has_zero_nodes(self, tmp_path):
        cache = FCache(tmp_path / "f.jsonl")
        cold = f(18, cache=cache)
        assert cold.nodes_explored > 0
        warm = f(18, cache=FCache(tmp_path / "f.jsonl"))
        assert warm.from_cache and warm.nodes_explored == 0
        assert warm.row()["witness"] == cold.row()["witness"] and warm.value == cold.value

    def test_stale_engine_ignored(self, tmp_path):
        path = tmp_path / "f.jsonl"
        path.write_text(json.dumps({"n": 5, "f": 99, "engine": "old", "witness": "",
                                    "Q_formula": 3, "Q_scan": 3}) + "\nnot json\n")
        assert 5 not in FCache(path)
        assert f(5, cache=FCache(path)).value == 3

    def test_csv_rows(self):
        text = rows_to_csv([f(n).row() for n in (3, 4)])
        assert text.splitlines()[0].startswith("n,f,Q_formula,Q_scan,witness")
        assert text.splitlines()[1].startswith("3,2,2,2,")
