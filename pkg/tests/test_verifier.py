import pytest

from rainbowap.constructions import c0, extremal_witness
from rainbowap.core import B, G, R, Coloring, census, find_rainbow_ap3
from rainbowap.verifier import (
    GGConstraintSystem,
    MergeError,
    PreconditionError,
    bb_instance,
    bbrr_instance,
    check_af_theorem,
    check_bb_lemma,
    check_bbrr,
    check_grg,
    check_interval_lemmas,
    check_merging,
    check_neighbor_solitary,
    check_pattern_lemmas,
    check_solitary,
    check_table1,
    derive_gg_colorings,
    extend_in_ambient,
    grg_instance,
    interval_instance,
    load_table1,
    merge_plan,
    merge_to_three,
    neighbor_solitary_instance,
    propagate_window,
    rainbow_free_3colorings,
    refined_witnesses,
    solitary_colors,
)
from rainbowap.verifier.patterns import render_domains

# Rainbow-free maps [n] -> 3 colours, frozen from an independent enumeration.
RAINBOW_FREE_COUNTS = [3, 9, 21, 51, 105, 225, 447, 915, 1743, 3459]


class TestUniverse:
    def test_counts(self, backend):
        got = [len(rainbow_free_3colorings(n)[0]) for n in range(1, 11)]
        assert got == RAINBOW_FREE_COUNTS

    def test_prune_same_survivors(self, backend):
        raw, a = rainbow_free_3colorings(9)
        pruned, b = rainbow_free_3colorings(9, prune=True)
        assert raw == pruned and a == b == 3 ** 9

    def test_range_guard(self):
        with pytest.raises(ValueError):
            rainbow_free_3colorings(15)


class TestSweeps:
    @pytest.mark.parametrize("check", [check_solitary, check_neighbor_solitary, check_grg, check_bb_lemma,
                                       check_bbrr, check_interval_lemmas, check_af_theorem])
    def test_pass_small(self, check, backend):
        rep = check(9)
        assert rep.passed and rep.violations == []
        assert rep.instances_checked == rep.universe_size == sum(3 ** n for n in range(1, 10))

    def test_trivial_ranges(self):
        rep = check_solitary(2)
        assert rep.passed and rep.hypothesis_count == 0

    def test_n3_solitary(self):
        rep = check_solitary(3, min_n=3)
        assert rep.instances_checked == 27 and rep.passed
        assert rep.hypothesis_count == 0  # no rainbow-free coloring of [3] uses 3 colours

    def test_instances_count_single_n(self):
        assert check_solitary(10, min_n=10).instances_checked == 3 ** 10

    def test_grg_part_a_wider_universe(self):
        rep = check_grg(11)
        assert rep.notes["part_a_without_BB"]["checked"] > 0
        assert rep.notes["part_a_without_BB"]["violations"] == []

    def test_intervals_vacuous_below_14(self):
        rep = check_interval_lemmas(12)
        assert rep.passed and rep.notes["vacuous"]
        assert rep.notes["without_gg_condition"]["checked"] > 0

    def test_af_tightness_note(self):
        rep = check_af_theorem(8)
        tight = rep.notes["min_class_k_at_6k_minus_4"]
        assert tight[8]["exists"] and not tight[2]["exists"]

    def test_af_cap(self):
        with pytest.raises(ValueError):
            check_af_theorem(14)

    def test_json_export(self):
        obj = check_bbrr(5).to_json()
        assert obj["passed"] and obj["lemma_id"] == "bbrr"


class TestInstances:
    def test_solitary_colors(self):
        assert solitary_colors("RGRBBG") == [R, G]

    def test_neighbor_instance_consistent(self):
        rec = neighbor_solitary_instance("RGRBRGRBRGR")
        assert rec["g_count"] == 3 and rec["hypothesis"] is False  # 2, 3, 4 is rainbow
        rec = neighbor_solitary_instance(c0(1, 60))
        assert rec["hypothesis"] and rec["holds"] and rec["neighbor_colors"] == [R]

    def test_grg_diagnostic(self):
        rec = grg_instance("GRGBB")
        assert not rec["hypothesis"] or rec["holds"]
        assert rec["rainbow_free"] is False or not rec["standing"]

    def test_grg_part_d_instance(self):
        assert find_rainbow_ap3(Coloring((B, R, G))) is not None

    def test_bb_on_c0(self):
        c = c0(1, 60)
        assert bb_instance(c) == []
        assert bb_instance("RRGRR") == []

    def test_bbrr_examples(self):
        assert bbrr_instance("RRBB") == []
        assert bbrr_instance("RBRB") == []
        assert bbrr_instance("RRGBB") == [(1, 4)]

    def test_interval_instance(self):
        rec = interval_instance("GRRBRRGRRBRRBB")
        assert rec["I1_holds"] and rec["has_gg_without_BB"]
        assert (rec["len_I1"], rec["len_I2"]) == (7, 7)
        assert interval_instance("RRRR") == {}


class TestTable1:
    def test_constraints_shape(self):
        s = GGConstraintSystem.build(6)
        assert s.forced == {0: "G", 1: "R", 5: "R"}
        assert (1, 2) in s.equalities and (4, 2) in s.equalities

    def test_rows(self):
        assert [str(r) for r in derive_gg_colorings(6)] == ["G R R B R R"]
        assert [str(r) for r in derive_gg_colorings(15)] == ["G R R x R y x R R x y R x R R"]
        assert [str(r) for r in derive_gg_colorings(17)] == ["G R R B R B B B R R B B B R B R R"]
        assert derive_gg_colorings(16) == []
        for k in (7, 8, 11, 13, 16, 19):
            assert derive_gg_colorings(k) == []

    def test_without_b_requirement(self):
        assert [str(r) for r in derive_gg_colorings(7, require_B=False)] == ["G R R R R R R"]

    def test_range_guard(self):
        with pytest.raises(ValueError):
            derive_gg_colorings(31)

    def test_closed_under_constraints(self):
        for k in range(4, 31):
            system = GGConstraintSystem.build(k)
            for row in derive_gg_colorings(k, require_B=False):
                for concrete in row.concretizations():
                    assert system.violations(concrete) == []

    def test_golden_fixture_shape(self):
        golden = load_table1()
        assert sorted(golden) == [6, 9, 10, 12, 14, 15, 17, 18, 20, 21]
        assert all(len(r.tokens) == k for k, r in golden.items())

    def test_report_records_each_length(self):
        rep = check_table1()
        per = rep.notes["per_length"]
        assert sorted(per) == list(range(4, 22))
        # Every golden concretization is a solution of the constraint system.
        assert all(r["golden_inside_derived"] for r in per.values())
        mismatched = sorted(v["k"] for v in rep.violations)
        assert mismatched == [18, 21]

    def test_ambient_diagnostic(self):
        rep = check_table1([15], ambient=40)
        ext = rep.notes["per_length"][15]["extends"]
        assert ext["GRRBRBBRRBBRBRR"] == 0
        assert ext["GRRBRRBRRBRRBRR"] is None


class TestPatterns:
    def test_full_check(self):
        rep = check_pattern_lemmas()
        assert rep.passed
        assert rep.notes["cases"]["c15"]["ambient_length"] == 90
        assert rep.notes["cases"]["c0"]["ambient_length"] == 102

    def test_short_ambient_returns_window(self):
        w = (G, R, R, B, G)
        assert render_domains(propagate_window(w, 4)) == "GRRBG"

    def test_extension_example(self):
        w = tuple("RGB".index(t) for t in "GRRBRBBRRBBRBRRG")
        c = extend_in_ambient(w, 40, 5)
        assert c is not None and find_rainbow_ap3(c) is None
        assert c.colors[5:21] == w


class TestMerging:
    def test_identity_for_three_colours(self):
        c = extremal_witness(100)
        assert merge_to_three(c, census(c).largest) is c

    def test_refined_inputs(self):
        for c in refined_witnesses(range(90, 110)):
            m = census(c).largest
            if 2 * m >= c.n - 4:
                continue
            out = merge_to_three(c, m)
            assert len(set(out.colors)) == 3 and census(out).largest <= m
            assert find_rainbow_ap3(out) is None
            groups = {}
            for old, new in zip(c.colors, out.colors):
                groups.setdefault(old, set()).add(new)
            assert all(len(v) == 1 for v in groups.values())

    def test_tie_break_order(self):
        c = next(iter(refined_witnesses([100])))
        case, groups = merge_plan(c, census(c).largest)
        assert case == "two_big" and groups[0] == [0] and groups[1] == [2]

    def test_preconditions_named(self):
        with pytest.raises(PreconditionError, match="n >= 21"):
            merge_to_three(Coloring(tuple(range(10))), 3)
        with pytest.raises(PreconditionError, match=r"\(n\+4\)/6 <= m"):
            merge_to_three(extremal_witness(100), 10)
        with pytest.raises(PreconditionError, match=r"m < \(n-4\)/2"):
            merge_to_three(extremal_witness(100), 48)
        with pytest.raises(PreconditionError, match="every class <= m"):
            merge_to_three(c0(1, 100), 47)

    def test_singleton_example_refused(self):
        # 24 singleton classes with m = 5: the only inputs with classes <= 5
        # on [24] hold a rainbow progression, since f(24) = 11.
        with pytest.raises(PreconditionError, match="rainbow-free"):
            merge_to_three(Coloring(tuple(range(24))), 5)

    def test_suite(self):
        assert check_merging(range(60, 110)).passed

    def test_merge_error_is_runtime(self):
        assert issubclass(MergeError, RuntimeError)
