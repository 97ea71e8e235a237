import pytest

from rainbowap.constructions import (
    C0_PATTERN,
    C15_PATTERN,
    FREE,
    PeriodicPattern,
    Q,
    c0,
    c15,
    c15_pattern,
    extremal_witness,
    q_epsilon,
    q_formula,
    q_of_interval,
    ternary_valuation,
    verify_periodic_rainbow_free,
    window_scan,
)
from rainbowap.core import B, G, R, Interval, census, find_rainbow_ap3


def test_c0_period_tokens():
    assert str(c0(1, 17)) == "RRBRBBBRRBBBRBRRG"


def test_c0_small_windows():
    assert str(c0(17, 17)) == "G"
    assert str(c0(-2, 2)) == "RRGRR"


def test_c15_window():
    assert str(c15(0, 15)) == "GRRBRBBRRBBRBRRG"
    assert str(c15(3, 3)) == "B"
    assert census(c15(1, 15)).counts == {R: 8, B: 6, G: 1}


def test_c15_zero_override():
    assert c15(0, 0, zero_color=R).colors == (R,)
    with pytest.raises(ValueError):
        c15_pattern(FREE).coloring(0, 3)


def test_ternary_valuation():
    assert ternary_valuation(9).colors == (0, 0, 1, 0, 0, 1, 0, 0, 2)
    assert ternary_valuation(1).colors == (0,)
    assert find_rainbow_ap3(ternary_valuation(27)) is None
    assert find_rainbow_ap3(ternary_valuation(400)) is None


@pytest.mark.parametrize("pattern", [C0_PATTERN, C15_PATTERN])
def test_builtins_symmetric(pattern):
    assert pattern.is_symmetric()


def test_c0_doubling_table():
    for x in (1, 2, 4, 8, 3, 5, 6, 7):
        assert C0_PATTERN.color(2 * x % 17) == C0_PATTERN.color(x)


def test_c15_doubling():
    for j in range(15):
        assert C15_PATTERN.color(2 * j % 15) == C15_PATTERN.color(j)


def test_c15_red_density():
    for n in range(1, 400):
        assert census(c15(1, n)).counts.get(R, 0) >= 8 * (n - 1) / 15 - 1


def test_periodic_verification():
    assert verify_periodic_rainbow_free(C0_PATTERN)
    assert verify_periodic_rainbow_free(C15_PATTERN)
    bad = verify_periodic_rainbow_free(PeriodicPattern(3, (R, G, B)))
    assert not bad and bad.certificate == (0, 1)


def test_periodic_free_residue_refused():
    with pytest.raises(ValueError):
        verify_periodic_rainbow_free(c15_pattern(FREE))


@pytest.mark.parametrize("zero", [R, B, 3])
def test_zero_residue_is_free(zero):
    # Symmetry and doubling make every colour at residue 0 safe.
    assert verify_periodic_rainbow_free(c15_pattern(zero))
    assert verify_periodic_rainbow_free(C0_PATTERN.with_residue(0, zero))


def test_pattern_json_round_trip():
    p = c15_pattern(FREE)
    obj = p.to_json()
    assert obj["residues"]["0"] is None and obj["residues"]["3"] == "B"
    assert PeriodicPattern.from_json(obj) == p


def test_pattern_json_incomplete():
    with pytest.raises(ValueError):
        PeriodicPattern.from_json({"period": 2, "residues": {"0": "R"}})


def test_q_of_interval():
    c = c0(1, 40)
    assert q_of_interval(c, Interval(1, 17)) == 8
    assert q_of_interval(c, Interval(5, 5)) == 1
    assert q_of_interval(c, Interval(14, 20)) == 4


def test_q_examples():
    q = Q(17)
    assert (q.formula_value, q.epsilon, q.scan_value) == (8, 0, 8)
    q = Q(20)
    assert q.epsilon == 1 and q.formula_value == 10 and q.scan_value == 10
    assert Q(2).scan_value == 1


def test_q_at_one_scan_authoritative():
    q = Q(1)
    assert q.formula_value == 0 and q.scan_value == 1 and not q.agrees


def test_q_rejects_nonpositive():
    with pytest.raises(ValueError):
        Q(0)


def test_epsilon_residues():
    assert [r for r in range(17) if q_epsilon(r)] == [3, 5]
    assert q_formula(18) == 8


@pytest.mark.parametrize("n", [1, 2, 7, 17, 20, 33, 101, 250])
def test_window_scan_matches_long_scan(n):
    # Seventeen starts suffice; compare with ten periods of starts.
    assert window_scan(n)[0] == window_scan(n, offsets=range(-85, 86))[0]


@pytest.mark.parametrize("n", [1, 17, 100, 523])
def test_extremal_witness(n):
    w = extremal_witness(n)
    assert w.n == n and w.start == 1
    assert census(w).largest == Q(n).scan_value
    assert find_rainbow_ap3(w) is None
