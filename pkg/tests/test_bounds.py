import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import digraphs
from netfix import bounds
from netfix.codes import A, A_constant_weight
from netfix.digraph import Sign, SignedDigraph
from netfix.errors import CapExceeded, InputError
from netfix.guessing import guessing_number
from netfix.states import DistanceKind


def test_entropy():
    assert bounds.entropy(0) == 0 and bounds.entropy(1) == 0 and bounds.entropy(0.5) == 1
    assert bounds.entropy(0.25) == pytest.approx(0.811278, abs=1e-6)
    with pytest.raises(InputError):
        bounds.entropy(1.5)


def test_degree_bounds_values():
    assert bounds.typical_lower_value(16, 8) == pytest.approx(-5.08, abs=0.01)
    assert bounds.typical_lower_value(256, 255) == pytest.approx(88.7, abs=0.1)
    assert bounds.typical_lower_value(4, 1) is None
    assert bounds.turan_lower(SignedDigraph.clique(4, Sign.NEG)) == pytest.approx(3 * math.log2(4 / 3) - 2)
    # negative loops are ignored
    D = SignedDigraph.clique(3, Sign.POS, loops=False).with_arcs([(v, v, Sign.NEG) for v in range(3)])
    assert bounds.turan_lower(D) == bounds.turan_lower(SignedDigraph.clique(3, Sign.POS))


def test_sphere_packing_values():
    assert bounds.sphere_packing_value(7, 3)[0] == pytest.approx(4)
    assert bounds.sphere_packing_value(15, 7)[0] == pytest.approx(15 - math.log2(576))
    exact, approx = bounds.sphere_packing_value(9, 2)
    assert exact == 9 and approx is None
    assert bounds.sphere_packing_upper(SignedDigraph.cycle(3, Sign.NEG)) == (0.0, 0.0)


def test_gilbert_corollary_values():
    assert bounds.gilbert_corollary_value(7, 2)[0] == pytest.approx(math.log2(35 / 64))
    direct = math.log2(math.comb(63, 31)) - math.log2(sum(math.comb(63, k) for k in range(4)))
    assert bounds.gilbert_corollary_value(63, 2)[0] == pytest.approx(direct)
    assert direct == pytest.approx(44.32, abs=0.01)


def test_phi():
    for n in range(3, 7):
        assert bounds.phi(SignedDigraph.clique(n, Sign.POS)) == 2
        assert bounds.phi(SignedDigraph.clique(n, Sign.NEG)) == 2
        assert bounds.phi(SignedDigraph.clique(n, Sign.ZERO)) == 1
    assert bounds.phi_raw(SignedDigraph(2)) == Fraction(3, 2)


def test_classical_code_bounds():
    got = {b.name: b for b in bounds.classical_code_bounds(7, 3)}
    assert got["gilbert"].value == Fraction(128, 29) and got["gilbert"].integer == 5
    assert got["sphere_packing"].value == 16
    assert got["singleton"].value == 32
    assert {b.name: b for b in bounds.classical_code_bounds(4, 2)}["varshamov"].value == Fraction(32, 6)
    assert {b.name: b for b in bounds.classical_code_bounds(4, 2)}["varshamov"].integer == 5
    assert [b.name for b in bounds.classical_code_bounds(4, 2, 3)] == ["singleton"]
    with pytest.raises(InputError):
        bounds.classical_code_bounds(4, 0)


def test_classical_bounds_bracket_exact_values():
    for n in range(2, 7):
        for d in range(1, n + 1):
            exact = {
                "A_H": A(n, d, 2, DistanceKind.HAMMING),
                "A_M": A(n, d, 2, DistanceKind.MAX),
                "A_cw": A_constant_weight(n, d, n // 2),
            }
            for b in bounds.classical_code_bounds(n, d):
                key = "A_cw" if b.name == "bassalygo_elias" else b.quantity.split("(")[0]
                if b.kind == "lower":
                    assert b.integer <= exact[key], (n, d, b)
                else:
                    assert b.integer >= exact[key], (n, d, b)


def test_binomial_brackets_up_to_30():
    for n in range(2, 31):
        for k in range(1, n):
            assert bounds.binomial_estimates(n, Fraction(k, n)).contains
        for k in range(1, n // 2 + 1):
            assert bounds.sum_binomial_estimates(n, Fraction(k, n)).contains
        assert bounds.central_binomial_lower(n).contains
    assert bounds.binomial_estimates(10, 0.5).exact == 252
    assert bounds.sum_binomial_estimates(8, 0.25).exact == 37
    with pytest.raises(InputError):
        bounds.binomial_estimates(10, 0.33)
    with pytest.raises(InputError):
        bounds.sum_binomial_estimates(10, 0.7)


def test_mrrw_shape():
    assert bounds.mrrw(0) == pytest.approx(1, abs=1e-6)
    for k in range(50, 101):
        assert bounds.mrrw(k / 100) == 0
    values = [bounds.mrrw(k / 100) for k in range(51)]
    assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))
    for k in range(5, 46):
        d = k / 100
        # squeezed between the Gilbert-Varshamov rate and the sphere-packing rate
        assert 1 - bounds.entropy(d) <= bounds.mrrw(d) <= 1 - bounds.entropy(d / 2)
    with pytest.raises(InputError):
        bounds.mrrw(1.2)


def test_mrrw_threshold():
    assert bounds.mrrw_threshold(1) == 0
    for k in (0.1, 0.3, 0.6):
        g = bounds.mrrw_threshold(k)
        assert bounds.mrrw(2 * g) <= k + 1e-6
        assert bounds.mrrw(2 * (g - 1e-3)) > k


def test_asymptotic_curves():
    pts = bounds.asymptotic_curves(bounds.parse_grid("0:1:0.01"))
    assert len(pts) == 101 and pts[-1].dbar == 1
    by = {round(p.dbar, 2): p for p in pts}
    assert by[0.75].lower_gilbert == pytest.approx(0) and by[0.75].lower_delta_half == 0.375
    assert by[1.0].lower_gilbert == 1 and by[0.74].lower_gilbert is None
    assert by[0.95].lower_gilbert >= 0.475 and by[0.76].lower_gilbert <= 0.38
    assert all(p.upper_mrrw == 0 for p in pts if p.dbar >= 0.25)
    text = bounds.curves_csv(pts)
    assert text.splitlines()[0] == "dbar,lower_delta_half,lower_gilbert,upper_mrrw,upper_feedback_frontier"
    assert text.splitlines()[1] == "0.000000,0.000000,,1.000000,1.000000"
    for bad in ("0:1", "1:0:0.1", "0:1:0"):
        with pytest.raises(InputError):
            bounds.parse_grid(bad)


def test_coding_upper():
    assert bounds.coding_upper(SignedDigraph.cycle(3, Sign.NEG), 2).value == 0
    tri = SignedDigraph(7, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    up = bounds.coding_upper(tri, 2, "exact")
    assert up.terms["A_H(7,3,2)"] == pytest.approx(4)
    # positive digraph: the Max-distance term A_M(7,3,2) = 4 is tighter
    assert up.value == pytest.approx(math.log2(A(7, 3, 2, DistanceKind.MAX)))
    K = SignedDigraph.clique(9, Sign.POS)
    est = bounds.coding_upper(K, 2, "estimate")
    assert est.value <= math.log2(2**10 / 11)
    with pytest.raises(CapExceeded):
        bounds.coding_upper(SignedDigraph.clique(8, Sign.POS), 2, "exact")


def test_coding_lower():
    K = SignedDigraph.clique(7, Sign.POS)
    assert bounds.coding_lower(K, 2, "constant-weight").value == pytest.approx(math.log2(7))
    assert bounds.coding_lower(K, 2, "exact").value >= math.log2(7)
    assert bounds.coding_lower(SignedDigraph.clique(14, Sign.POS), 2).oracle == "estimate"


@pytest.mark.parametrize(
    "D,lo,hi",
    [
        (SignedDigraph.cycle(4, Sign.POS), 1, 1),
        (SignedDigraph.cycle(5, Sign.NEG), 0, 0),
        (SignedDigraph(3, [(0, 1, 1), (1, 2, -1)]), 0, 0),
    ],
)
def test_report_intervals(D, lo, hi):
    rep = bounds.bound_report(D, 2)
    assert rep.certified_lower == pytest.approx(lo) and rep.certified_upper == pytest.approx(hi)


def test_report_contains_negative_clique():
    rep = bounds.bound_report(SignedDigraph.clique(3, Sign.NEG), 2, alpha=3)
    assert rep.certified_lower <= math.log2(3) <= rep.certified_upper
    assert rep.violations() == []
    assert all(len(line.split()) >= 5 for line in rep.lines())


@given(digraphs(max_n=3))
@settings(max_examples=200, deadline=None)
def test_report_is_sound_binary(D):
    rep = bounds.bound_report(D, 2, alpha=guessing_number(D, 2).alpha)
    assert rep.violations() == []


@given(digraphs(max_n=3))
@settings(max_examples=60, deadline=None)
def test_report_is_sound_ternary(D):
    rep = bounds.bound_report(D, 3, alpha=guessing_number(D, 3).alpha)
    assert rep.violations() == []
