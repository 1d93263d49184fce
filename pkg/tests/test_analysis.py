import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threecolour import analysis
from threecolour.errors import NoPositiveRoot, NonPositiveEvaluation
from threecolour.exactpoly import asm_count
from threecolour.families import delta, p_poly

# real zeros of p_n from numpy.roots on the published coefficient lists
NUMPY_REAL_ZEROS = {
    1: [-0.3333333333333333],
    2: [-2.4649546086366083],
    3: [-0.43640587669955744, -0.2220108119748844],
    4: [-3.359659506457044, -2.207459749978863],
    5: [-0.4632538156395693, -0.3431624326112263, -0.17971394768088897],
    6: [-4.114219894219291, -2.679056471660806, -2.1270591252372895],
}


@pytest.mark.parametrize("n", sorted(NUMPY_REAL_ZEROS))
def test_real_zeros_match_numpy(n):
    rp = analysis.root_profile(n)
    real = sorted(re for re, im in rp.roots if im == 0)
    assert real == pytest.approx(NUMPY_REAL_ZEROS[n], rel=1e-9)
    assert rp.real_count == len(real) == rp.expected_real_count


@given(st.integers(1, 9))
@settings(max_examples=9, deadline=None)
def test_real_plus_pairs_is_degree(n):
    rp = analysis.root_profile(n)
    assert rp.real_count + 2 * rp.conjugate_pairs == rp.degree == n * (n + 1) // 2
    assert rp.simple and rp.location_ok
    assert rp.max_residual <= analysis.RESIDUAL_TOL


def test_zeros_csv_shape():
    text = analysis.zeros_csv(4)
    lines = text.strip().splitlines()
    assert lines[0] == "re,im"
    assert len(lines) == 11
    assert sum(1 for l in lines[1:] if float(l.split(",")[1]) == 0) == 2


@pytest.mark.parametrize("m", range(0, 4))
def test_zero_chain(m):
    r = analysis.zero_chain(m)
    assert r["p_even_vs_reversed"] and r["reversed_vs_next"] and r["next_below_minus_two"]


def test_complex_roots_residuals():
    roots, res = analysis.complex_roots(p_poly(5))
    assert len(roots) == 15 and max(res) < 1e-30


def test_unimodal_helper():
    assert analysis.is_strictly_unimodal([1, 3, 5, 2])
    assert not analysis.is_strictly_unimodal([1, 3, 3, 2])
    assert not analysis.is_strictly_unimodal([1, 3, 1, 2])


def test_argmax_published_n6():
    # index of the largest numerator in the n = 6 coefficient list
    assert analysis.expected_argmax(6) == 12
    assert analysis.coefficient_scan(6)["argmax"] == 12


def test_conjecture_scan_small():
    for r in analysis.conjecture_scan(10):
        assert r["positive"] and r["unimodal"] and r["argmax_ok"] is not False


def test_second_coefficient_scan():
    assert all(r["match"] for r in analysis.second_coefficient_scan(10))


@pytest.mark.parametrize("zeta", [Fraction(-3, 2), Fraction(-3, 4)])
def test_px_interlacing(zeta):
    rep = analysis.px_interlacing(zeta, 6)
    for r in rep["rows"]:
        assert all(v for k, v in r.items() if k != "n")


@pytest.mark.parametrize("zeta", [-1, 0, Fraction(-5, 2), Fraction(-1, 4)])
def test_px_interlacing_domain(zeta):
    with pytest.raises(ValueError):
        analysis.px_interlacing(zeta, 3)


def test_integrality_rows():
    for r in analysis.integrality_report(12):
        assert all(v for k, v in r.items() if k != "n")


def test_mu_bound_values():
    assert analysis.mu_bound(2, 1) == 0
    assert analysis.mu_bound(6, 5) == 4
    assert analysis.mu_bound(5, 18) == 0


@given(st.integers(1, 16))
@settings(deadline=None)
def test_f_at_one_is_asm_count(n):
    f = analysis.f_sequence(1, n)[-1]
    want = (delta(n + 1) * math.log(2) + math.log(asm_count(n + 1))) / n**2
    assert f == pytest.approx(want, rel=1e-13)


def test_f_sequence_nonpositive():
    with pytest.raises(NonPositiveEvaluation):
        analysis.f_sequence(Fraction(-1, 3), 1)


@given(st.fractions(Fraction(1, 100), 100, max_denominator=10**5))
@settings(deadline=None)
def test_T_inverse_branches_exact_T(z):
    T = analysis.T_from_zeta(z)
    small = analysis.zeta_from_T(T)
    large = analysis.zeta_from_T(T, "large")
    assert small * large == pytest.approx(1, rel=1e-12)
    assert float(min(z, 1 / z)) == pytest.approx(float(small), rel=1e-9)


@given(st.floats(0.01, 100))
@settings(deadline=None)
def test_T_inverse_backward_stable(z):
    # T - 27 ~ (zeta - 1)^4, so only the backward error is small for float T
    T = analysis.T_from_zeta(z)
    assert analysis.T_from_zeta(analysis.zeta_from_T(T)) == pytest.approx(T, rel=1e-12)


def test_T_minimum():
    assert analysis.T_from_zeta(1) == 27
    assert analysis.zeta_from_T(27) == 1
    with pytest.raises(NoPositiveRoot):
        analysis.zeta_from_T(26.9)


@given(st.floats(0.02, 50))
def test_w_reciprocal_and_relation(z):
    assert analysis.w_dwbc(z) == pytest.approx(analysis.w_dwbc(1 / z), rel=1e-12)
    assert analysis.w_relation_residual(z) <= 1e-12


def test_w_at_one():
    assert analysis.w_dwbc(1.0) == pytest.approx(3 * math.sqrt(3) / 4, abs=1e-12)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_richardson_exact_on_model(L, a, b):
    ns = [10, 12, 14]
    fs = [L + a / n + b / n**2 for n in ns]
    assert analysis._richardson(ns, fs) == pytest.approx(L, abs=1e-9)


def test_free_energy_guards():
    with pytest.raises(ValueError):
        analysis.free_energy(1, 5)
    with pytest.raises(ValueError):
        analysis.free_energy(0)


def test_free_energy_reciprocal_zeta():
    a = analysis.free_energy(2, 12)
    b = analysis.free_energy(Fraction(1, 2), 12)
    # p_n(1/z) z^{deg} = p~_n(z), so the limits differ by the degree term only
    assert a.extrapolated - b.extrapolated == pytest.approx(math.log(2) / 2, abs=5e-3)
