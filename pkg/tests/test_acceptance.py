"""End-to-end acceptance run.  Each test carries one criterion; the
terminal summary prints a PASS/FAIL line per criterion (see conftest.py)."""

import math
import random
import time
from fractions import Fraction

import pytest

from threecolour import analysis, checks, reference
from threecolour.boards import counting_table, enumerate_boards, partition_polynomial
from threecolour.errors import IdentityViolation
from threecolour.exactpoly import cspp_count
from threecolour.families import P_poly, p_poly, qr_degrees, qr_polys
from threecolour.reconstruct import count_matrix, count_table, parity_symmetry_check, support_edges_check, z3c_from_qr
from threecolour.theta import (
    ThetaContext,
    _rand_c,
    closed_form_check,
    crossing_symmetry_check,
    cyclic_sum_check,
    determinant_check,
    gamma_check,
    modular_constants,
    random_sample,
    small_nome_check,
    specialization_recursion_check,
)

criterion = pytest.mark.criterion


@criterion(1, "board enumeration reproduces the ASM counts for n = 1..7 in under 2 minutes")
def test_enumeration_counts():
    t0 = time.perf_counter()
    counts = [sum(1 for _ in enumerate_boards(n)) for n in range(1, 8)]
    elapsed = time.perf_counter() - t0
    print(f"counts {counts} in {elapsed:.1f}s")
    assert counts == [1, 2, 7, 42, 429, 7436, 218348]
    assert elapsed < 120


@criterion(2, "counting tables for n = 4, 5 match the published matrices")
def test_count_matrices():
    for n in (4, 5):
        assert count_matrix(counting_table(n)) == reference.COUNT_MATRICES[n]


@criterion(3, "reconstructed partition polynomial equals enumeration for n <= 6")
def test_reconstruction_oracle():
    bad = [n for n in range(0, 7) if z3c_from_qr(n) != partition_polynomial(n)]
    assert not bad


@criterion(4, "q_n, r_n (n <= 7), p_n (n <= 6), P_n (n <= 4) match the published tables")
def test_tables():
    assert all(qr_polys(n) == reference.qr_reference(n) for n in range(0, 8))
    assert all(p_poly(n) == reference.p_reference(n) for n in range(0, 7))
    assert all(P_poly(n) == reference.P_reference(n) for n in range(0, 5))


@criterion(5, "special values of p_n at +-1, -2, -1/2 hold for n <= 16; p_3(-2) = C_4 = 132")
def test_special_values():
    bad = [n for n in range(0, 17) if not checks.special_values_check(n).passed]
    assert not bad
    assert p_poly(3)(-2) == 132 == cspp_count(4)


@criterion(6, "q_n, r_n monic with the mod-6 degree table for n <= 16")
def test_monic_degrees():
    bad = []
    for n in range(1, 17):
        q, r = qr_polys(n)
        ok = (q.degree(), r.degree()) == qr_degrees(n)
        ok = ok and all(f.is_zero() or f.lead() == 1 for f in (q, r))
        if not ok:
            bad.append(n)
    assert not bad


@criterion(7, "p_n positive and strictly unimodal for n <= 16 with the listed argmax positions")
def test_conjecture_scan():
    rows = analysis.conjecture_scan(16)
    assert all(r["positive"] and r["unimodal"] for r in rows)
    listed = [r for r in rows if r["expected_argmax"] is not None]
    assert listed and all(r["argmax_ok"] for r in listed)
    by_n = {r["n"]: r for r in rows}
    assert by_n[6]["argmax"] == 12 and by_n[9]["argmax"] == 24


@criterion(8, "real-zero counts and interlacing for n <= 12; n = 14 has 105 zeros, 7 real")
def test_zero_structure():
    bad = []
    for n in range(1, 13):
        rp = analysis.root_profile(n)
        if not (rp.count_ok and rp.real_count == (n + 1) // 2 and rp.simple and rp.location_ok):
            bad.append(("count", n))
    for r in analysis.interlacing_scan(12):
        if not (r["p_even_vs_reversed"] and r["reversed_vs_next"] and r["next_below_minus_two"]):
            bad.append(("interlacing", r["m"]))
    assert not bad
    lines = analysis.zeros_csv(14).strip().splitlines()
    assert lines[0] == "re,im"
    rows = [tuple(map(float, l.split(","))) for l in lines[1:]]
    assert len(rows) == 105
    assert sum(1 for _, im in rows if im == 0) == 7


@criterion(9, "boundary binomials and mod-2 symmetry of N for n <= 9")
def test_support_and_parity():
    bad = []
    for n in range(1, 10):
        table = count_table(n)
        if not support_edges_check(n, table).passed:
            bad.append(("edges", n))
        if n % 2 and not parity_symmetry_check(n, table).passed:
            bad.append(("parity", n))
    assert not bad


@criterion(10, "q_n, r_n integral for n <= 16; coefficient denominator bound for n <= 12")
def test_integrality():
    rows = analysis.integrality_report(16)
    assert all(r.get("q_integral", True) and r.get("r_integral", True) for r in rows)
    assert all(r["mu_bound_ok"] for r in rows if r["n"] <= 12)


@criterion(11, "vertex-model checks at 20 seeded samples for n <= 3 within 1e-9, under 1 minute")
def test_vertex_model():
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 4):
        for seed in range(20):
            s = random_sample(n, seed)
            reps = [
                determinant_check(n, s),
                gamma_check(n, s),
                crossing_symmetry_check(n, s),
                cyclic_sum_check(n, s),
            ]
            if n >= 2:
                reps.append(specialization_recursion_check(n, s))
            assert abs(s.p) <= 0.2
            for r in reps:
                assert r.tol == 1e-9
                worst = max(worst, r.residual)
    elapsed = time.perf_counter() - t0
    print(f"worst residual {worst:.2e} in {elapsed:.1f}s")
    assert worst <= 1e-9
    assert elapsed < 60


@criterion(12, "modular identities within 1e-10 at 10 nomes with |p| <= 0.3")
def test_modular():
    rng = random.Random("acceptance:modular")
    worst = 0.0
    for _ in range(10):
        p = _rand_c(rng, 0.02, 0.3)
        try:
            mc = modular_constants(ThetaContext(p))
        except IdentityViolation as exc:
            pytest.fail(f"p={p}: residual {exc.residual}")
        worst = max(worst, *mc.residuals.values())
    print(f"worst residual {worst:.2e}")
    assert worst <= 1e-10


@criterion(13, "closed form within 1e-8 for n <= 5; small-nome limit within 1e-6 of the trigonometric form")
def test_closed_form():
    rng = random.Random("acceptance:closed-form")
    for n in range(1, 6):
        Z3 = z3c_from_qr(n)
        lam = _rand_c(rng, 0.5, 1.5)
        p = _rand_c(rng, 0.02, 0.2)
        r = closed_form_check(n, lam, ThetaContext(p), Z3)
        assert r.residual <= 1e-8, r.to_json_obj()
        lim = small_nome_check(n, lam, p=1e-8)
        assert lim.residual <= 1e-6, lim.to_json_obj()


@criterion(14, "free energy at zeta = 1 within 2e-2; W(1) and W symmetries within 1e-12")
def test_free_energy():
    est = analysis.free_energy(1, 16)
    target = 1.5 * math.log(3) - 1.75 * math.log(2)
    print(f"extrapolated {est.extrapolated:.6f} target {target:.6f}")
    assert abs(est.extrapolated - target) <= 2e-2
    assert abs(analysis.w_dwbc(1.0) - 3 * math.sqrt(3) / 4) <= 1e-12
    rng = random.Random("acceptance:w")
    for z in [2.0, 0.1] + [rng.uniform(0.05, 20) for _ in range(6)]:
        assert abs(analysis.w_dwbc(z) - analysis.w_dwbc(1 / z)) <= 1e-12 * analysis.w_dwbc(z)
        assert analysis.w_relation_residual(z) <= 1e-12


@criterion(15, "recursion identities exact at 10 random rational points for n <= 3; zeta -> -2 limits")
def test_identity_suite():
    bad = []
    for name, (_, _, nmin) in checks.IDENTITIES.items():
        for n in range(max(1, nmin), 4):
            r = checks.identity_check(name, n, seed=0, samples=10)
            if not r.passed:
                bad.append((name, n, r.detail))
    assert not bad
    for n in range(0, 4):
        r = checks.minus_two_limits_check(n)
        assert r.passed, r.detail
        printed = checks.minus_two_limits_check(n, "printed")
        print(f"n={n}: finite-exponent limits match; printed exponent gives pass={printed.passed}")
