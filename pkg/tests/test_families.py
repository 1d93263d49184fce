from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from threecolour import reference
from threecolour.exactpoly import RatPoly, asm_count
from threecolour.families import (
    P_poly,
    delta,
    hyper_phi,
    hyper_psi,
    manifest,
    p_degree,
    p_poly,
    p_tilde,
    p_via_bezout,
    p_via_det,
    p_leading,
    qr_degrees,
    qr_polys,
    s_eval,
    y_leading,
    y_poly,
)


@pytest.mark.parametrize("n", range(0, 7))
def test_p_table(n):
    assert p_poly(n) == reference.p_reference(n)


@pytest.mark.parametrize("n", range(0, 8))
def test_qr_table(n):
    assert qr_polys(n) == reference.qr_reference(n)


@pytest.mark.parametrize("n", range(0, 5))
def test_P_table(n):
    assert P_poly(n) == reference.P_reference(n)


@pytest.mark.parametrize("n", range(0, 10))
def test_bezout_route_agrees(n):
    assert p_via_bezout(n) == p_poly(n + 1)


@pytest.mark.parametrize("n", range(1, 4))
def test_determinant_route_agrees(n):
    assert p_via_det(n) == p_poly(n)


def test_determinant_route_guard():
    with pytest.raises(ValueError):
        p_via_det(5)


@pytest.mark.parametrize("n", range(0, 13))
def test_p_at_one_counts_asms(n):
    assert p_poly(n)(1) == 2 ** delta(n + 1) * asm_count(n + 1)


@pytest.mark.parametrize("n", range(0, 13))
def test_degree_and_leading(n):
    p = p_poly(n)
    assert p.degree() == p_degree(n)
    assert p.lead() == p_leading(n)
    assert p_tilde(n).coeff(0) == p.lead()


@pytest.mark.parametrize("n", range(1, 9))
def test_y_leading(n):
    assert y_poly(n).lead() == y_leading(n)


@pytest.mark.parametrize("n", range(1, 17))
def test_qr_degree_table(n):
    q, r = qr_polys(n)
    assert (q.degree(), r.degree()) == qr_degrees(n)


def test_hypergeometric_terminate():
    assert hyper_phi(0) == RatPoly([1])
    assert hyper_phi(3).degree() == 1
    assert hyper_psi(4).degree() == 2


def test_manifest_is_stable():
    a = manifest("p", 3, p_poly(3), "recursion")
    b = manifest("p", 3, RatPoly(list(p_poly(3).coeffs)), "recursion")
    assert a["sha256"] == b["sha256"]
    assert a["degree"] == 6
    assert Fraction(a["leading_coefficient"]) == Fraction(35, 2)


small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@given(st.lists(small, min_size=5, max_size=5, unique=True), small, st.permutations(range(2)))
@settings(max_examples=25, deadline=None)
def test_s_symmetric_in_x_block(xs, zeta, perm):
    assume(zeta not in (0, -1, -2))
    try:
        base = s_eval(xs, zeta)
    except ZeroDivisionError:
        assume(False)
    swapped = [xs[perm[0]], xs[perm[1]]] + xs[2:]
    assert s_eval(swapped, zeta) == base

