from fractions import Fraction

import pytest

from threecolour import checks
from threecolour.exactpoly import asm_count, cspp_count
from threecolour.families import p_poly


@pytest.mark.parametrize("name", list(checks.IDENTITIES))
@pytest.mark.parametrize("n", [1, 2])
def test_identities_small(name, n):
    r = checks.identity_check(name, n, seed=3, samples=4)
    assert r.passed, r.detail


def test_identity_rejects_small_n():
    with pytest.raises(ValueError):
        checks.identity_check("two-step", 0)


@pytest.mark.parametrize("n", [1, 2])
def test_inversion(n):
    assert checks.inversion_check(n, seed=1).passed


@pytest.mark.parametrize("n", range(0, 4))
def test_specializations(n):
    assert checks.specialization_check(n).passed


@pytest.mark.parametrize("n", range(0, 4))
def test_minus_two_limits(n):
    r = checks.minus_two_limits_check(n)
    assert r.passed, r.detail


def test_minus_two_targets_small():
    # n = 1: 2 * 1 * C_2 and 1 * 1 * A_2
    assert checks.minus_two_targets(1) == (2 * cspp_count(2), asm_count(2))
    assert checks.minus_two_targets(2) == (16 * 3 * asm_count(3), 8 * cspp_count(3))


@pytest.mark.parametrize("n", [2, 3])
def test_printed_second_exponent_has_no_finite_limit(n):
    # recorded finding: with n(n+1) - [(n-1)^2/4] the rescaled limit vanishes
    r = checks.minus_two_limits_check(n, "printed")
    assert not r.passed
    assert "valuation_mismatch" in r.detail or r.detail["second"][0] == "0"


def test_p3_at_minus_two_is_cspp():
    assert p_poly(3)(-2) == 132 == cspp_count(4)


@pytest.mark.parametrize("n", range(0, 17))
def test_special_values(n):
    assert checks.special_values_check(n).passed


@pytest.mark.parametrize("n", range(1, 17))
def test_linear_coefficient_fitted(n):
    assert checks.linear_coefficient_check(n, "fitted").passed


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_linear_coefficient_printed_odd_fails(n):
    # recorded finding: the printed odd-n form misses p_1 = 3 zeta + 1
    assert not checks.linear_coefficient_check(n, "printed").passed
    assert checks.linear_coefficient_formula(1, "fitted") == 3


@pytest.mark.parametrize("n", [2, 4, 6])
def test_linear_coefficient_even(n):
    assert checks.linear_coefficient_check(n, "printed").passed


@pytest.mark.parametrize("n", range(0, 7))
def test_structure_checks(n):
    assert checks.special_zeta_check(n).passed
    assert checks.coefficient_structure_check(n).passed
    assert checks.reflection_check(n).passed


@pytest.mark.parametrize("n", range(1, 7))
def test_hypergeometric(n):
    assert checks.hypergeometric_check(n).passed


def test_random_rationals_are_reproducible():
    import random

    a = [checks._rand_rational(random.Random(5)) for _ in range(3)]
    b = [checks._rand_rational(random.Random(5)) for _ in range(3)]
    assert a == b and all(isinstance(v, Fraction) for v in a)
