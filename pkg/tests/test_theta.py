import cmath
import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threecolour.errors import NomeOutOfRange, SizeGuardError, ZeroArgument
from threecolour.reconstruct import z3c_from_qr
from threecolour.theta import (
    ENV_BITS,
    ThetaContext,
    addition_residual,
    closed_form_check,
    constants_residual,
    crossing_symmetry_check,
    cyclic_sum_check,
    determinant_check,
    gamma_check,
    modular_constants,
    parametrization_check,
    product_residual,
    quasi_periodicity_check,
    random_sample,
    run_parallel,
    small_nome_check,
    specialization_recursion_check,
    theta_eval,
    three_colour_check,
    trigonometric_check,
    z8vsos_brute,
    z8vsos_ik,
)


def jacobi_oracle(x, p):
    """theta(x; p) through mpmath's Jacobi theta_1 with x = e^{2iz}, q^2 = p."""
    z = mpmath.log(x) / 2j
    q = mpmath.sqrt(p)
    pp = mpmath.qp(p, p)
    return -1j * mpmath.exp(1j * z) * mpmath.jtheta(1, z, q) / (q ** mpmath.mpf(0.25) * pp)


@given(
    st.floats(0.01, 0.6),
    st.floats(0.3, 2.5),
    st.floats(-math.pi, math.pi),
)
@settings(max_examples=40, deadline=None)
def test_theta_matches_jacobi(p, r, phi):
    x = cmath.rect(r, phi)
    got = theta_eval(x, p)
    want = complex(jacobi_oracle(x, p))
    assert abs(got - want) <= 1e-12 * max(1, abs(want))


@given(st.floats(0.02, 0.5), st.floats(-math.pi, math.pi), st.floats(0.4, 2.0), st.floats(-math.pi, math.pi))
@settings(max_examples=40, deadline=None)
def test_quasi_periodicity(pr, pphi, r, phi):
    p = cmath.rect(pr, pphi)
    x = cmath.rect(r, phi)
    ctx = ThetaContext(p)
    lhs = ctx.theta(p * x)
    rhs = -ctx.theta(x) / x
    assert abs(lhs - rhs) <= 1e-11 * max(1, abs(rhs))
    assert abs(ctx.theta(1 / x) + ctx.theta(x) / x) <= 1e-11 * max(1, abs(ctx.theta(x)))


def test_context_guards():
    for bad in (0, 1, 1.5, -1):
        with pytest.raises(NomeOutOfRange):
            ThetaContext(bad)
    with pytest.raises(ZeroArgument):
        ThetaContext(0.1).theta(0)
    ctx = ThetaContext(0.1)
    with pytest.raises(AttributeError):
        ctx.p = 0.2
    with pytest.raises(ValueError):
        ThetaContext(0.1, "bits:20")
    with pytest.raises(ValueError):
        ThetaContext(0.1, "quad")


def test_extended_precision_agrees():
    x = complex(0.7, 0.4)
    lo = ThetaContext(0.3).theta(x)
    hi = ThetaContext(0.3, "bits:200").theta(x)
    assert abs(lo - complex(hi)) < 1e-14
    assert abs(hi - jacobi_oracle(mpmath.mpc(x), mpmath.mpf(0.3))) < 1e-14


def test_precision_env(monkeypatch):
    monkeypatch.setenv(ENV_BITS, "96")
    assert ThetaContext(0.1).bits == 96


def test_truncation_order():
    assert ThetaContext(0.1).J == 18
    assert ThetaContext(0.1).terms(3) == 6


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("seed", range(4))
def test_vertex_checks(n, seed):
    s = random_sample(n, seed)
    reports = [
        determinant_check(n, s),
        gamma_check(n, s),
        quasi_periodicity_check(n, s),
        crossing_symmetry_check(n, s),
        cyclic_sum_check(n, s),
    ]
    if n >= 2:
        reports.append(specialization_recursion_check(n, s))
    for r in reports:
        assert r.passed, r.to_json_obj()


def test_brute_agrees_with_determinant_directly():
    s = random_sample(2, 11)
    ctx = ThetaContext(s.p)
    a = z8vsos_brute(2, s.xs, s.ys, s.lam, ctx)
    b = z8vsos_ik(2, s.xs, s.ys, s.lam, ctx)
    assert abs(a - b) <= 1e-10 * abs(a)


def test_brute_guard():
    s = random_sample(5, 0)
    with pytest.raises(SizeGuardError):
        z8vsos_brute(5, s.xs, s.ys, s.lam, ThetaContext(s.p))


def test_brute_zero_size():
    assert z8vsos_brute(0, (), (), 1.2, ThetaContext(0.1)) == 1


@pytest.mark.parametrize("p", [0.05, 0.25j, complex(-0.2, 0.1)])
def test_modular_identities(p):
    ctx = ThetaContext(p)
    mc = modular_constants(ctx)
    assert max(mc.residuals.values()) <= 1e-10
    assert constants_residual(ctx) <= 1e-10
    assert product_residual(ctx, complex(0.8, 0.3)) <= 1e-10
    x, y, z, w = (complex(0.9, 0.2), complex(1.1, -0.3), complex(0.7, 0.5), complex(1.2, 0.1))
    assert addition_residual(ctx, x, y, z, w) <= 1e-10


@pytest.mark.parametrize("n", range(1, 6))
def test_closed_form(n):
    rng = random.Random(n)
    lam = cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(-3, 3))
    ctx = ThetaContext(cmath.rect(rng.uniform(0.02, 0.2), rng.uniform(-3, 3)))
    Z3 = z3c_from_qr(n)
    assert closed_form_check(n, lam, ctx, Z3).passed
    assert trigonometric_check(n, lam, Z3).passed
    assert small_nome_check(n, lam).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_three_colour_weights(n):
    ctx = ThetaContext(complex(0.1, 0.05))
    assert three_colour_check(n, complex(0.9, 0.4), ctx, z3c_from_qr(n)).passed


def test_parametrization():
    ctx = ThetaContext(0.15)
    assert parametrization_check(ctx, [complex(0.8, 0.3), complex(1.2, -0.4), 0.9j]).passed


def test_run_parallel_preserves_order():
    assert run_parallel(lambda v: v * v, range(10), jobs=4) == [v * v for v in range(10)]
