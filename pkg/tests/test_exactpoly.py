from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from threecolour.errors import Inconsistent, NotDivisible, ValuationMismatch
from threecolour.exactpoly import (
    BiPoly,
    RatFunc,
    RatPoly,
    SturmChain,
    asm_count,
    cspp_count,
    exact_divide,
    interpolate,
    laurent_limit,
    poly_divmod,
    poly_gcd,
    reverse_coefficients,
    solve_exact_linear,
    squarefree_part,
    sturm_real_roots,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
coeff_lists = st.lists(fractions, max_size=7)


def naive_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def naive_eval(cs, v):
    return sum((c * v**k for k, c in enumerate(cs)), Fraction(0))


@given(coeff_lists, coeff_lists)
def test_mul_matches_schoolbook(a, b):
    assert RatPoly(a) * RatPoly(b) == RatPoly(naive_mul(a, b))


@given(coeff_lists, coeff_lists, fractions)
def test_ring_homomorphism(a, b, v):
    A, B = RatPoly(a), RatPoly(b)
    assert (A + B)(v) == naive_eval(a, v) + naive_eval(b, v)
    assert (A * B)(v) == naive_eval(a, v) * naive_eval(b, v)
    assert (A - B)(v) == naive_eval(a, v) - naive_eval(b, v)


@given(coeff_lists, coeff_lists)
def test_divmod_identity(a, b):
    A, B = RatPoly(a), RatPoly(b)
    assume(not B.is_zero())
    q, r = poly_divmod(A, B)
    assert q * B + r == A
    assert r.is_zero() or r.degree() < B.degree()


@given(coeff_lists, coeff_lists)
def test_exact_divide(a, b):
    A, B = RatPoly(a), RatPoly(b)
    assume(not B.is_zero())
    assert exact_divide(A * B, B) == A


def test_exact_divide_raises():
    with pytest.raises(NotDivisible):
        exact_divide(RatPoly([1, 0, 1]), RatPoly([1, 1]))


@given(coeff_lists, fractions)
def test_taylor_shift_and_compose(a, s):
    A = RatPoly(a)
    shifted = A.taylor_shift(s)
    assert shifted == A.compose(RatPoly([s, 1]))


@given(coeff_lists)
def test_reverse_is_involution(a):
    A = RatPoly(a)
    assume(not A.is_zero() and A.coeff(0) != 0)
    assert reverse_coefficients(reverse_coefficients(A)) == A


@given(coeff_lists)
def test_json_round_trip(a):
    A = RatPoly(a)
    assert RatPoly.from_json(A.to_json()) == A


def test_zero_and_degree():
    assert RatPoly().is_zero()
    assert RatPoly([0, 0]).degree() == -1 or RatPoly([0, 0]).is_zero()
    assert RatPoly([1, 2, 3]).degree() == 2
    assert RatPoly([Fraction(1, 2), 3]).is_integral() is False


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=1, max_size=6, unique=True))
@settings(deadline=None)
def test_sturm_counts_rational_roots(roots):
    p = RatPoly([1])
    for r in roots:
        p = p * RatPoly([-r, 1])
    p = p * RatPoly([1, 0, 1])  # no real roots added
    rep = sturm_real_roots(p)
    assert rep.count == len(roots)
    for (a, b), r in zip(rep.intervals, sorted(roots)):
        assert a < r <= b


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=1, max_size=4, unique=True))
@settings(deadline=None)
def test_multiplicity_and_squarefree(roots):
    p = RatPoly([1])
    for k, r in enumerate(roots):
        p = p * RatPoly([-r, 1]) ** (k + 1)
    rep = sturm_real_roots(p)
    assert rep.multiplicities == tuple(roots.index(r) + 1 for r in sorted(roots))
    assert squarefree_part(p).degree() == len(roots)


def test_sturm_window_count():
    chain = SturmChain(RatPoly([-2, 0, 1]))
    assert chain.count(0, 2) == 1
    assert chain.count() == 2


@given(coeff_lists, coeff_lists, coeff_lists)
@settings(deadline=None)
def test_gcd_divides(a, b, c):
    A, B, C = RatPoly(a), RatPoly(b), RatPoly(c)
    assume(not C.is_zero() and not (A.is_zero() and B.is_zero()))
    g = poly_gcd(A * C, B * C)
    exact_divide(g, C)
    exact_divide(A * C, g)
    exact_divide(B * C, g)


@given(st.lists(fractions, min_size=1, max_size=6, unique=True), st.data())
def test_interpolate(xs, data):
    ys = data.draw(st.lists(fractions, min_size=len(xs), max_size=len(xs)))
    p = interpolate(xs, ys)
    assert [p(x) for x in xs] == ys
    assert p.degree() < len(xs)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_linear_solve(A, x):
    b = [sum(Fraction(a) * v for a, v in zip(row, x)) for row in A]
    sol = solve_exact_linear(A, b)
    got = [sum(Fraction(a) * v for a, v in zip(row, sol.particular)) for row in A]
    assert got == b
    for k in sol.kernel:
        assert all(sum(Fraction(a) * v for a, v in zip(row, k)) == 0 for row in A)


def test_linear_inconsistent():
    with pytest.raises(Inconsistent):
        solve_exact_linear([[1, 1], [2, 2]], [1, 3])


def test_laurent_limit():
    # (z^2 - 4) / (z + 2)^3 behaves like -4/(z+2)^2 at -2
    f = RatFunc(RatPoly([-4, 0, 1]), RatPoly([2, 1]) ** 3)
    assert laurent_limit(f, -2, 2) == -4
    with pytest.raises(ValuationMismatch):
        laurent_limit(f, -2, 1)


def test_bipoly_eval():
    P = BiPoly([RatPoly([1, 2]), RatPoly([0, 3])])  # (1 + 2z) + 3 z x
    assert P(2, 5) == 11 + 30
    assert P.eval_zeta(5) == RatPoly([11, 15])
    assert P.transpose().transpose() == P


def test_asm_and_cspp_counts():
    assert [asm_count(n) for n in range(0, 8)] == [1, 1, 2, 7, 42, 429, 7436, 218348]
    assert [cspp_count(n) for n in range(0, 7)] == [1, 2, 5, 20, 132, 1452, 26741]
