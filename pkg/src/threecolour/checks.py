"""Exact structural checks on S_n, P_n and p_n.

Every function returns a Report; a failing identity is reported, not
raised, so the verification suites can collect all findings in one pass.
Random points are rationals drawn from a seeded generator.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable

from .exactpoly import (
    ZETA,
    RatFunc,
    RatPoly,
    asm_count,
    cspp_count,
    exact_divide,
    laurent_limit,
    valuation_at,
)
from .errors import NotDivisible, ValuationMismatch
from .families import (
    A_POLY,
    G,
    BiTaylor,
    P_poly,
    Zp2,
    chi,
    delta,
    hyper_phi,
    hyper_psi,
    p_degree,
    p_poly,
    p_tilde,
    p_leading,
    s_eval,
    s_zeta_poly,
    y_poly,
)
from .reconstruct import Report

Z = ZETA


def _rand_rational(rng: random.Random, lo: int = -40, hi: int = 40, den: int = 17) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo, hi), rng.randint(1, den))
        if v != 0:
            return v


def _distinct(rng: random.Random, k: int) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < k:
        v = _rand_rational(rng)
        if v not in out:
            out.append(v)
    return out


def _zeta(rng: random.Random) -> Fraction:
    # away from the special values 0, -1, -2, -1/2 where G degenerates
    while True:
        z = _rand_rational(rng, 1, 30, 7)
        if z not in (0, -1, -2, Fraction(-1, 2)):
            return z


def S(args, zeta):
    return s_eval(list(args), zeta)


# ---------------------------------------------------------------------------
# determinant identities among S_n at random points
# ---------------------------------------------------------------------------


def _two_step(n, pts, zeta):
    a, b, c, d, *x = pts
    g = lambda u, v: G(u, v, zeta)
    lhs = (a - b) * (c - d) * S(x, zeta) * S([a, b, c, d, *x], zeta)
    rhs = g(a, d) * g(b, c) * S([a, c, *x], zeta) * S([b, d, *x], zeta) - g(a, c) * g(b, d) * S(
        [a, d, *x], zeta
    ) * S([b, c, *x], zeta)
    return lhs - rhs


def _pluecker(n, pts, zeta):
    a, b, c, d, *x = pts
    g = lambda u, v: G(u, v, zeta)
    return (
        (c - d) * g(a, b) * S([b, *x], zeta) * S([a, c, d, *x], zeta)
        + (d - b) * g(a, c) * S([c, *x], zeta) * S([a, b, d, *x], zeta)
        + (b - c) * g(a, d) * S([d, *x], zeta) * S([a, b, c, *x], zeta)
    )


def _five_point(n, pts, zeta):
    y, a, b, c, d, *x = pts
    g = lambda u, v: G(u, v, zeta)
    Sa, Sc, Sy = S([a, *x], zeta), S([c, *x], zeta), S([y, *x], zeta)
    Sacd, Sabc = S([a, c, d, *x], zeta), S([a, b, c, *x], zeta)
    return (
        (b - d) * (y - a) * (y - c) * Sa * Sc * S([y, a, b, c, d, *x], zeta)
        + (a - y) * g(b, c) * g(y, d) * Sc * Sacd * S([y, a, b, *x], zeta)
        + (y - c) * g(a, d) * g(y, b) * Sa * Sabc * S([y, c, d, *x], zeta)
        + (c - a) * g(y, b) * g(y, d) * Sabc * Sacd * Sy
    )


def _sym_family(m: int, y, a, b, zeta):
    """S_m(y, a^m, b^m)."""
    return S([a] * m + [b] * m + [y], zeta)


def _symmetric(n, pts, zeta):
    y, a, b = pts
    g = lambda u, v: G(u, v, zeta)
    Sm = lambda m, v: _sym_family(m, v, a, b, zeta)
    return (
        (b - a) * (y - a) * (y - b) * Sm(n - 1, a) * Sm(n - 1, b) * Sm(n + 1, y)
        + (
            (a - y) * g(b, b) * g(y, a) * Sm(n - 1, b) * Sm(n, a)
            + (y - b) * g(a, a) * g(y, b) * Sm(n - 1, a) * Sm(n, b)
        )
        * Sm(n, y)
        + (b - a) * g(y, a) * g(y, b) * Sm(n, a) * Sm(n, b) * Sm(n - 1, y)
    )


def _pair_family(m: int, u, v, z, a, b, zeta):
    """S_m(u, v, z, a^{m-1}, b^{m-1}); for m = 0 the arguments u = a and
    v = b cancel against the negative multiplicities."""
    if m == 0:
        if (u, v) != (a, b):
            raise ValueError("S_0 pair family only at (a, b)")
        return S([z], zeta)
    return S([u] + [a] * (m - 1) + [v] + [b] * (m - 1) + [z], zeta)


def _pair(n, pts, zeta):
    x, y, z, a, b = pts
    g = lambda u, v: G(u, v, zeta)
    Sp = lambda m, u, v: _pair_family(m, u, v, z, a, b, zeta)
    lhs = (x - a) * (y - b) * Sp(n - 1, a, b) * Sp(n + 1, x, y)
    rhs = g(a, y) * g(b, x) * Sp(n, a, b) * Sp(n, x, y) - g(a, b) * g(x, y) * Sp(n, x, b) * Sp(n, a, y)
    return lhs - rhs


def _coincident_pair(n, pts, zeta):
    z, a, b = pts
    g = lambda u, v: G(u, v, zeta)
    Sp = lambda m, u, v: _pair_family(m, u, v, z, a, b, zeta)
    lhs = (a - b) ** 2 * Sp(n - 1, a, b) * Sp(n + 1, a, b)
    rhs = g(a, b) ** 2 * Sp(n, a, a) * Sp(n, b, b) - g(a, a) * g(b, b) * Sp(n, a, b) ** 2
    return lhs - rhs


def toda_T(n: int, x, y, z, zeta) -> BiTaylor:
    """T_n = S_n(x^n, y^n, z) to first order in each of x, y."""
    if n == 0:
        return BiTaylor.const(Fraction(1), 1)
    X = BiTaylor.variable(x, 0, 1)
    Y = BiTaylor.variable(y, 1, 1)
    return s_eval([X] * n + [Y] * n + [BiTaylor.const(z, 1)], zeta)


def _toda(n, pts, zeta):
    x, y, z = pts
    Tm, Tn, Tp = (toda_T(m, x, y, z, zeta) for m in (n - 1, n, n + 1))
    g = G(BiTaylor.variable(x, 0, 1), BiTaylor.variable(y, 1, 1), zeta)
    d = lambda f, i, j: f.derivative(i, j)
    lhs = d(Tm, 0, 0) * d(Tp, 0, 0)
    rhs = (d(g, 1, 0) * d(g, 0, 1) - d(g, 0, 0) * d(g, 1, 1)) * d(Tn, 0, 0) ** 2 + Fraction(1, n * n) * d(
        g, 0, 0
    ) ** 2 * (d(Tn, 0, 0) * d(Tn, 1, 1) - d(Tn, 1, 0) * d(Tn, 0, 1))
    return lhs - rhs


# name -> (residual function, number of free points as a function of n, least n)
IDENTITIES: dict[str, tuple[Callable, Callable[[int], int], int]] = {
    "two-step": (_two_step, lambda n: 4 + 2 * n - 1, 1),
    "pluecker": (_pluecker, lambda n: 4 + 2 * n - 2, 1),
    "five-point": (_five_point, lambda n: 5 + 2 * n - 2, 1),
    "symmetric-recursion": (_symmetric, lambda n: 3, 1),
    "pair-recursion": (_pair, lambda n: 5, 1),
    "coincident-pair": (_coincident_pair, lambda n: 3, 1),
    "toda": (_toda, lambda n: 3, 1),
}


def identity_check(name: str, n: int, seed: int = 0, samples: int = 10) -> Report:
    fn, npts, nmin = IDENTITIES[name]
    if n < nmin:
        raise ValueError(f"{name} needs n >= {nmin}")
    rng = random.Random(f"{name}:{n}:{seed}")
    done = skipped = 0
    while done < samples:
        zeta = _zeta(rng)
        pts = _distinct(rng, npts(n))
        try:
            r = fn(n, pts, zeta)
        except ZeroDivisionError:
            # a pole of the identity, not a counterexample: draw again
            skipped += 1
            if skipped > 5 * samples:
                return Report(name, n, False, {"error": "too many degenerate sample points"})
            continue
        if r != 0:
            return Report(name, n, False, {"sample": done, "zeta": str(zeta), "residual": str(r)})
        done += 1
    return Report(name, n, True, {"samples": samples, "seed": seed, "resampled": skipped})


def inversion_check(n: int, seed: int = 0, samples: int = 5) -> Report:
    """S_n(1/x; 1/zeta) = S_n(x; zeta) / (zeta^{2n^2} prod x_i^n)."""
    rng = random.Random(f"inversion:{n}:{seed}")
    for s in range(samples):
        zeta = _zeta(rng)
        xs = _distinct(rng, 2 * n + 1)
        lhs = S([1 / v for v in xs], 1 / zeta)
        rhs = S(xs, zeta) / (zeta ** (2 * n * n) * math.prod(xs) ** n)
        if lhs != rhs:
            return Report("inversion", n, False, {"sample": s})
    return Report("inversion", n, True, {"samples": samples})


# ---------------------------------------------------------------------------
# specializations at 2 zeta + 1 and zeta / (zeta + 2)
# ---------------------------------------------------------------------------

_FACTORS = {"zeta": Fraction(0), "zeta+1": Fraction(-1), "2zeta+1": Fraction(-1, 2), "zeta+2": Fraction(-2)}


def _orders(poly: RatPoly) -> dict[str, int]:
    return {k: valuation_at(poly, v) for k, v in _FACTORS.items()}


def specialization_check(n: int, seed: int = 0) -> Report:
    """The three specializations of S_n that define P_n, p_n and y_n (plus
    the reversed p_n form), checked as exact identities and by their
    orders of vanishing at zeta = 0, -1, -1/2, -2."""
    half = RatPoly([1, Fraction(1, 2)])  # 1 + zeta/2
    one = RatPoly([1, 1])
    rng = random.Random(f"specialization:{n}:{seed}")
    x0 = _rand_rational(rng)
    cases = []
    sgn = -1 if (n * (n + 1) // 2) % 2 else 1
    # S_n(x, a^n, b^n)
    lhs = s_zeta_poly(n, [x0] + ["a"] * n + ["b"] * n) / 2 ** (n * n)
    core = P_poly(n).eval_x(x0)
    pref = Z ** (n * n) * one ** (n * n) * A_POLY ** delta(n - 1) * half ** delta(n - 1) * sgn
    cases.append(("P", lhs, pref, core, {"zeta": n * n, "zeta+1": n * n, "2zeta+1": delta(n - 1), "zeta+2": delta(n - 1)}))
    # S_n(a^{n+1}, b^n)
    lhs = s_zeta_poly(n, ["a"] * (n + 1) + ["b"] * n) / 2 ** (n * n)
    pref = Z ** (n * n) * one ** (n * n) * A_POLY ** delta(n) * half ** delta(n - 1) * sgn
    cases.append(("p", lhs, pref, p_poly(n), {"zeta": n * n, "zeta+1": n * n, "2zeta+1": delta(n), "zeta+2": delta(n - 1)}))
    # S_n(a^{n+2}, b^{n-1})
    if n >= 1:
        lhs = s_zeta_poly(n, ["a"] * (n + 2) + ["b"] * (n - 1)) / 2 ** (n * (n - 1))
        s2 = -1 if ((n - 1) * (n - 2) // 2) % 2 else 1
        pref = (
            Z ** (n * n - 1)
            * one ** (n * n)
            * A_POLY ** delta(n + 1)
            * half ** delta(n - 2)
            * (s2 * 2 ** ((n + 5) // 2))
        )
        orders = {"zeta": n * n - 1, "zeta+1": n * n, "2zeta+1": delta(n + 1), "zeta+2": delta(n - 2)}
        cases.append(("y", lhs, pref, y_poly(n), orders))
    # S_n(a^n, b^{n+1})
    lhs = s_zeta_poly(n, ["a"] * n + ["b"] * (n + 1)) / 2 ** (n * (n + 1))
    pref = (
        Z ** (n * (n + 1))
        * one ** (n * n)
        * A_POLY ** delta(n - 1)
        * half ** delta(n)
        * (sgn * Fraction(1, 2 ** ((n + 1) // 2)))
    )
    cases.append(("p-reversed", lhs, pref, p_tilde(n), {"zeta": n * (n + 1), "zeta+1": n * n, "2zeta+1": delta(n - 1), "zeta+2": delta(n)}))
    detail = {}
    ok = True
    for name, lhs, pref, core, orders in cases:
        same = lhs == pref * core
        got = _orders(lhs)
        # the specialized family itself is nonzero at the four points
        core_free = all(core(v) != 0 for v in _FACTORS.values())
        good = same and core_free and got == orders
        # the leading Laurent coefficient at each point is finite and nonzero
        for k, v in _FACTORS.items():
            try:
                laurent_limit(RatFunc(lhs), v, -orders[k])
            except ValuationMismatch:
                good = False
        detail[name] = {"identity": same, "orders": got, "expected_orders": orders}
        ok = ok and good
    return Report("specializations", n, ok, detail)


def _minus_two_limit(n: int, na: int, nb: int, exponent: int) -> Fraction:
    num = s_zeta_poly(n, ["a"] * na + ["b"] * nb)
    expr = RatFunc(num, Zp2 ** (n * nb))
    # (1 + zeta/2)^e = 2^-e (zeta + 2)^e
    return laurent_limit(expr, -2, exponent) / 2 ** exponent


def minus_two_targets(n: int) -> tuple[Fraction, Fraction]:
    A, C = asm_count(n + 1), cspp_count(n + 1)
    if n % 2 == 0:
        return (
            Fraction(2 ** (n * n) * 3 ** (n * n // 4) * A),
            Fraction(2 ** (n * n - 1) * 3 ** (n * (n - 2) // 4) * C),
        )
    return (
        Fraction(2 ** (n * n) * 3 ** ((n * n - 1) // 4) * C),
        Fraction(2 ** (n * n - 1) * 3 ** ((n - 1) ** 2 // 4) * A),
    )


def minus_two_limits_check(n: int, second_exponent: str = "finite") -> Report:
    """Both zeta -> -2 limits in terms of A_{n+1} and C_{n+1}.

    The first scaling exponent is n^2 - [(n-1)^2/4].  For the second,
    ``"printed"`` uses n(n+1) - [(n-1)^2/4] and ``"finite"`` uses
    n(n+1) - [n^2/4], the exponent at which the rescaled S_n has a finite
    nonzero limit (the two agree only for n <= 1).
    """
    want1, want2 = minus_two_targets(n)
    e1 = n * n - (n - 1) ** 2 // 4
    if second_exponent == "printed":
        e2 = n * (n + 1) - (n - 1) ** 2 // 4
    elif second_exponent == "finite":
        e2 = n * (n + 1) - delta(n)
    else:
        raise ValueError(second_exponent)
    detail = {"exponents": [e1, e2]}
    try:
        got1 = _minus_two_limit(n, n + 1, n, e1)
        detail["first"] = [str(got1), str(want1)]
        got2 = _minus_two_limit(n, n, n + 1, e2)
        detail["second"] = [str(got2), str(want2)]
    except ValuationMismatch as exc:
        detail["valuation_mismatch"] = exc.valuation
        return Report("minus-two-limits", n, False, detail)
    return Report("minus-two-limits", n, got1 == want1 and got2 == want2, detail)


# ---------------------------------------------------------------------------
# P_n structure
# ---------------------------------------------------------------------------


def reflection_check(n: int) -> Report:
    """P_n(x, zeta) = x^n zeta^D P_n(1/x, 1/zeta), D = [n(n+2)/2]."""
    P = P_poly(n)
    D = n * (n + 2) // 2
    ok = all(P.row(k) == P.row(n - k).reverse(D) for k in range(n + 1))
    return Report("P-reflection", n, ok, {"zeta_degree": D})


def coefficient_structure_check(n: int) -> Report:
    """P_n = sum_k f_k(zeta) zeta^{n-k} x^k with the stated degree, leading
    coefficient, reversal symmetry, (zeta+2)-divisibility and the two top
    coefficients in terms of p_{n-1}."""
    P = P_poly(n)
    half = RatPoly([1, Fraction(1, 2)])
    try:
        f = [exact_divide(P.row(k), Z ** (n - k)) for k in range(n + 1)]
    except NotDivisible:
        return Report("P-coefficients", n, False, {"error": "zeta^(n-k) does not divide"})
    D = 2 * delta(n)
    problems = []
    for k, fk in enumerate(f):
        if fk.degree() != D:
            problems.append(f"degree f_{k}")
        if fk.lead() != Fraction(math.comb(n + k, n), 2 ** k):
            problems.append(f"leading f_{k}")
        if fk != f[n - k].reverse(D):
            problems.append(f"reversal f_{k}")
        m = k - (n + 1) // 2
        if m > 0:
            try:
                exact_divide(fk, Zp2 ** m)
            except NotDivisible:
                problems.append(f"divisibility f_{k}")
    if n >= 1:
        if f[n] != half ** (n // 2) * p_poly(n - 1):
            problems.append("top coefficient")
        rhs = RatPoly([n + 1, 1]) * p_poly(n - 1) / 2
        e = n // 2 - 1
        lhs = f[n - 1] if e >= 0 else f[n - 1] * half
        if lhs != (rhs * half ** e if e >= 0 else rhs):
            problems.append("second coefficient")
    return Report("P-coefficients", n, not problems, {"problems": problems})


def _closed_form(phi: RatPoly, num: RatPoly, base: RatPoly, m: int, total: int) -> RatPoly:
    """base^total * phi(num / base^m) as a polynomial."""
    out = RatPoly()
    for k, c in enumerate(phi.coeffs):
        if c:
            out = out + num ** k * base ** (total - m * k) * c
    return out


def special_zeta_check(n: int) -> Report:
    """P_n(x, zeta) at zeta = 0, -1, 1, -2 as closed forms in x."""
    P = P_poly(n)
    X = RatPoly([0, 1])
    A, C = asm_count(n + 1), cspp_count(n + 1)
    detail = {}
    detail["zeta=0"] = P.eval_zeta(0) == X ** n
    s = -1 if n % 4 == 2 else 1
    detail["zeta=-1"] = P.eval_zeta(-1) == RatPoly([-1, 1]) ** n * (s * Fraction(2) ** delta(n - 1))
    lead = Fraction(2) ** (delta(n - 1) - n) * 3 ** (n // 2) * A
    at1 = _closed_form(hyper_phi(n), RatPoly([1, Fraction(-10, 3), 1]), RatPoly([1, 1]), 2, n) * lead
    detail["zeta=1"] = P.eval_zeta(1) == at1
    one_minus = RatPoly([1, -1])
    third = RatPoly([1, Fraction(1, 3)])  # (x + 3)/3
    if n % 2 == 0:
        atm2 = _closed_form(hyper_phi(n), third, one_minus, 1, n // 2) * (Fraction(-3, 4) ** (n // 2) * A)
    else:
        atm2 = _closed_form(hyper_psi(n), third, one_minus, 1, (n + 1) // 2) * (
            -Fraction(3 ** ((n - 1) // 2), 2 ** (n + 1)) * C
        )
    detail["zeta=-2"] = P.eval_zeta(-2) == atm2
    return Report("P-special-values", n, all(detail.values()), detail)


def special_values_check(n: int) -> Report:
    """Degree, leading coefficient and the values of p_n at -1, 1, -2, -1/2."""
    p = p_poly(n)
    A, C = asm_count(n + 1), cspp_count(n + 1)
    d1 = delta(n + 1)
    want = {
        "-1": Fraction((-1) ** chi(n % 4 == 1) * 2 ** d1),
        "1": Fraction(2 ** d1 * A),
        "-2": Fraction(A) if n % 2 == 0 else Fraction((-1) ** ((n + 1) // 2) * C),
        "-1/2": (
            Fraction(C, 2 ** ((n * n + 2 * n + 2) // 2))
            if n % 2 == 0
            else Fraction((-1) ** ((n + 1) // 2) * A, 2 ** ((n + 1) ** 2 // 2))
        ),
    }
    got = {k: p(Fraction(k)) for k in want}
    ok = got == want and p.degree() == p_degree(n) and p.lead() == p_leading(n)
    return Report(
        "p-special-values",
        n,
        ok,
        {"values": {k: str(v) for k, v in got.items()}, "degree": p.degree(), "lead": str(p.lead())},
    )


def linear_coefficient_formula(n: int, odd_form: str = "printed") -> Fraction:
    """Closed form for the zeta^1 coefficient of p_n.

    For odd n, ``"printed"`` is 7(n^2+2n+3)/8 and ``"fitted"`` is
    (7(n^2+2n)+3)/8; only the latter matches p_1 = 3 zeta + 1.
    """
    if n % 2 == 0:
        return Fraction(7 * n * (n + 2), 8)
    if odd_form == "printed":
        return Fraction(7 * (n * n + 2 * n + 3), 8)
    return Fraction(7 * (n * n + 2 * n) + 3, 8)


def linear_coefficient_check(n: int, odd_form: str = "printed") -> Report:
    want = linear_coefficient_formula(n, odd_form)
    got = p_poly(n).coeff(1)
    return Report("p-linear-coefficient", n, got == want, {"got": str(got), "expected": str(want)})


def hypergeometric_check(n: int) -> Report:
    """Three-term contiguous relations linking phi_n and psi_n."""
    if n < 1:
        raise ValueError("needs n >= 1")
    x = RatPoly([0, 1])
    sq = RatPoly([1, -1]) ** 2
    phi, psi = hyper_phi, hyper_psi
    r1 = Fraction(3 * (3 * n + 2) * (3 * n + 4), (2 * n + 1) * (2 * n + 3)) * x * phi(n + 1) == (
        RatPoly([-1, 9]) * phi(n) + sq * phi(n - 1)
    )
    r2 = RatPoly([1, 3]) * psi(n) == (
        Fraction(3 * (3 * n + 1) * (3 * n + 4), (2 * n + 1) * (2 * n + 3)) * x * phi(n + 1) + sq * phi(n - 1)
    )
    r3 = RatPoly([1, 3]) ** 2 * phi(n) == (
        Fraction(3 * (3 * n + 2) * (3 * n + 5), (2 * n + 1) * (2 * n + 3)) * x * psi(n + 1) + sq * psi(n - 1)
    )
    return Report("hypergeometric", n, r1 and r2 and r3, {"phi": r1, "psi-from-phi": r2, "phi-from-psi": r3})
