"""Polynomial families attached to the three-colour model.

The symmetric polynomial S_n is evaluated from its determinant formula; when
arguments in the same slot block coincide, the slots are perturbed by
multiples of a formal epsilon and the computation runs in truncated power
series.  The bivariate family P_n(x, zeta) comes from a three-term recursion
in n; p_n, y_n, q_n and r_n are derived from it.  Independent routes
(Bezout solve, derivative determinant) reproduce p_n for cross-checking.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .errors import AmbiguousNormalization, DegenerateCoefficient, Inconsistent, NotDivisible, NotMonic
from .exactpoly import (
    ZETA,
    BiPoly,
    RatPoly,
    Series,
    exact_divide,
    interpolate,
    solve_exact_linear,
)

Z = ZETA
ONE = RatPoly([1])


def chi(cond: bool) -> int:
    return 1 if cond else 0


def delta(n: int) -> int:
    """[n^2/4]."""
    return n * n // 4


# ---------------------------------------------------------------------------
# The kernels F and G (duck-typed: arguments may be any field elements)
# ---------------------------------------------------------------------------


def F(x, y, z, zeta):
    return (zeta + 2) * x * y * z - zeta * (x * y + y * z + x * z + x + y + z) + zeta * (2 * zeta + 1)


def G(x, y, zeta):
    return (
        (zeta + 2) * x * y * (x + y)
        - zeta * (x * x + y * y)
        - 2 * (zeta * zeta + 3 * zeta + 1) * x * y
        + zeta * (2 * zeta + 1) * (x + y)
    )


@dataclass(frozen=True)
class FGKernel:
    """F and G at a fixed zeta (rational, series or any field element)."""

    zeta: object

    def F(self, x, y, z):
        return F(x, y, z, self.zeta)

    def G(self, x, y):
        return G(x, y, self.zeta)


# ---------------------------------------------------------------------------
# Truncated bivariate Taylor series (for derivatives)
# ---------------------------------------------------------------------------


class BiTaylor:
    """Series in two nilpotent directions u, v truncated above degree
    ``order`` in each."""

    __slots__ = ("c", "order")

    def __init__(self, c, order: int):
        self.c = c
        self.order = order

    @classmethod
    def const(cls, v, order: int) -> "BiTaylor":
        c = [[0] * (order + 1) for _ in range(order + 1)]
        c[0][0] = v
        return cls(c, order)

    @classmethod
    def variable(cls, v, direction: int, order: int) -> "BiTaylor":
        t = cls.const(v, order)
        if order >= 1:
            if direction == 0:
                t.c[1][0] = 1
            else:
                t.c[0][1] = 1
        return t

    def _lift(self, o):
        return o if isinstance(o, BiTaylor) else BiTaylor.const(o, self.order)

    def __add__(self, o):
        o = self._lift(o)
        N = self.order + 1
        return BiTaylor([[self.c[i][j] + o.c[i][j] for j in range(N)] for i in range(N)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return BiTaylor([[-v for v in row] for row in self.c], self.order)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        N = self.order + 1
        if not isinstance(o, BiTaylor):
            return BiTaylor([[v * o for v in row] for row in self.c], self.order)
        out = [[0] * N for _ in range(N)]
        for i in range(N):
            for j in range(N):
                a = self.c[i][j]
                if a == 0:
                    continue
                for k in range(N - i):
                    row = o.c[k]
                    orow = out[i + k]
                    for l in range(N - j):
                        if row[l] != 0:
                            orow[j + l] += a * row[l]
        return BiTaylor(out, self.order)

    __rmul__ = __mul__

    def inverse(self) -> "BiTaylor":
        N = self.order + 1
        f = self.c
        inv0 = 1 / f[0][0]
        g = [[0] * N for _ in range(N)]
        for i in range(N):
            for j in range(N):
                if i == 0 and j == 0:
                    g[0][0] = inv0
                    continue
                acc = 0
                for k in range(i + 1):
                    for l in range(j + 1):
                        if (k or l) and f[k][l] != 0:
                            acc += f[k][l] * g[i - k][j - l]
                g[i][j] = -acc * inv0
        return BiTaylor(g, self.order)

    def __truediv__(self, o):
        if isinstance(o, BiTaylor):
            return self * o.inverse()
        return BiTaylor([[v / o for v in row] for row in self.c], self.order)

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __eq__(self, o):
        o = self._lift(o)
        return self.c == o.c

    def __ne__(self, o):
        return not self == o

    __hash__ = None

    def derivative(self, i: int, j: int):
        """d^{i+j}/du^i dv^j at the expansion point."""
        return self.c[i][j] * math.factorial(i) * math.factorial(j)


# ---------------------------------------------------------------------------
# S_n
# ---------------------------------------------------------------------------


def _det_laplace(M: list[list], one) -> object:
    """Determinant by Laplace expansion over column subsets (no division)."""
    n = len(M)
    if n == 0:
        return one
    memo: dict[tuple[int, int], object] = {}

    def rec(i: int, used: int):
        if i == n:
            return one
        key = (i, used)
        if key in memo:
            return memo[key]
        acc = None
        pos = 0
        for j in range(n):
            if used >> j & 1:
                continue
            term = M[i][j] * rec(i + 1, used | (1 << j))
            if pos % 2:
                term = -term
            acc = term if acc is None else acc + term
            pos += 1
        memo[key] = acc
        return acc

    return rec(0, 0)


def _det_gauss(M: list[list]):
    n = len(M)
    A = [list(r) for r in M]
    det = 1
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0 * det
        if p != c:
            A[p], A[c] = A[c], A[p]
            det = -det
        piv = A[c][c]
        det = det * piv
        for r in range(c + 1, n):
            f = A[r][c] / piv
            if f != 0:
                for k in range(c, n):
                    A[r][k] = A[r][k] - f * A[c][k]
    return det


def _occurrence_offsets(vals: Sequence) -> tuple[list[int], int]:
    """Offset index per slot (0 for first occurrence) and the total number
    of coincident pairs."""
    offsets, seen = [], []
    for v in vals:
        k = sum(1 for w in seen if w == v)
        offsets.append(k)
        seen.append(v)
    pairs = 0
    for i, j in combinations(range(len(vals)), 2):
        if vals[i] == vals[j]:
            pairs += 1
    return offsets, pairs


def s_eval(xs: Sequence, zeta, perturb: bool = True):
    """Value of S_n at the 2n+1 arguments xs (x-slots, y-slots, z).

    Coincident arguments inside the x-block or inside the y-block are
    resolved by epsilon perturbation unless ``perturb`` is False, in which
    case ZeroDivisionError is raised.
    """
    if len(xs) % 2 != 1:
        raise ValueError("S_n takes an odd number of arguments")
    n = (len(xs) - 1) // 2
    xv, yv, z = list(xs[:n]), list(xs[n : 2 * n]), xs[2 * n]
    if n == 0:
        return 1 + 0 * z
    xo, xp = _occurrence_offsets(xv)
    yo, yp = _occurrence_offsets(yv)
    v = xp + yp
    if v == 0:
        return _s_direct(xv, yv, z, zeta)
    if not perturb:
        raise ZeroDivisionError("coincident slot arguments")
    prec = v + 1
    X = [Series([a, k], prec) for a, k in zip(xv, xo)]
    Y = [Series([b, k], prec) for b, k in zip(yv, yo)]
    zs = Series([z], prec)
    one = Series([1 + 0 * z], prec)
    Gm = [[G(xi, yj, zeta) for yj in Y] for xi in X]
    M = [[F(X[i], Y[j], zs, zeta) / Gm[i][j] for j in range(n)] for i in range(n)]
    num = _det_laplace(M, one)
    for row in Gm:
        for g in row:
            num = num * g
    # Vandermonde: coincident pairs contribute (k_j - k_i)*eps exactly
    unit = one
    scale = 1
    for vals, offs in ((xv, xo), (yv, yo)):
        for i, j in combinations(range(n), 2):
            if vals[i] == vals[j]:
                scale *= offs[j] - offs[i]
            else:
                unit = unit * (Series([vals[j], offs[j]], prec) - Series([vals[i], offs[i]], prec))
    quotient = num / unit
    return quotient.c[v] / scale


def _s_direct(xv, yv, z, zeta):
    n = len(xv)
    Gm = [[G(xi, yj, zeta) for yj in yv] for xi in xv]
    M = [[F(xv[i], yv[j], z, zeta) / Gm[i][j] for j in range(n)] for i in range(n)]
    one = 1 + 0 * z
    det = _det_laplace(M, one) if n <= 6 else _det_gauss(M)
    num = det
    for row in Gm:
        for g in row:
            num = num * g
    vand = one
    for i, j in combinations(range(n), 2):
        vand = vand * (xv[j] - xv[i]) * (yv[j] - yv[i])
    return num / vand


def s_zeta_poly(n: int, spec: Sequence) -> RatPoly:
    """(zeta+2)^(n*k_b) * S_n(args) as an exact polynomial in zeta.

    ``spec`` lists the 2n+1 arguments in slot order; each entry is "a" for
    2*zeta+1, "b" for zeta/(zeta+2), or a rational constant; k_b counts the
    "b" entries.  S_n has zeta-degree at most 2n^2 and degree at most n in
    every argument, which bounds the degree and lets exact interpolation
    recover the polynomial; two surplus nodes confirm it.
    """
    ka = sum(1 for s in spec if s == "a")
    kb = sum(1 for s in spec if s == "b")
    bound = 2 * n * n + n * (ka + kb)
    nodes = [Fraction(k) for k in range(1, bound + 4)]
    values = []
    for z0 in nodes:
        args = []
        for s in spec:
            if s == "a":
                args.append(2 * z0 + 1)
            elif s == "b":
                args.append(z0 / (z0 + 2))
            else:
                args.append(Fraction(s))
        values.append(s_eval(args, z0) * (z0 + 2) ** (n * kb))
    poly = interpolate(nodes[: bound + 1], values[: bound + 1])
    for z0, val in zip(nodes[bound + 1 :], values[bound + 1 :]):
        if poly(z0) != val:
            raise ArithmeticError("interpolation check failed: degree bound violated")
    return poly


# ---------------------------------------------------------------------------
# P_n and p_n
# ---------------------------------------------------------------------------

A_POLY = RatPoly([1, 2])  # 2*zeta + 1
Zp2 = RatPoly([2, 1])  # zeta + 2


@dataclass
class PFamily:
    """P_0..P_nmax with the two specializations used by the recursion.

    ``at_a[n]`` is P_n(2zeta+1, zeta); ``at_b_cleared[n]`` is
    (zeta+2)^n P_n(zeta/(zeta+2), zeta), a polynomial.
    """

    P: list[BiPoly] = field(default_factory=list)
    at_a: list[RatPoly] = field(default_factory=list)
    at_b_cleared: list[RatPoly] = field(default_factory=list)

    @property
    def nmax(self) -> int:
        return len(self.P) - 1

    def append(self, p: BiPoly) -> None:
        n = len(self.P)
        self.P.append(p)
        self.at_a.append(p.eval_x(A_POLY))
        self.at_b_cleared.append(p.eval_x_rational(Z, Zp2, n))

    def at_b(self, n: int):
        """P_n(zeta/(zeta+2), zeta) as (numerator, power of zeta+2)."""
        return self.at_b_cleared[n], n


_FAMILY = PFamily()


def _step(fam: PFamily, n: int) -> BiPoly:
    """P_{n+1} from P_n, P_{n-1} (all quantities multiplied by (zeta+2)^n)."""
    U0, U1 = fam.at_a[n - 1], fam.at_a[n]
    V0, V1 = fam.at_b_cleared[n - 1], fam.at_b_cleared[n]
    if U0.is_zero() or V0.is_zero():
        raise DegenerateCoefficient(f"specialization of P_{n - 1} vanishes identically")
    x_minus_a = BiPoly.x_linear(1, -A_POLY)
    x_minus_b = BiPoly.x_linear(Zp2, -Z)  # (zeta+2)(x - b)
    x2 = BiPoly([RatPoly(), RatPoly(), ONE])
    even = n % 2 == 0
    e = (A_POLY * Zp2 / 2) if even else ONE
    lhs = x_minus_a * x_minus_b * (e * U0 * V0)
    b_term = (x2 * x_minus_a * (Zp2 ** 2 * V0 * U1) - x_minus_b * (A_POLY ** 2 * U0 * V1)) * Fraction(1, 2)
    c_term = x2 * (RatPoly([1, 1]) ** 2 * U1 * V1)
    rhs = b_term * fam.P[n] + c_term * fam.P[n - 1]
    # divide by the scalar factor first, then by the two linear factors in x
    try:
        q = exact_divide(rhs, e * U0 * V0)
        q = exact_divide(q, x_minus_a)
        q = exact_divide(q, x_minus_b)
    except NotDivisible as exc:
        raise NotDivisible(f"three-term recursion not exact at n={n}", exc.remainder) from None
    return q


def build_P(nmax: int) -> PFamily:
    """P_0..P_nmax from the three-term recursion (cached and extended)."""
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    fam = _FAMILY
    if not fam.P:
        fam.append(BiPoly([ONE]))
        fam.append(BiPoly([Z, ONE]))
    while fam.nmax < nmax:
        fam.append(_step(fam, fam.nmax))
    return PFamily(fam.P[: nmax + 1], fam.at_a[: nmax + 1], fam.at_b_cleared[: nmax + 1])


def P_poly(n: int) -> BiPoly:
    return build_P(max(n, 1)).P[n]


def p_degree(n: int) -> int:
    return n * (n + 1) // 2


_P_SMALL: dict[int, RatPoly] = {-1: ONE}


def p_poly(n: int) -> RatPoly:
    """p_n = P_n(2zeta+1, zeta) / (1+2zeta)^[n/2]; p_{-1} = 1."""
    if n in _P_SMALL:
        return _P_SMALL[n]
    fam = build_P(max(n, 1))
    try:
        p = exact_divide(fam.at_a[n], A_POLY ** (n // 2))
    except NotDivisible:
        raise NotDivisible(f"(1+2zeta)^{n // 2} does not divide P_{n}(2zeta+1, zeta)") from None
    _P_SMALL[n] = p
    return p


def p_tilde(n: int) -> RatPoly:
    """Coefficient reversal of p_n at degree n(n+1)/2."""
    return p_poly(n).reverse(max(p_degree(n), 0))


def _square_factor(n: int) -> RatPoly:
    return A_POLY ** (1 + chi(n % 2 == 0)) * (Zp2 / 2) ** (1 + chi(n % 2 == 1))


def y_poly(n: int) -> RatPoly:
    """y_n from the quadratic relation between consecutive p's."""
    num = RatPoly([1, 1]) ** 2 * p_poly(n + 1) * p_poly(n - 1) - _square_factor(n) * p_poly(n) ** 2
    return exact_divide(num, Z ** (n + 1) * p_tilde(n))


def p_leading(n: int) -> Fraction:
    """Leading coefficient 2^{-[(n+2)/2]} binom(2n+2, n+1) of p_n."""
    return Fraction(math.comb(2 * n + 2, n + 1), 2 ** ((n + 2) // 2))


def y_leading(n: int) -> Fraction:
    num = math.factorial(2 * n + 2) * math.factorial(2 * n)
    den = (
        2 ** (n + chi(n % 2 == 1))
        * math.factorial(n + 2)
        * math.factorial(n + 1) ** 2
        * math.factorial(n)
    )
    return Fraction(num, den)


def bezout_system(n: int):
    """Coefficient matrix and right side of A X - B Y = C for p_{n+1}."""
    A = RatPoly([1, 1]) ** 2 * p_poly(n - 1)
    B = Z ** (n + 1) * p_tilde(n)
    C = _square_factor(n) * p_poly(n) ** 2
    dX = (n + 1) * (n + 2) // 2
    dY = A.degree()
    rows = max(A.degree() + dX, B.degree() + dY, C.degree()) + 1
    Ac, Bc = A.coeffs, B.coeffs
    mat = [[Fraction(0)] * (dX + 1 + dY + 1) for _ in range(rows)]
    for j in range(dX + 1):
        for i, a in enumerate(Ac):
            mat[i + j][j] = a
    for j in range(dY + 1):
        for i, b in enumerate(Bc):
            mat[i + j][dX + 1 + j] = -b
    rhs = [C.coeff(i) for i in range(rows)]
    return mat, rhs, dX, dY


def p_via_bezout(n: int) -> RatPoly:
    """p_{n+1} from the linear equation A X - B Y = C, normalized by its
    leading coefficient."""
    mat, rhs, dX, _ = bezout_system(n)
    sol = solve_exact_linear(mat, rhs)
    target = p_leading(n + 1)
    base = sol.particular[dX]
    slopes = [k[dX] for k in sol.kernel]
    if not sol.kernel:
        if base != target:
            raise AmbiguousNormalization("unique solution has the wrong leading coefficient")
        coeffs = sol.particular[: dX + 1]
    elif len(sol.kernel) == 1 and slopes[0] != 0:
        lam = (target - base) / slopes[0]
        coeffs = [sol.particular[i] + lam * sol.kernel[0][i] for i in range(dX + 1)]
    else:
        raise AmbiguousNormalization(
            f"solution space of dimension {len(sol.kernel)} not pinned by the leading coefficient"
        )
    return RatPoly(coeffs)


# ---------------------------------------------------------------------------
# q_n and r_n
# ---------------------------------------------------------------------------


def qr_degrees(n: int) -> tuple[int, int]:
    """Degrees of (q_n, r_n) by the residue of n mod 6 (-1 means zero)."""
    m = n % 6
    if m == 0:
        d = n * n // 12
        return d - 1, d
    if m in (1, 5):
        d = (n * n - 1) // 12
        return d, d - 1
    if m in (2, 4):
        d = (n * n - 4) // 12
        return d, d
    d = (n * n - 9) // 12
    return d, d


def _qr_case(n: int, which: str) -> tuple[int, int, RatPoly]:
    """(shift s, exponent E, prefactor) for the substitution identity."""
    one_minus = RatPoly([1, -1])
    if n % 2:
        if which == "q":
            return (n + 1) // 2, (n * n - 1) // 4, one_minus
        return (n - 1) // 2, (n * n - 9) // 4, one_minus * RatPoly([1, 1]) ** 3
    if which == "r":
        return (n + 2) // 2, n * n // 4, one_minus
    return n // 2, (n * n - 4) // 4, RatPoly([1, 0, -1])


def _extract(n: int, which: str) -> RatPoly:
    d = qr_degrees(n)[0 if which == "q" else 1]
    s, E, pref = _qr_case(n, which)
    rhs = p_poly(n - 1) - Z ** s * p_tilde(n - 1)
    if d < 0:
        if not rhs.is_zero():
            raise Inconsistent(f"{which}_{n} should vanish but the identity has a nonzero side")
        return RatPoly()
    w = RatPoly([1, 4, 1])
    basis = [
        pref * Z ** k * RatPoly([1, 1]) ** (4 * k) * w ** (E - 3 * k) * Fraction(1, 2 ** k)
        for k in range(d + 1)
    ]
    rows = max(rhs.degree(), max(b.degree() for b in basis)) + 1
    mat = [[b.coeff(i) for b in basis] for i in range(rows)]
    sol = solve_exact_linear(mat, [rhs.coeff(i) for i in range(rows)])
    if sol.kernel:
        raise Inconsistent(f"{which}_{n} not determined by the substitution identity")
    c = sol.particular
    if c[0] != 1:
        raise NotMonic(f"{which}_{n} has leading coefficient {c[0]}")
    return RatPoly(c[::-1])


def qr_polys(n: int) -> tuple[RatPoly, RatPoly]:
    """(q_n, r_n) recovered from p_{n-1}."""
    return _extract(n, "q"), _extract(n, "r")


# ---------------------------------------------------------------------------
# hypergeometric polynomials
# ---------------------------------------------------------------------------


def _hyper(upper: Sequence[Fraction], lower: Sequence[Fraction]) -> RatPoly:
    coeffs = [Fraction(1)]
    term = Fraction(1)
    k = 0
    while True:
        num = Fraction(1)
        for a in upper:
            num *= a + k
        if num == 0:
            break
        den = Fraction(k + 1)
        for b in lower:
            den *= b + k
        term = term * num / den
        coeffs.append(term)
        k += 1
    return RatPoly(coeffs)


def hyper_phi(n: int) -> RatPoly:
    """Terminating 2F1(-n/2, -(n-1)/2; n+3/2; x)."""
    return _hyper([Fraction(-n, 2), Fraction(-(n - 1), 2)], [Fraction(2 * n + 3, 2)])


def hyper_psi(n: int) -> RatPoly:
    """Terminating 3F2(-n/2, -(n+1)/2, (n+5)/4; n+3/2, (n+1)/4; x)."""
    return _hyper(
        [Fraction(-n, 2), Fraction(-(n + 1), 2), Fraction(n + 5, 4)],
        [Fraction(2 * n + 3, 2), Fraction(n + 1, 4)],
    )


# ---------------------------------------------------------------------------
# p_n from the derivative determinant
# ---------------------------------------------------------------------------


def _p_det_value(n: int, z0: Fraction) -> Fraction:
    a = 2 * z0 + 1
    b = z0 / (z0 + 2)
    order = max(n - 1, 0)
    X = BiTaylor.variable(a, 0, order)
    Y = BiTaylor.variable(b, 1, order)
    f = F(X, Y, a, z0) / G(X, Y, z0)
    M = [[f.derivative(i, j) for j in range(n)] for i in range(n)]
    det = _det_laplace(M, Fraction(1)) if n <= 6 else _det_gauss(M)
    fact = 1
    for j in range(1, n + 1):
        fact *= math.factorial(j - 1) ** 2
    sign = -1 if (n * (n + 1) // 2) % 2 else 1
    num = sign * z0 ** (n * n) * (z0 + 1) ** (n * n)
    den = 2 ** (n * n) * fact * (1 + 2 * z0) ** delta(n) * (1 + z0 / 2) ** (n * n + delta(n - 1))
    return num * det / den


def p_via_det(n: int) -> RatPoly:
    """p_n from the derivative determinant, reconstructed by interpolation
    at positive integer nodes (two surplus nodes confirm polynomiality)."""
    if n > 4:
        raise ValueError("the determinant route is limited to n <= 4")
    deg = p_degree(n)
    nodes = [Fraction(k) for k in range(1, deg + 4)]
    vals = [_p_det_value(n, z0) for z0 in nodes]
    poly = interpolate(nodes[: deg + 1], vals[: deg + 1])
    for z0, v in zip(nodes[deg + 1 :], vals[deg + 1 :]):
        if poly(z0) != v:
            raise NotDivisible(f"determinant route for p_{n} is not a polynomial of degree {deg}")
    return poly


# ---------------------------------------------------------------------------
# manifest
# ---------------------------------------------------------------------------


def manifest(kind: str, n: int, poly, path: str) -> dict:
    """Summary record: n, construction path, degree, leading coefficient and
    a SHA-256 checksum of the canonical JSON coefficients."""
    obj = poly.to_json_obj()
    digest = hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
    if isinstance(poly, BiPoly):
        degree = [poly.degree_x(), poly.degree_zeta()]
        lead_row = poly.rows[-1] if poly.rows else RatPoly()
        lead = str(lead_row.lead())
    else:
        degree = poly.degree()
        lead = str(poly.lead())
    return {
        "kind": kind,
        "n": n,
        "path": path,
        "degree": degree,
        "leading_coefficient": lead,
        "sha256": digest,
    }
