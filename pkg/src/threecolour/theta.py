"""Elliptic layer: theta functions, 8VSOS weights and partition sums, and
the modular constants zeta(p), eta(p), tau(p).

Everything here is floating point and every check returns a residual that
is compared with a tolerance.  Double precision uses Python complex; an
extended mode ("bits:k") routes the same code through mpmath.
"""

from __future__ import annotations

import cmath
import contextlib
import functools
import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import mpmath

from .boards import enumerate_boards
from .errors import IdentityViolation, NomeOutOfRange, PoleProximity, SizeGuardError, ZeroArgument
from .families import p_poly, p_tilde
from .exactpoly import asm_count, cspp_count

FLOOR = 1e-18
POLE_FLOOR = 1e-12
BRUTE_GUARD = 4
ENV_BITS = "THREECOLOUR_PRECISION_BITS"


def _parse_precision(precision: str) -> int | None:
    env = os.environ.get(ENV_BITS)
    if env:
        precision = f"bits:{env}"
    if precision in (None, "double"):
        return None
    if precision.startswith("bits:"):
        bits = int(precision[5:])
        if bits < 53:
            raise ValueError("extended precision needs at least 53 bits")
        return bits
    raise ValueError(f"unknown precision mode {precision!r}")


class ThetaContext:
    """Theta evaluator for a fixed nome.

    theta(x, k) is theta(x; p^k).  The truncation order for nome p^k is
    the least J with |p|^(kJ) below the floor.
    """

    __slots__ = ("p", "bits", "floor", "_J", "omega", "_frozen")

    def __init__(self, p, precision: str = "double"):
        bits = _parse_precision(precision)
        object.__setattr__(self, "bits", bits)
        if bits is None:
            p = complex(p)
            floor = FLOOR
            omega = cmath.exp(2j * cmath.pi / 3)
        else:
            with mpmath.workprec(bits):
                p = mpmath.mpc(p)
                omega = mpmath.exp(2j * mpmath.pi / 3)
            floor = min(FLOOR, 2.0 ** (-bits))
        a = abs(p)
        if not 0 < a < 1:
            raise NomeOutOfRange(f"nome must satisfy 0<|p|<1, got {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "floor", floor)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "_J", max(1, math.ceil(math.log(floor) / math.log(float(a)))))
        object.__setattr__(self, "_frozen", True)

    def __setattr__(self, name, value):
        raise AttributeError("ThetaContext is immutable")

    @property
    def J(self) -> int:
        return self._J

    @property
    def precision(self) -> str:
        return "double" if self.bits is None else f"bits:{self.bits}"

    def num(self, z):
        if self.bits is None:
            return complex(z)
        return mpmath.mpc(z)

    def _run(self, fn, *args):
        if self.bits is None:
            return fn(*args)
        with mpmath.workprec(self.bits):
            return fn(*args)

    def scope(self):
        """Working-precision context for arithmetic around theta values."""
        if self.bits is None:
            return contextlib.nullcontext()
        return mpmath.workprec(self.bits)

    def terms(self, k: int = 1) -> int:
        return max(1, -(-self._J // k))

    def theta(self, x, k: int = 1):
        return self._run(self._theta, x, k)

    def _theta(self, x, k):
        x = self.num(x)
        if x == 0:
            raise ZeroArgument("theta(x;p) needs x != 0")
        q = self.p ** k
        out = 1 - x
        inv = 1 / x
        qj = q
        for _ in range(self.terms(k)):
            out *= (1 - qj * x) * (1 - qj * inv)
            qj *= q
        return out

    def thetas(self, *xs, k: int = 1):
        """theta(x1, ..., xm; p^k) as a product."""
        out = self.num(1)
        for x in xs:
            out *= self.theta(x, k)
        return out

    def theta_pm(self, x, k: int = 1):
        """theta(x^{+-}; p^k) = theta(x) theta(1/x)."""
        x = self.num(x)
        return self.theta(x, k) * self.theta(1 / x, k)

    def qpoch(self, k: int = 1):
        """(q; q)_infinity for q = p^k."""
        def run():
            q = self.p ** k
            out = self.num(1)
            qj = q
            for _ in range(self.terms(k) + 1):
                out *= 1 - qj
                qj *= q
            return out

        return self._run(run)


def _scoped(fn):
    """Run fn at the working precision of its ThetaContext argument."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        ctx = kwargs.get("ctx") or next((a for a in args if isinstance(a, ThetaContext)), None)
        if ctx is None:
            return fn(*args, **kwargs)
        with ctx.scope():
            return fn(*args, **kwargs)

    return wrapper


def theta_eval(x, p, precision: str = "double"):
    return ThetaContext(p, precision).theta(x)


# ---------------------------------------------------------------------------
# Boltzmann weights and partition functions
# ---------------------------------------------------------------------------

KINDS = ("++/++", "--/--", "+-/+-", "-+/-+", "-+/+-", "+-/-+")


def _sign(d: int) -> str:
    d %= 3
    if d == 1:
        return "+"
    if d == 2:
        return "-"
    raise ValueError("adjacent squares share a colour")


@dataclass(frozen=True)
class VertexWeights:
    ctx: ThetaContext

    def R(self, kind: str, lam, u):
        t = self.ctx.theta
        w = self.ctx.omega
        if kind in ("++/++", "--/--"):
            # theta(w) below, not theta(u): only this choice is symmetric in
            # the x_i and agrees with the determinant formula
            return t(w * u) / t(w)
        if kind == "+-/+-":
            return t(u) * t(w * lam) / (t(w) * t(lam))
        if kind == "-+/-+":
            return w * t(u) * t(w * w * lam) / (t(w) * t(lam))
        if kind == "-+/+-":
            return t(lam * u) / t(lam)
        if kind == "+-/-+":
            return u * t(lam / u) / t(lam)
        raise ValueError(f"no weight of kind {kind}")

    def block(self, a: int, b: int, c: int, d: int, lam, u):
        kind = _sign(b - a) + _sign(d - b) + "/" + _sign(d - c) + _sign(c - a)
        return self.R(kind, lam * self.ctx.omega ** (a % 3), u)


def _check_nonzero(*vals):
    for v in vals:
        if v == 0:
            raise ZeroArgument("8VSOS parameters must be nonzero")


@_scoped
def z8vsos_brute(n: int, xs, ys, lam, ctx: ThetaContext):
    """Sum over boards of the product of block weights."""
    if n > BRUTE_GUARD:
        raise SizeGuardError(f"brute-force 8VSOS sum limited to n <= {BRUTE_GUARD}")
    if n == 0:
        return ctx.num(1)
    _check_nonzero(lam, *xs, *ys)
    vw = VertexWeights(ctx)
    # weights depend only on (block colours, i, j); tabulate once
    cache: dict = {}
    total = ctx.num(0)
    for board in enumerate_boards(n):
        g = board.grid
        term = ctx.num(1)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                key = (g[i - 1][j - 1], g[i - 1][j], g[i][j - 1], g[i][j], i, j)
                w = cache.get(key)
                if w is None:
                    w = vw.block(key[0], key[1], key[2], key[3], lam, ctx.num(xs[i - 1]) / ys[j - 1])
                    cache[key] = w
                term *= w
        total += term
    return total


def _det(M):
    n = len(M)
    M = [row[:] for row in M]
    det = 1
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(M[r][c]))
        if M[piv][c] == 0:
            return 0 * det
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            for k in range(c, n):
                M[r][k] -= f * M[c][k]
    return det


def _guarded(ctx: ThetaContext, x, what: str):
    v = ctx.theta(x)
    if abs(v) < POLE_FLOOR:
        raise PoleProximity(f"{what}: |theta| = {abs(v):.3e} below {POLE_FLOOR}")
    return v


@_scoped
def z8vsos_ik(n: int, xs, ys, lam, ctx: ThetaContext, gamma=None):
    """Determinant-sum formula; the result does not depend on gamma."""
    if n == 0:
        return ctx.num(1)
    _check_nonzero(lam, *xs, *ys)
    w = ctx.omega
    t = ctx.theta
    gamma = ctx.num(0.37 + 0.41j if gamma is None else gamma)
    xs = [ctx.num(x) for x in xs]
    ys = [ctx.num(y) for y in ys]
    X = math.prod(xs, start=ctx.num(1))
    Y = math.prod(ys, start=ctx.num(1))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    den = (
        t(w) ** (n * n)
        * _guarded(ctx, gamma, "gamma") ** n
        * Y ** (n + 1)
        * _guarded(ctx, X * lam * gamma * w ** n / Y, "gamma-dependent denominator")
    )
    pre = sign * t(lam * w ** n) / den
    num = ctx.num(1)
    for i in range(n):
        for j in range(n):
            u = xs[i] / ys[j]
            num *= ys[j] ** 2 * t(u) * t(w * u)
    vdm = ctx.num(1)
    for i in range(n):
        for j in range(i + 1, n):
            vdm *= xs[j] * ys[j] * t(xs[i] / xs[j]) * t(ys[i] / ys[j])
    if abs(vdm) < POLE_FLOOR:
        raise PoleProximity("coinciding spectral parameters")
    total = ctx.num(0)
    for S in product((0, 1), repeat=n):
        s = sum(S)
        xsS = [x * w if b else x for x, b in zip(xs, S)]
        M = []
        for i in range(n):
            row = []
            for j in range(n):
                u = xsS[i] / ys[j]
                row.append(t(gamma * u) / _guarded(ctx, u, "determinant entry"))
            M.append(row)
        f = t(lam * gamma * w ** (n - s)) / _guarded(ctx, lam * w ** (n - s), "lambda factor")
        total += (-1) ** s * f * _det(M)
    return pre * num / vdm * total


# ---------------------------------------------------------------------------
# modular constants
# ---------------------------------------------------------------------------

MODULAR_TOL = 1e-10


@dataclass(frozen=True)
class ModularConstants:
    p: complex
    zeta: complex
    eta: complex
    tau: complex
    residuals: dict = field(default_factory=dict)


@_scoped
def modular_constants(ctx: ThetaContext, tol: float = MODULAR_TOL) -> ModularConstants:
    """zeta, eta from theta quotients in nome p^2; tau from the eta-product
    series.  The three identities tying them together are checked before
    returning."""
    p, w = ctx.p, ctx.omega

    def t2(x):
        return ctx.theta(x, 2)

    zeta = w * w * t2(-1) * t2(-p * w) / (t2(-p) * t2(-w))
    eta = -t2(p) * t2(-p * w) ** 2 / (t2(p * w) * t2(-p) ** 2)
    e1, e3, e9 = ctx.qpoch(1), ctx.qpoch(3), ctx.qpoch(9)
    tau = 3 * (1 + 9 * p * e9 ** 3 / e1 ** 3)
    series = 27 * 27 * p * e3 ** 12 / e1 ** 12
    # tau can sit near zero, where 27 + series cancels: scale by the largest term
    cube_scale = max(abs(tau) ** 3, 27, abs(series))
    res = {
        "zeta-eta": _rel(zeta * (zeta + 1) ** 4, 2 * eta ** 3),
        "tau-zeta-eta": _rel(tau, (zeta * zeta + 4 * zeta + 1) / eta),
        "tau-cube": float(abs(tau ** 3 - 27 - series) / cube_scale),
    }
    for name, r in res.items():
        if r > tol:
            raise IdentityViolation(f"modular identity {name} fails at p={p}", r)
    return ModularConstants(p, zeta, eta, tau, {k: float(v) for k, v in res.items()})


def _rel(a, b) -> float:
    scale = max(abs(a), abs(b), 1e-300)
    return float(abs(a - b) / scale)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    check: str
    params: dict
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol

    def to_json_obj(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "residual": self.residual,
            "tol": self.tol,
            "pass": self.passed,
        }


def cstr(z) -> str:
    z = complex(z)
    return f"{z.real:.17g},{z.imag:.17g}"


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise ValueError(f"expected 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _rand_c(rng: random.Random, rmin: float, rmax: float) -> complex:
    return cmath.rect(rng.uniform(rmin, rmax), rng.uniform(-math.pi, math.pi))


@dataclass(frozen=True)
class Sample:
    seed: int
    p: complex
    lam: complex
    xs: tuple
    ys: tuple
    gamma: complex

    def params(self) -> dict:
        return {
            "seed": self.seed,
            "p": cstr(self.p),
            "lambda": cstr(self.lam),
            "xs": [cstr(x) for x in self.xs],
            "ys": [cstr(y) for y in self.ys],
        }


def random_sample(n: int, seed: int, pmax: float = 0.2) -> Sample:
    rng = random.Random(seed)
    p = _rand_c(rng, 0.02, pmax)
    lam = _rand_c(rng, 0.5, 1.5)
    xs = tuple(_rand_c(rng, 0.7, 1.3) for _ in range(n))
    ys = tuple(_rand_c(rng, 0.7, 1.3) for _ in range(n))
    gamma = _rand_c(rng, 0.5, 1.5)
    return Sample(seed, p, lam, xs, ys, gamma)


def run_parallel(fn, items, jobs: int = 1) -> list:
    """Map in input order; threads only change wall time."""
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def determinant_check(n: int, s: Sample, tol: float = 1e-9) -> CheckReport:
    ctx = ThetaContext(s.p)
    a = z8vsos_brute(n, s.xs, s.ys, s.lam, ctx)
    b = z8vsos_ik(n, s.xs, s.ys, s.lam, ctx, s.gamma)
    return CheckReport("brute-vs-determinant", {"n": n, **s.params()}, _rel(a, b), tol)


def gamma_check(n: int, s: Sample, tol: float = 1e-9) -> CheckReport:
    ctx = ThetaContext(s.p)
    g2 = s.gamma * cmath.exp(1.1j) * 0.8
    a = z8vsos_ik(n, s.xs, s.ys, s.lam, ctx, s.gamma)
    b = z8vsos_ik(n, s.xs, s.ys, s.lam, ctx, g2)
    return CheckReport("gamma-independence", {"n": n, **s.params()}, _rel(a, b), tol)


def quasi_periodicity_check(n: int, s: Sample, tol: float = 1e-9) -> CheckReport:
    """theta(lam w^{n+1}, lam w^{n+2}) Z is an A_1 theta function of norm
    w^{2n} Y/X: f(p lam) = f(lam) / (norm lam^2)."""
    ctx = ThetaContext(s.p)
    w = ctx.omega
    X = math.prod(s.xs, start=1 + 0j)
    Y = math.prod(s.ys, start=1 + 0j)

    def f(lam):
        return ctx.thetas(lam * w ** (n + 1), lam * w ** (n + 2)) * z8vsos_ik(n, s.xs, s.ys, lam, ctx, s.gamma)

    norm = w ** (2 * n) * Y / X
    a = f(s.p * s.lam)
    b = f(s.lam) / (norm * s.lam ** 2)
    return CheckReport("lambda-quasi-periodicity", {"n": n, **s.params()}, _rel(a, b), tol)


def specialization_recursion_check(n: int, s: Sample, tol: float = 1e-9) -> CheckReport:
    """Specialize y_1 = w x_1 and compare with the size n-1 partition function."""
    ctx = ThetaContext(s.p)
    w = ctx.omega
    xs = list(s.xs)
    ys = list(s.ys)
    ys[0] = w * xs[0]
    lhs = z8vsos_brute(n, xs, ys, s.lam, ctx)
    y1 = ys[0]
    pre = w ** (n + 1) * ctx.theta(s.lam * w ** n)
    for k in range(1, n):
        pre *= ctx.theta(y1 * w * w / ys[k]) * ctx.theta(xs[k] / y1)
    pre /= ctx.theta(s.lam * w ** (n - 1)) * ctx.theta(w) ** (2 * n - 2)
    rhs = pre * z8vsos_brute(n - 1, xs[1:], ys[1:], s.lam, ctx)
    return CheckReport("specialization-recursion", {"n": n, **s.params()}, _rel(lhs, rhs), tol)


def crossing_symmetry_check(n: int, s: Sample, tol: float = 1e-9) -> CheckReport:
    ctx = ThetaContext(s.p)
    w = ctx.omega
    X = math.prod(s.xs, start=1 + 0j)
    Y = math.prod(s.ys, start=1 + 0j)
    lhs = z8vsos_brute(n, [w * w / x for x in s.xs], [1 / y for y in s.ys], w ** (2 * n) / s.lam, ctx)
    rhs = (
        w ** (n * (n - 1))
        * ctx.theta(s.lam)
        * Y ** n
        / (ctx.theta(s.lam * w ** n) * X ** n)
        * z8vsos_brute(n, s.xs, s.ys, s.lam, ctx)
    )
    return CheckReport("crossing-symmetry", {"n": n, **s.params()}, _rel(lhs, rhs), tol)


def _delta(ctx: ThetaContext, zs):
    out = ctx.num(1)
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            out *= zs[j] * ctx.theta(zs[i] / zs[j])
    return out


def cyclic_sum_check(n: int, s: Sample, tol: float = 1e-9) -> CheckReport:
    """Cyclic sum over (x_1, lam) -> (w^k x_1, w^{-k} lam) of F_n vanishes;
    residual is relative to the largest summand."""
    if n > 3:
        raise SizeGuardError("cyclic-sum check uses the brute-force sum, n <= 3")
    ctx = ThetaContext(s.p)
    w = ctx.omega

    def F(xs, lam):
        return (
            ctx.thetas(lam * w ** (n + 1), lam * w ** (n + 2))
            * _delta(ctx, list(xs) + list(s.ys))
            * z8vsos_brute(n, [w * x for x in xs], s.ys, lam, ctx)
        )

    terms = []
    for k in range(3):
        xs = list(s.xs)
        xs[0] = w ** k * xs[0]
        terms.append(F(xs, s.lam * w ** (-k)))
    scale = max(abs(t) for t in terms)
    return CheckReport("cyclic-sum", {"n": n, **s.params()}, float(abs(sum(terms)) / scale), tol)


def three_colour_weights(ctx: ThetaContext, lam):
    return tuple(1 / ctx.theta(lam * ctx.omega ** i) ** 3 for i in range(3))


@_scoped
def three_colour_check(n: int, lam, ctx: ThetaContext, Z3, tol: float = 1e-8) -> CheckReport:
    """Three-colour polynomial at the theta parametrization against the
    homogeneous 8VSOS partition function (x_i = w, y_j = 1)."""
    w = ctx.omega
    lhs = Z3(*three_colour_weights(ctx, lam))
    z8 = z8vsos_brute(n, [w] * n, [1] * n, lam, ctx)
    rhs = (
        w ** (n * (n + 1))
        * ctx.thetas(lam * w * w, lam * w ** (n + 1)) ** 2
        / (ctx.theta(lam * w ** n) * ctx.theta(lam ** 3, 3) ** (n * n + 2 * n + 2))
        * z8
    )
    return CheckReport("three-colour-vs-8VSOS", {"n": n, "p": cstr(ctx.p), "lambda": cstr(lam)}, _rel(lhs, rhs), tol)


def T_invariant(t0, t1, t2):
    return (t0 * t1 + t0 * t2 + t1 * t2) ** 3 / (t0 * t1 * t2) ** 2


def T_of_zeta(z):
    return 2 * (z * z + 4 * z + 1) ** 3 / (z * (z + 1) ** 4)


@_scoped
def parametrization_check(ctx: ThetaContext, lams, tol: float = 1e-9) -> CheckReport:
    """(1/t0 + 1/t1 + 1/t2)/theta(lam^3; p^3) is lambda-free, equals tau,
    its cube is T, and T matches the rational function of zeta."""
    mc = modular_constants(ctx)
    res = 0.0
    for lam in lams:
        t = three_colour_weights(ctx, lam)
        ratio = sum(1 / ti for ti in t) / ctx.theta(lam ** 3, 3)
        T = T_invariant(*t)
        res = max(res, _rel(ratio, mc.tau), _rel(ratio ** 3, T), _rel(T, T_of_zeta(mc.zeta)))
    return CheckReport(
        "theta-parametrization", {"p": cstr(ctx.p), "lambdas": [cstr(l) for l in lams]}, res, tol
    )


@_scoped
def _closed_form_rhs(n: int, lam, ctx: ThetaContext, mc: ModularConstants):
    w, p = ctx.omega, ctx.p
    z, eta = mc.zeta, mc.eta
    pm = p_poly(n - 1)
    pt = p_tilde(n - 1)
    pv = complex(pm(z)) if ctx.bits is None else pm(z)
    ptv = complex(pt(z)) if ctx.bits is None else pt(z)

    def t2(x):
        return ctx.theta(x, 2)

    L2 = lam * lam
    if n % 2 == 0:
        head = eta ** (n * n // 4)
        body = z ** (n // 2) * ptv * t2(-p * w) * t2(-(w ** n) * L2) - w ** (1 - n) * lam * pv * t2(-w) * t2(
            -p * w ** n * L2
        )
    else:
        head = eta ** ((n * n - 1) // 4)
        body = pv * t2(-p) * t2(-(w ** n) * L2) - w ** (-n) * lam * z ** ((n - 1) // 2) * ptv * t2(-1) * t2(
            -p * w ** n * L2
        )
    front = ctx.thetas(lam * w * w, lam * w ** (n + 1)) ** 2 / (
        t2(p) * head * ctx.theta(lam ** 3, 3) ** (n * n + 2 * n + 3)
    )
    return front * body


@_scoped
def closed_form_check(n: int, lam, ctx: ThetaContext, Z3, tol: float = 1e-8) -> CheckReport:
    """Exact three-colour polynomial at t_i = 1/theta(lam w^i)^3 against the
    closed form built from p_{n-1}, its reversal, zeta(p) and eta(p)."""
    if n < 1:
        raise ValueError("closed form needs n >= 1")
    for i in range(3):
        _guarded(ctx, lam * ctx.omega ** i, "parametrized weight")
    mc = modular_constants(ctx)
    lhs = Z3(*three_colour_weights(ctx, lam))
    rhs = _closed_form_rhs(n, lam, ctx, mc)
    return CheckReport("closed-form", {"n": n, "p": cstr(ctx.p), "lambda": cstr(lam)}, _rel(lhs, rhs), tol)


def trigonometric_rhs(n: int, lam):
    """Trigonometric closed form (nome zero) in terms of A_n and C_n."""
    w = cmath.exp(2j * cmath.pi / 3)
    lam = complex(lam)
    A, C = asm_count(n), cspp_count(n)
    return (
        (1 - lam * w * w) ** 2
        * (1 - lam * w ** (n + 1)) ** 2
        / (1 - lam ** 3) ** (n * n + 2 * n + 3)
        * (A * (1 + w ** n * lam * lam) + (-1) ** n * C * w ** (2 * n) * lam)
    )


def trigonometric_check(n: int, lam, Z3, tol: float = 1e-12) -> CheckReport:
    """Exact polynomial at t_i = (1 - lam w^i)^-3 against the closed form."""
    w = cmath.exp(2j * cmath.pi / 3)
    lam = complex(lam)
    t = tuple(1 / (1 - lam * w ** i) ** 3 for i in range(3))
    return CheckReport("trigonometric", {"n": n, "lambda": cstr(lam)}, _rel(Z3(*t), trigonometric_rhs(n, lam)), tol)


def small_nome_check(n: int, lam, p: float = 1e-8, tol: float = 1e-6) -> CheckReport:
    """Elliptic closed form at tiny nome against the trigonometric one."""
    ctx = ThetaContext(p)
    mc = modular_constants(ctx)
    a = _closed_form_rhs(n, lam, ctx, mc)
    return CheckReport("small-nome-limit", {"n": n, "p": cstr(p), "lambda": cstr(lam)}, _rel(a, trigonometric_rhs(n, lam)), tol)


# elementary identities ------------------------------------------------------


@_scoped
def addition_residual(ctx: ThetaContext, x, y, z, w) -> float:
    x, y, z, w = (ctx.num(v) for v in (x, y, z, w))

    def theta_pair(a, b):
        # theta(a b^{+-}) = theta(a b) theta(a / b)
        return ctx.theta(a * b) * ctx.theta(a / b)

    # measured against the largest term: the difference on the left can cancel
    A, B = theta_pair(x, z) * theta_pair(y, w), theta_pair(x, w) * theta_pair(y, z)
    rhs = y / z * theta_pair(x, y) * theta_pair(z, w)
    return float(abs(A - B - rhs) / max(abs(A), abs(B), abs(rhs)))


@_scoped
def product_residual(ctx: ThetaContext, x) -> float:
    p = ctx.p
    x = ctx.num(x)
    r = ctx.num(p) ** 0.5 if ctx.bits is None else mpmath.sqrt(p)
    lhs = ctx.thetas(x, r * x, -r * x)
    rhs = ctx.qpoch(3) / ctx.qpoch(1) * (ctx.theta(-p * x ** 3, 3) - x * ctx.theta(-p / x ** 3, 3))
    return _rel(lhs, rhs)


@_scoped
def constants_residual(ctx: ThetaContext) -> float:
    p, w = ctx.p, ctx.omega
    a = ctx.thetas(-1, p, -p, k=2)
    b = ctx.thetas(-w, p * w, -p * w, k=2)
    return max(_rel(a, 2), _rel(b, -w * w))


@_scoped
def inversion_residual(ctx: ThetaContext, x) -> float:
    x = ctx.num(x)
    a = ctx.theta(1 / x)
    b = -ctx.theta(x) / x
    c = ctx.theta(ctx.p * x)
    return max(_rel(a, b), _rel(c, b))


@_scoped
def identities_check(ctx: ThetaContext, seed: int, samples: int = 5, tol: float = 1e-11) -> CheckReport:
    rng = random.Random(seed)
    res = constants_residual(ctx)
    for _ in range(samples):
        x, y, z, w = (_rand_c(rng, 0.6, 1.4) for _ in range(4))
        res = max(res, addition_residual(ctx, x, y, z, w), product_residual(ctx, x), inversion_residual(ctx, x))
    return CheckReport("theta-identities", {"p": cstr(ctx.p), "seed": seed}, res, tol)
