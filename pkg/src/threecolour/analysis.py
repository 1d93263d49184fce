"""Zeros of p_n and P_n, conjecture scans, integrality, and the free energy.

Every check here is report-style: a violated conjecture comes back as a
``False`` field with enough detail to reproduce it, never as an exception.
Real roots are certified exactly (Sturm counts, rational brackets with a
verified sign change); complex roots are numeric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .errors import NonPositiveEvaluation, NoPositiveRoot
from .exactpoly import (
    RatPoly,
    SturmChain,
    _cauchy_bound,
    refine_root,
    squarefree_part,
    sturm_real_roots,
)
from .families import P_poly, p_degree, p_poly, qr_polys
from .theta import run_parallel

ROOT_BITS = 128
RESIDUAL_TOL = 1e-10

# ---------------------------------------------------------------------------
# exact real-root bookkeeping
# ---------------------------------------------------------------------------


def _mpf_to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    if x == 0:
        return Fraction(0)
    man, exp = (int(v) for v in abs(x).man_exp)
    mag = Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)
    return -mag if x < 0 else mag


def _isolate(sf: RatPoly, chain: SturmChain, count: int, guesses) -> list:
    """Isolating intervals (a, b] for the real roots of a squarefree poly.

    Numeric guesses only choose where to cut; every interval is confirmed
    by an exact Sturm count.  Segments that still hold several roots fall
    back to plain bisection.
    """
    if count == 0:
        return []
    B = _cauchy_bound(sf)
    pts = sorted(_mpf_to_fraction(g) for g in guesses)
    cuts = [-B] + [(x + y) / 2 for x, y in zip(pts, pts[1:])] + [B]
    cuts = [c for c in cuts if -B <= c <= B]
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        k = chain.count(lo, hi)
        if k == 1:
            out.append((lo, hi))
        elif k > 1:
            out.extend(sturm_real_roots(sf, interval=(lo, hi)).intervals)
    if len(out) != count:
        out = list(sturm_real_roots(sf).intervals)
    return sorted(out)


def _interleaving(groups: dict, rounds: int = 200) -> str | None:
    """Left-to-right label string of the real roots of several polynomials.

    ``groups`` maps a one-letter label to (squarefree poly, isolating
    intervals).  Intervals are bisected until no two overlap; None if that
    does not happen (a common root).
    """
    polys = {k: v[0] for k, v in groups.items()}
    ivs = {k: list(v[1]) for k, v in groups.items()}
    for _ in range(rounds):
        flat = sorted((a, b, k, i) for k, lst in ivs.items() for i, (a, b) in enumerate(lst))
        clash = [
            (flat[j], flat[j + 1]) for j in range(len(flat) - 1) if flat[j][1] >= flat[j + 1][0]
        ]
        if not clash:
            return "".join(t[2] for t in flat)
        for pair in clash:
            for a, b, k, i in pair:
                if a == b:
                    continue
                ivs[k][i] = refine_root(polys[k], a, b, (b - a) / 4)
    return None


# ---------------------------------------------------------------------------
# complex roots
# ---------------------------------------------------------------------------


def _aberth_double(high: np.ndarray, zs: np.ndarray, iters: int = 200) -> np.ndarray:
    """Vectorised Aberth iteration in complex double."""
    d_high = np.polyder(high)
    for _ in range(iters):
        ratio = np.polyval(high, zs) / np.polyval(d_high, zs)
        diff = zs[:, None] - zs[None, :]
        np.fill_diagonal(diff, 1)
        inv = 1 / diff
        np.fill_diagonal(inv, 0)
        w = ratio / (1 - ratio * inv.sum(axis=1))
        zs = zs - w
        if np.all(np.abs(w) <= 1e-15 * np.maximum(1, np.abs(zs))):
            break
    return zs


def _aberth(coeffs_high, start, iters: int = 60):
    """Aberth polish at the current mpmath precision.

    A root is frozen once its residual, relative to sum |a_k| |z|^k, reaches
    the working precision; badly conditioned roots stop there too.
    """
    zs = [mpmath.mpc(z) for z in start]
    n = len(zs)
    absc = [abs(c) for c in coeffs_high]
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec + 16)
    live = set(range(n))
    for _ in range(iters):
        for i in sorted(live):
            v, d = mpmath.polyval(coeffs_high, zs[i], derivative=True)
            if abs(v) <= eps * mpmath.polyval(absc, abs(zs[i])):
                live.discard(i)
                continue
            ratio = v / d
            s = mpmath.fsum(1 / (zs[i] - zs[j]) for j in range(n) if j != i)
            zs[i] -= ratio / (1 - ratio * s)
        if not live:
            break
    return zs


@lru_cache(maxsize=None)
def _roots_cached(coeffs: tuple, bits: int):
    high = list(reversed(coeffs))
    fhigh = np.array([float(c) for c in high])
    start = _aberth_double(fhigh, np.roots(fhigh).astype(complex))
    with mpmath.workprec(bits):
        mhigh = [mpmath.mpf(c.numerator) / c.denominator for c in high]
        roots = _aberth(mhigh, [complex(z) for z in start])
        absc = [abs(c) for c in mhigh]
        resid = []
        for z in roots:
            scale = mpmath.polyval(absc, abs(z))
            resid.append(float(abs(mpmath.polyval(mhigh, z)) / scale))
    return tuple(roots), tuple(resid)


def complex_roots(p: RatPoly, bits: int = ROOT_BITS):
    """All roots of p: companion-matrix eigenvalues polished by Aberth.

    Returns the roots and, per root, |p(z)| divided by sum |a_k| |z|^k.
    """
    return _roots_cached(p.coeffs, bits)


# ---------------------------------------------------------------------------
# root profile of p_n
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealRoots:
    poly: RatPoly
    squarefree: bool
    count: int
    intervals: tuple
    chain: SturmChain | None = field(default=None, compare=False, repr=False)


def _real_roots(p: RatPoly, approx=()) -> RealRoots:
    """Exact count and isolation, with numeric roots as cutting hints."""
    sf = squarefree_part(p)
    chain = SturmChain(sf)
    count = chain.count()
    guesses = [z.real for z in sorted(approx, key=lambda z: abs(z.imag))[:count]]
    ivs = _isolate(sf, chain, count, guesses)
    return RealRoots(sf, sf.degree() == p.degree(), count, tuple(ivs), chain)


@dataclass(frozen=True)
class RootReport:
    n: int
    degree: int
    real_count: int
    expected_real_count: int
    simple: bool
    location_ok: bool
    intervals: tuple
    roots: tuple
    max_residual: float
    interlacing: dict = field(default_factory=dict)

    @property
    def conjugate_pairs(self) -> int:
        return sum(1 for z in self.roots if z[1] > 0)

    @property
    def count_ok(self) -> bool:
        return self.real_count == self.expected_real_count

    def csv(self) -> str:
        lines = ["re,im"]
        lines += [f"{re:.17g},{im:.17g}" for re, im in self.roots]
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "real_count": self.real_count,
            "expected_real_count": self.expected_real_count,
            "simple": self.simple,
            "location_ok": self.location_ok,
            "intervals": [[str(a), str(b)] for a, b in self.intervals],
            "max_residual": self.max_residual,
            "interlacing": self.interlacing,
        }


def _location(n: int, rr: RealRoots) -> bool:
    chain = rr.chain
    if n % 2:
        return chain.count(Fraction(-1, 2), 0) == rr.count and rr.poly(0) != 0
    return chain.count(-math.inf, -2) == rr.count and rr.poly(-2) != 0


def _profile_parts(n: int):
    p = p_poly(n)
    if p.degree() <= 0:
        return p, RealRoots(p, True, 0, ()), [], 0.0
    roots, resid = complex_roots(p)
    return p, _real_roots(p, roots), roots, max(resid)


def _sorted_roots(roots, rr: RealRoots) -> tuple:
    by_im = sorted(roots, key=lambda z: abs(z.imag))
    cplx = by_im[rr.count :]
    out = []
    for a, b in rr.intervals:
        a, b = refine_root(rr.poly, a, b, Fraction(1, 2**20))
        a, b = refine_root(rr.poly, a, b, Fraction(1, 2**64) * max(1, abs(a), abs(b)))
        out.append((float((a + b) / 2), 0.0))
    upper = [z for z in cplx if z.imag > 0]
    if 2 * len(upper) == len(cplx):
        # p is real: report exact conjugate pairs
        for z in upper:
            out += [(float(z.real), float(z.imag)), (float(z.real), -float(z.imag))]
    else:
        out += [(float(z.real), float(z.imag)) for z in cplx]
    return tuple(sorted(out))


def zero_chain(m: int) -> dict:
    """Interlacing of p_{2m}, reversed p_{2m+1} and p_{2m+2}.

    Verdicts: the zeros of p_{2m} strictly interlace those of the reversal
    (the reversal owning both ends), the reversal's zeros alternate left of
    those of p_{2m+2}, and the largest zero of p_{2m+2} lies below -2.
    """
    n0, n1, n2 = 2 * m, 2 * m + 1, 2 * m + 2
    a = _profile_parts(n0)[1]
    c = _profile_parts(n2)[1]
    rev = p_poly(n1).reverse(p_degree(n1))
    b = _real_roots(rev, [1 / z for z in complex_roots(p_poly(n1))[0]])
    first = _interleaving({"a": (a.poly, a.intervals), "b": (b.poly, b.intervals)})
    second = _interleaving({"b": (b.poly, b.intervals), "c": (c.poly, c.intervals)})
    want_first = "b" + "ab" * a.count
    want_second = "bc" * c.count
    below = c.chain is None or (c.chain.count(-math.inf, -2) == c.count and c.poly(-2) != 0)
    return {
        "m": m,
        "p_even_vs_reversed": first == want_first,
        "reversed_vs_next": second == want_second,
        "next_below_minus_two": below,
        "pattern": [first, second],
    }


def interlacing_scan(nmax: int, jobs: int = 1) -> list[dict]:
    """zero_chain(m) for every m with 2m+2 <= nmax."""
    return run_parallel(zero_chain, range(0, nmax // 2), jobs)


def root_profile(n: int) -> RootReport:
    p, rr, roots, worst = _profile_parts(n)
    inter = zero_chain(n // 2 - 1) if n % 2 == 0 and n >= 2 else {}
    return RootReport(
        n=n,
        degree=max(p.degree(), 0),
        real_count=rr.count,
        expected_real_count=(n + 1) // 2,
        simple=rr.squarefree,
        location_ok=_location(n, rr) if rr.count else True,
        intervals=rr.intervals,
        roots=_sorted_roots(roots, rr),
        max_residual=worst,
        interlacing=inter,
    )


def zeros_csv(n: int) -> str:
    return root_profile(n).csv()


# ---------------------------------------------------------------------------
# coefficient conjectures
# ---------------------------------------------------------------------------


def expected_argmax(n: int) -> int | None:
    """Index of the largest coefficient of p_n in the verified range."""
    if n % 2 == 0 and n <= 16:
        return n * (n + 2) // 4
    if n % 2 == 1 and n <= 7:
        return (n + 1) ** 2 // 4
    if n % 2 == 1 and 9 <= n <= 15:
        return (n - 1) * (n + 3) // 4
    return None


def is_strictly_unimodal(cs) -> bool:
    k = max(range(len(cs)), key=lambda i: cs[i])
    up = all(cs[i] < cs[i + 1] for i in range(k))
    down = all(cs[i] > cs[i + 1] for i in range(k, len(cs) - 1))
    return up and down


def coefficient_scan(n: int) -> dict:
    cs = p_poly(n).coeffs
    top = max(cs)
    argmax = [i for i, c in enumerate(cs) if c == top]
    want = expected_argmax(n)
    return {
        "n": n,
        "positive": all(c > 0 for c in cs),
        "unimodal": is_strictly_unimodal(cs),
        "argmax": argmax[0] if len(argmax) == 1 else argmax,
        "expected_argmax": want,
        "argmax_ok": None if want is None else argmax == [want],
    }


def conjecture_scan(nmax: int = 16, jobs: int = 1) -> list[dict]:
    if nmax > 16:
        raise ValueError("the scan covers n <= 16")
    return run_parallel(coefficient_scan, range(0, nmax + 1), jobs)


def second_coefficient_formula(n: int) -> Fraction:
    """Conjectured coefficient of zeta^{n(n+1)/2 - 1} in p_n (n >= 1)."""
    b = math.comb(2 * n + 2, n + 1)
    if n % 2 == 0:
        return Fraction(n * n * (7 * n + 10) * b, 2 ** ((n + 8) // 2) * (n + 2))
    return Fraction((n + 1) * (7 * n * n + 3 * n - 6) * b, 2 ** ((n + 7) // 2) * (n + 2))


def second_coefficient_scan(nmax: int = 16) -> list[dict]:
    """Experimental: the coefficient just below the top, against its guess."""
    out = []
    for n in range(1, nmax + 1):
        got = p_poly(n).coeff(p_degree(n) - 1)
        want = second_coefficient_formula(n)
        out.append({"n": n, "got": str(got), "formula": str(want), "match": got == want})
    return out


# ---------------------------------------------------------------------------
# zeros of P_n(x, zeta) in x
# ---------------------------------------------------------------------------


def _x_roots(P: RatPoly) -> RealRoots:
    sf = squarefree_part(P)
    rep = sturm_real_roots(sf)
    return RealRoots(sf, sf.degree() == P.degree(), rep.count, rep.intervals, SturmChain(sf))


def px_interlacing(zeta, nmax: int = 8) -> dict:
    """Zeros in x of P_n(x, zeta) for fixed zeta in (-2, -1/2), zeta != -1."""
    zeta = Fraction(zeta)
    if not (Fraction(-2) < zeta < Fraction(-1, 2)) or zeta == -1:
        raise ValueError("zeta must lie in (-2, -1/2) and differ from -1")
    above_one = zeta < -1
    rows = []
    prev = None
    for n in range(1, nmax + 1):
        P = P_poly(n).eval_zeta(zeta)
        rr = _x_roots(P)
        chain = rr.chain
        positive = chain.count(0, math.inf) == n
        region = chain.count(1, math.inf) == n if above_one else chain.count(0, 1) == n
        row = {
            "n": n,
            "simple": rr.squarefree,
            "all_real_positive": rr.count == n and positive,
            "region_ok": region,
        }
        if prev is not None:
            order = _interleaving({"b": (prev.poly, prev.intervals), "c": (rr.poly, rr.intervals)})
            row["interlaces_previous"] = order == "c" + "bc" * prev.count
        rows.append(row)
        prev = rr
    return {"zeta": str(zeta), "region": "x>1" if above_one else "0<x<1", "rows": rows}


# ---------------------------------------------------------------------------
# integrality
# ---------------------------------------------------------------------------


def mu_bound(n: int, k: int) -> int:
    s = n * (n + 2) if n % 2 == 0 else (n + 1) ** 2
    return min(s // 12, k, s // 2 - k)


def integrality_row(n: int) -> dict:
    p = p_poly(n)
    row = {"n": n}
    if n >= 1:
        q, r = qr_polys(n)
        row["q_integral"] = q.is_integral()
        row["r_integral"] = r.is_integral()
    scaled = p.scale_variable(Fraction(1, 2)) * 2 ** (n * (n + 2) // 2)
    row["scaled_integral"] = scaled.is_integral()
    bad = [k for k, a in enumerate(p.coeffs) if (a * 2 ** mu_bound(n, k)).denominator != 1]
    row["mu_bound_ok"] = not bad
    if bad:
        row["mu_bound_violations"] = bad
    return row


def integrality_report(nmax: int, jobs: int = 1) -> list[dict]:
    return run_parallel(integrality_row, range(0, nmax + 1), jobs)


# ---------------------------------------------------------------------------
# T <-> zeta and the free energy
# ---------------------------------------------------------------------------


def T_from_zeta(z):
    return 2 * (z * z + 4 * z + 1) ** 3 / (z * (z + 1) ** 4)


def zeta_from_T(T, branch: str = "small"):
    """Positive zeta with T_from_zeta(zeta) = T; the two roots are reciprocal.

    ``branch="small"`` returns the root in (0, 1], ``"large"`` its inverse.
    """
    if branch not in ("small", "large"):
        raise ValueError(branch)
    if T < 27:
        raise NoPositiveRoot(f"T={T} is below 27")
    if T == 27:
        return Fraction(1) if isinstance(T, (int, Fraction)) else 1.0
    with mpmath.workdps(40):
        T = mpmath.mpf(T.numerator) / T.denominator if isinstance(T, Fraction) else mpmath.mpf(T)

        # T is 2(s+4)^3/(s+2)^2 in s = zeta + 1/zeta, increasing for s >= 2,
        # so the wanted s is the largest real root of the cubic below
        roots = mpmath.polyroots([2, 24 - T, 96 - 4 * T, 128 - 4 * T], maxsteps=200, extraprec=200)
        s = max(mpmath.re(r) for r in roots if abs(mpmath.im(r)) <= 1e-20 * (1 + abs(r)))
        s = max(s, mpmath.mpf(2))
        z = float(2 / (s + mpmath.sqrt(s * s - 4)))
    return z if branch == "small" else 1 / z


def g_value(z: float) -> float:
    return (1 + 2 * z) ** 0.75 * (1 + z / 2) ** 0.75 / (1 + z)


def w_dwbc(z: float) -> float:
    return (z + 2) ** 0.75 * (2 * z + 1) ** 0.75 / (2 ** (2 / 3) * z ** (1 / 12) * (z + 1) ** (4 / 3))


def w_per(z: float) -> float:
    return 2 ** (5 / 3) * z ** (1 / 3) * (z + 1) ** (4 / 3) / (2 * z + 1) ** 1.5


def w_relation_residual(z: float) -> float:
    """|W_DWBC(z) - 2 / sqrt(W_per(z) W_per(1/z))|, relative."""
    rhs = 2 / math.sqrt(w_per(z) * w_per(1 / z))
    return abs(w_dwbc(z) - rhs) / abs(rhs)


def _log_fraction(v: Fraction) -> float:
    return math.log(v.numerator) - math.log(v.denominator)


def _richardson(ns, fs) -> float:
    """Limit of f(n) = L + a/n + b/n^2 through the last three points."""
    A = np.array([[1.0, 1.0 / n, 1.0 / n**2] for n in ns[-3:]])
    return float(np.linalg.solve(A, np.array(fs[-3:]))[0])


@dataclass(frozen=True)
class FreeEnergyEstimate:
    zeta: Fraction
    f_sequence: tuple
    even_limit: float
    odd_limit: float
    extrapolated: float
    conjectured: float
    w_dwbc: float

    @property
    def abs_error(self) -> float:
        return abs(self.extrapolated - self.conjectured)

    def to_json_obj(self) -> dict:
        return {
            "zeta": str(self.zeta),
            "f_sequence": list(self.f_sequence),
            "extrapolated": self.extrapolated,
            "conjectured": self.conjectured,
            "abs_error": self.abs_error,
        }


def f_sequence(zeta, nmax: int) -> list[float]:
    zeta = Fraction(zeta)
    out = []
    for n in range(1, nmax + 1):
        v = p_poly(n)(zeta)
        if v <= 0:
            raise NonPositiveEvaluation(f"p_{n}({zeta}) = {v}")
        out.append(_log_fraction(v) / n**2)
    return out


def free_energy(zeta, nmax: int = 16) -> FreeEnergyEstimate:
    """Parity-split Richardson estimate of lim log p_n(zeta) / n^2."""
    zeta = Fraction(zeta)
    if zeta <= 0:
        raise ValueError("zeta must be positive")
    if not 6 <= nmax <= 16:
        raise ValueError("nmax must lie in [6, 16]")
    fs = f_sequence(zeta, nmax)
    ns = list(range(1, nmax + 1))
    even = [(n, f) for n, f in zip(ns, fs) if n % 2 == 0]
    odd = [(n, f) for n, f in zip(ns, fs) if n % 2 == 1]
    e = _richardson(*zip(*even))
    o = _richardson(*zip(*odd))
    z = float(zeta)
    return FreeEnergyEstimate(
        zeta=zeta,
        f_sequence=tuple(fs),
        even_limit=e,
        odd_limit=o,
        extrapolated=(e + o) / 2,
        conjectured=math.log(g_value(z)),
        w_dwbc=w_dwbc(z),
    )
