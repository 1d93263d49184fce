"""Partition polynomial from (q_n, r_n) and the support triangle of N.

The three-colour partition function is recovered from q_n and r_n by
expanding T = e2^3 / e3^2 (e2, e3 elementary symmetric in t0, t1, t2) and
clearing the powers of e3, which is a Laurent computation that must end in
a polynomial with non-negative integer coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .boards import CountTable, TriPoly, counting_table
from .errors import NegativeCoefficient, NonIntegerCoefficient
from .families import chi, qr_polys

E2 = TriPoly({(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
ENUMERATED_UP_TO = 6


@dataclass(frozen=True)
class Report:
    check: str
    n: int
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {"check": self.check, "n": self.n, "pass": self.passed, "detail": self.detail}


def _series_in_T(poly, e2_offset: int, e3_offset: int) -> TriPoly:
    """sum_k c_k e2^(3k+e2_offset) e3^(e3_offset-2k) for poly = sum c_k x^k."""
    out = TriPoly()
    power = E2 ** e2_offset
    cube = E2 ** 3
    for k, c in enumerate(poly.coeffs):
        if c:
            s = e3_offset - 2 * k
            out = out + (power * c).shift((s, s, s))
        power = power * cube
    return out


@lru_cache(maxsize=None)
def z3c_from_qr(n: int) -> TriPoly:
    """Z_n as an exact polynomial in t0, t1, t2 built from q_n and r_n."""
    q, r = qr_polys(n)
    sign = -1 if (n + 1) % 2 else 1
    two = 2 ** chi(n % 2 == 1)
    case = n % 3
    if case == 0:
        N = n * (n + 2) // 3
        body = _series_in_T(q, 2, -1) - _series_in_T(r, 0, 0).shift((1, 0, 0)) * two
    elif case == 1:
        N = n * (n + 2) // 3
        body = _series_in_T(q, 0, 0).shift((1, 1, -1)) - _series_in_T(r, 1, 0).shift((0, 0, -1)) * two
    else:
        N = (n + 1) ** 2 // 3
        body = _series_in_T(q, 0, 0) - _series_in_T(r, 1, 0).shift((-1, 0, -1)) * two
    z = body.shift((N, N, N)) * sign
    terms = {}
    for k, v in z.terms.items():
        v = Fraction(v)
        if min(k) < 0:
            raise NonIntegerCoefficient(f"negative exponent {k} survives at n={n}")
        if v.denominator != 1:
            raise NonIntegerCoefficient(f"coefficient {v} at {k} for n={n}")
        if v < 0:
            raise NegativeCoefficient(f"coefficient {v} at {k} for n={n}")
        terms[k] = int(v)
    return TriPoly(terms)


def count_table(n: int) -> CountTable:
    """N by enumeration for small n, by reconstruction beyond."""
    if n <= ENUMERATED_UP_TO:
        return counting_table(n)
    return z3c_from_qr(n).to_count_table(n)


# ---------------------------------------------------------------------------
# the support triangle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SupportProfile:
    n: int
    M: int
    m: int
    eps: int
    delta: int

    @property
    def P(self) -> tuple[int, int, int]:
        return (self.m + self.eps, self.M, self.M)

    @property
    def Q(self) -> tuple[int, int, int]:
        return (self.M + self.eps, self.m, self.M)

    @property
    def R(self) -> tuple[int, int, int]:
        return (self.M + self.eps, self.M, self.m)

    def contains(self, pt: tuple[int, int, int]) -> bool:
        x, y, z = pt
        return (
            x + y + z == (self.n + 1) ** 2
            and x <= self.M + self.eps
            and y <= self.M
            and z <= self.M
        )

    def lattice_points(self) -> list[tuple[int, int, int]]:
        total = (self.n + 1) ** 2
        pts = []
        for y in range(self.m, self.M + 1):
            for z in range(self.m, self.M + 1):
                x = total - y - z
                if self.contains((x, y, z)):
                    pts.append((x, y, z))
        return pts


def support_profile(n: int) -> SupportProfile:
    if n < 1:
        raise ValueError("support profile needs n >= 1")
    r = n % 6
    s = 5 * n * n + 8 * n
    t = n * n + 4 * n
    if r in (0, 2):
        M, m, eps = s // 12, t // 6, 1
    elif r == 1:
        M, m, eps = (s + 11) // 12, (t + 7) // 6, -2
    elif r in (3, 5):
        M, m, eps = (s + 3) // 12, (t + 3) // 6, 0
    else:
        M, m, eps = (s + 8) // 12, (t + 4) // 6, -1
    return SupportProfile(n, M, m, eps, n * n // 4)


def rotated(table: CountTable) -> dict[tuple[int, int, int], int]:
    """N-bar: N with colours rotated so the distinguished colour comes first."""
    case = table.n % 3
    out = {}
    for (k0, k1, k2), v in table.counts.items():
        if case == 0:
            key = (k0, k1, k2)
        elif case == 1:
            key = (k2, k0, k1)
        else:
            key = (k1, k2, k0)
        out[key] = v
    return out


def _binom(m: int, k: int) -> int:
    if k < 0:
        return 0
    if k == 0:
        return 1
    if m < k:
        return 0
    return math.comb(m, k)


def _edge_point(A, B, k: int, d: int):
    return tuple((k * a + (d - k) * b) // d for a, b in zip(A, B))


def support_edges_check(n: int, table: CountTable | None = None) -> Report:
    """Support inside the triangle, corner membership and the three edge
    restrictions given by binomial coefficients."""
    table = table or count_table(n)
    sp = support_profile(n)
    nbar = rotated(table)
    outside = [pt for pt in sorted(nbar) if not sp.contains(pt)]
    if outside:
        return Report("support-edges", n, False, {"outside_triangle": list(outside[0])})
    d = sp.delta
    even = n % 2 == 0
    if d == 0:
        ok = nbar.get(sp.P, 0) == 1
        return Report("support-edges", n, ok, {"delta": 0})
    edges = {
        "PQ": (sp.P, sp.Q, (lambda k: _binom(d - 1, k)) if even else (lambda k: _binom(d, k))),
        "PR": (sp.P, sp.R, (lambda k: _binom(d - 1, k)) if even else (lambda k: _binom(d, k))),
        "QR": (
            sp.Q,
            sp.R,
            (lambda k: _binom(d, k)) if even else (lambda k: _binom(d - 2, k) + _binom(d - 2, k - 2)),
        ),
    }
    for name, (A, B, expect) in edges.items():
        for k in range(d + 1):
            pt = _edge_point(A, B, k, d)
            got = nbar.get(pt, 0)
            if got != expect(k):
                return Report(
                    "support-edges", n, False, {"edge": name, "k": k, "point": list(pt), "got": got, "expected": expect(k)}
                )
    corners = {"P": sp.P in nbar, "Q": sp.Q in nbar, "R": sp.R in nbar}
    ok = corners["Q"] and corners["R"] and corners["P"] == (not even)
    return Report(
        "support-edges",
        n,
        ok,
        {"M": sp.M, "m": sp.m, "eps": sp.eps, "delta": d, "corners_in_support": corners},
    )


def parity_symmetry_check(n: int, table: CountTable | None = None) -> Report:
    """Parity of N-bar is invariant under the six symmetries of the triangle."""
    if n % 2 == 0:
        raise ValueError("the parity symmetry concerns odd n")
    table = table or count_table(n)
    sp = support_profile(n)
    nbar = rotated(table)
    for pt, v in sorted(nbar.items()):
        if v % 2 == 0:
            continue
        shifted = (pt[0] - sp.eps, pt[1], pt[2])
        for perm in permutations(range(3)):
            img = tuple(shifted[i] for i in perm)
            img = (img[0] + sp.eps, img[1], img[2])
            if nbar.get(img, 0) % 2 != 1:
                return Report("parity-symmetry", n, False, {"odd_point": list(pt), "image": list(img)})
    return Report("parity-symmetry", n, True, {"odd_points": sum(1 for v in nbar.values() if v % 2)})


def symmetric_pair(n: int) -> tuple[int, int]:
    """The two colours exchanged by the reflection symmetry, ascending."""
    return tuple(sorted(((1 - n) % 3, (-1 - n) % 3)))


def symmetry_check(n: int, Z: TriPoly | None = None) -> Report:
    Z = Z if Z is not None else z3c_from_qr(n)
    a, b = symmetric_pair(n)
    perm = [0, 1, 2]
    perm[a], perm[b] = b, a
    return Report("reflection", n, Z.permute(tuple(perm)) == Z, {"swapped": [a, b]})


def count_matrix(table: CountTable) -> list[list[int]]:
    """Square (delta+1) array of N: rows and columns step the two exchanged
    colours upward from their minimum m (zero where no board exists)."""
    n = table.n
    sp = support_profile(n)
    a, b = symmetric_pair(n)
    c = 3 - a - b
    total = (n + 1) ** 2
    out = []
    for i in range(sp.delta + 1):
        row = []
        for j in range(sp.delta + 1):
            k = [0, 0, 0]
            k[a] = sp.m + i
            k[b] = sp.m + j
            k[c] = total - k[a] - k[b]
            row.append(table[tuple(k)])
        out.append(row)
    return out
