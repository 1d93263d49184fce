"""Published small-n data: q_n, r_n, p_n, P_n and two counting matrices.

Coefficient lists are in ascending powers.  The ``verify --suite tables``
command compares the computed families against these.
"""

from __future__ import annotations

from fractions import Fraction

from .exactpoly import BiPoly, RatPoly

ASM_COUNTS = (1, 2, 7, 42, 429, 7436, 218348)  # n = 1..7

QR = {
    0: ([], [1]),
    1: ([1], []),
    2: ([1], [1]),
    3: ([1], [1]),
    4: ([3, 1], [-3, 1]),
    5: ([6, -4, 1], [6, 1]),
    6: ([40, -2, 1], [20, 0, -8, 1]),
    7: ([50, 100, 15, -10, 1], [-50, 75, 0, 1]),
}

_P_SMALL = {
    0: ([1], 1),
    1: ([1, 3], 1),
    2: ([1, 7, 15, 5], 1),
    3: ([2, 27, 147, 398, 504, 231, 35], 2),
    4: ([2, 42, 387, 2036, 6636, 13464, 16310, 11052, 4122, 798, 63], 2),
    5: (
        [2, 62, 882, 7603, 44134, 181104, 535478, 1140593, 1726302, 1816006,
         1298446, 622677, 196922, 39468, 4554, 231],
        2,
    ),
    6: (
        [8, 336, 6630, 81550, 699405, 4430904, 21422188, 80476380, 236837400,
         546520100, 984509064, 1373623128, 1470762970, 1198556100, 738954900,
         342834244, 118703208, 30199260, 5484050, 673530, 50193, 1716],
        8,
    ),
}

COUNT_MATRICES = {
    4: [
        [0, 0, 0, 0, 1],
        [0, 0, 0, 4, 3],
        [0, 0, 6, 6, 3],
        [0, 4, 6, 0, 1],
        [1, 3, 3, 1, 0],
    ],
    5: [
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 4, 6],
        [0, 0, 0, 0, 7, 18, 15],
        [0, 0, 0, 8, 12, 36, 20],
        [0, 0, 7, 12, 36, 40, 15],
        [0, 4, 18, 36, 40, 24, 6],
        [1, 6, 15, 20, 15, 6, 1],
    ],
}


def qr_reference(n: int) -> tuple[RatPoly, RatPoly]:
    q, r = QR[n]
    return RatPoly(q), RatPoly(r)


def p_reference(n: int) -> RatPoly:
    nums, den = _P_SMALL[n]
    return RatPoly([Fraction(c, den) for c in nums])


def _z(*cs) -> RatPoly:
    return RatPoly(list(cs))


def P_reference(n: int) -> BiPoly:
    """P_n(x, zeta) rebuilt from its factored rows (n <= 4)."""
    z = _z(0, 1)
    if n == 0:
        return BiPoly([_z(1)])
    if n == 1:
        return BiPoly([z, _z(1)])
    if n == 2:
        rows = [
            z**2 * _z(3, 1) * _z(1, 2),
            z * _z(3, 1) * _z(1, 3),
            _z(2, 1) * _z(1, 3),
        ]
        return BiPoly([r * Fraction(1, 2) for r in rows])
    if n == 3:
        a = _z(1, 7, 15, 5)
        b = _z(5, 15, 7, 1)
        rows = [z**3 * _z(1, 2) * b, z**2 * _z(1, 4) * b, z * _z(4, 1) * a, _z(2, 1) * a]
        return BiPoly([r * Fraction(1, 2) for r in rows])
    if n == 4:
        a = _z(2, 27, 147, 398, 504, 231, 35)
        b = _z(35, 231, 504, 398, 147, 27, 2)
        mid = _z(10, 139, 790, 2245, 3232, 2245, 790, 139, 10)
        rows = [
            z**4 * _z(1, 2) ** 2 * b,
            z**3 * _z(1, 2) * _z(1, 5) * b,
            z**2 * mid * 3,
            z * _z(5, 1) * _z(2, 1) * a,
            _z(2, 1) ** 2 * a,
        ]
        return BiPoly([r * Fraction(1, 8) for r in rows])
    raise KeyError(n)
