"""Exact dense polynomials over the rationals.

``RatPoly`` stores an integer coefficient vector together with one common
positive denominator, which keeps products and exact divisions in integer
arithmetic.  ``BiPoly`` is a tuple of ``RatPoly`` rows indexed by the power of
the outer variable ``x``; each row is a polynomial in the inner variable.

Also here: fraction-free linear solving, Sturm sequences, Laurent expansion
at a rational point, truncated power series over an arbitrary field, and the
two product formulas for the ASM and CSPP counts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import Inconsistent, NotDivisible, ValuationMismatch

__all__ = [
    "RatPoly",
    "BiPoly",
    "RatFunc",
    "SeriesAtPoint",
    "Series",
    "AffineSolution",
    "RealRootReport",
    "reverse_coefficients",
    "exact_divide",
    "solve_exact_linear",
    "sturm_real_roots",
    "squarefree_part",
    "poly_gcd",
    "series_at_point",
    "laurent_limit",
    "valuation_at",
    "asm_count",
    "cspp_count",
    "interpolate",
    "ZETA",
]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _strip(nums: list[int]) -> list[int]:
    while nums and nums[-1] == 0:
        nums.pop()
    return nums


def _content(nums: Sequence[int]) -> int:
    g = 0
    for c in nums:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


def _int_exact_div(num: Sequence[int], den: Sequence[int]) -> list[int] | None:
    """Quotient in Z[x] of num by den, or None when den does not divide num."""
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    if dn < dd:
        return [] if not num else None
    lead = den[-1]
    q = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        top = num[k + dd]
        if top:
            c, r = divmod(top, lead)
            if r:
                return None
            q[k] = c
            for i in range(dd + 1):
                num[k + i] -= c * den[i]
    if any(num[:dd]):
        return None
    return q


class RatPoly:
    """Dense univariate polynomial with rational coefficients (index = power)."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        fr = [_as_fraction(c) for c in coeffs]
        den = 1
        for f in fr:
            den = _lcm(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fr]
        self._set(nums, den)

    def _set(self, nums: list[int], den: int) -> None:
        nums = _strip(nums)
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        if not nums:
            den = 1
        else:
            g = math.gcd(_content(nums), den)
            if g > 1:
                nums = [c // g for c in nums]
                den //= g
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def from_ints(cls, nums: Iterable[int], den: int = 1) -> "RatPoly":
        obj = cls.__new__(cls)
        obj._set(list(nums), den)
        return obj

    @classmethod
    def constant(cls, c) -> "RatPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "RatPoly":
        return cls([0] * k + [c])

    # ------------------------------------------------------------------ access
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(c, d) for c in self._num)

    @property
    def int_coeffs(self) -> tuple[tuple[int, ...], int]:
        """Integer numerators and the common denominator."""
        return self._num, self._den

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._num) - 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    def lead(self) -> Fraction:
        return self.coeff(self.degree()) if self._num else Fraction(0)

    def is_zero(self) -> bool:
        return not self._num

    def is_integral(self) -> bool:
        return self._den == 1

    def valuation(self) -> int:
        """Lowest power with a nonzero coefficient (-1 for zero)."""
        for k, c in enumerate(self._num):
            if c:
                return k
        return -1

    def __len__(self) -> int:
        return len(self._num)

    def __repr__(self) -> str:
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return self.pretty()

    def pretty(self, var: str = "z") -> str:
        if not self._num:
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self.coeff(k)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -------------------------------------------------------------- comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self == RatPoly([other])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    # -------------------------------------------------------------- arithmetic
    @staticmethod
    def _coerce(other) -> "RatPoly | None":
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return RatPoly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = _lcm(self._den, o._den)
        a, b = den // self._den, den // o._den
        n = max(len(self._num), len(o._num))
        x = self._num + (0,) * (n - len(self._num))
        y = o._num + (0,) * (n - len(o._num))
        return RatPoly.from_ints([a * u + b * v for u, v in zip(x, y)], den)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly.from_ints([-c for c in self._num], self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return RatPoly.from_ints([c * other for c in self._num], self._den)
        if isinstance(other, Fraction):
            return RatPoly.from_ints(
                [c * other.numerator for c in self._num], self._den * other.denominator
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatPoly.from_ints(_int_mul(self._num, o._num), self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            f = _as_fraction(other)
            if f == 0:
                raise ZeroDivisionError("division of RatPoly by zero")
            return self * (1 / f)
        if isinstance(other, RatPoly):
            return exact_divide(self, other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("RatPoly powers must be non-negative integers")
        result = RatPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    # -------------------------------------------------------------- evaluation
    def __call__(self, value):
        if isinstance(value, RatPoly):
            return self.compose(value)
        if isinstance(value, (int, Fraction)):
            v = _as_fraction(value)
            a, b = v.numerator, v.denominator
            acc = 0
            bp = 1
            # Horner on the homogenised form sum c_k a^k b^(d-k)
            for c in reversed(self._num):
                acc = acc * a + c * bp
                bp *= b
            if not self._num:
                return Fraction(0)
            return Fraction(acc, self._den * b ** (len(self._num) - 1))
        acc = 0
        for c in reversed(self._num):
            acc = acc * value + c
        return acc / self._den

    def compose(self, inner: "RatPoly") -> "RatPoly":
        acc = RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def scale_variable(self, s) -> "RatPoly":
        """Return p(s*z) for a rational scale s."""
        s = _as_fraction(s)
        out, pw = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw *= s
        return RatPoly(out)

    def taylor_shift(self, a) -> "RatPoly":
        """Return p(z + a)."""
        a = _as_fraction(a)
        coeffs = list(self.coeffs)
        n = len(coeffs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                coeffs[j] += a * coeffs[j + 1]
        return RatPoly(coeffs)

    def derivative(self) -> "RatPoly":
        return RatPoly.from_ints([k * c for k, c in enumerate(self._num)][1:], self._den)

    def reverse(self, degree: int | None = None) -> "RatPoly":
        """Return z^d p(1/z), with d the degree unless given explicitly."""
        d = self.degree() if degree is None else degree
        if self.is_zero():
            return RatPoly()
        if d < self.degree():
            raise ValueError("reversal degree below the polynomial degree")
        nums = list(self._num) + [0] * (d - self.degree())
        return RatPoly.from_ints(nums[::-1], self._den)

    def primitive(self) -> tuple[int, ...]:
        """Integer primitive part with positive leading coefficient."""
        if not self._num:
            return ()
        g = _content(self._num)
        if self._num[-1] < 0:
            g = -g
        return tuple(c // g for c in self._num)

    # ----------------------------------------------------------- serialization
    def to_json_obj(self, var: str = "zeta") -> dict:
        return {
            "var": var,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    def to_json(self, var: str = "zeta") -> str:
        return json.dumps(self.to_json_obj(var), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RatPoly":
        return cls(Fraction(int(n), int(d)) for n, d in obj["coeffs"])

    @classmethod
    def from_json(cls, text: str) -> "RatPoly":
        return cls.from_json_obj(json.loads(text))


ZETA = RatPoly([0, 1])


def poly_divmod(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly]:
    """Quotient and remainder over Q."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a.coeffs)
    bc = b.coeffs
    db = len(bc) - 1
    lead = bc[-1]
    if len(r) - 1 < db:
        return RatPoly(), a
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lead
        q[k] = c
        if c:
            for i in range(db + 1):
                r[k + i] -= c * bc[i]
    return RatPoly(q), RatPoly(r[:db])


def reverse_coefficients(p: RatPoly) -> RatPoly:
    """x^deg(p) * p(1/x)."""
    return p.reverse()


# ---------------------------------------------------------------------------
# Bivariate polynomials
# ---------------------------------------------------------------------------


class BiPoly:
    """Polynomial in x with RatPoly coefficients in zeta (rows = powers of x)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable = ()):
        rs = [r if isinstance(r, RatPoly) else RatPoly(r) for r in rows]
        while rs and rs[-1].is_zero():
            rs.pop()
        self.rows: tuple[RatPoly, ...] = tuple(rs)

    @classmethod
    def from_zeta_poly(cls, p: RatPoly) -> "BiPoly":
        return cls([p])

    @classmethod
    def x_linear(cls, c1, c0) -> "BiPoly":
        """c1*x + c0 with zeta-polynomial (or rational) coefficients."""
        return cls([_rp(c0), _rp(c1)])

    def degree_x(self) -> int:
        return len(self.rows) - 1

    def degree_zeta(self) -> int:
        return max((r.degree() for r in self.rows), default=-1)

    def row(self, k: int) -> RatPoly:
        return self.rows[k] if 0 <= k < len(self.rows) else RatPoly()

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"BiPoly({list(self.rows)!r})"

    def __add__(self, other):
        o = _bp(other)
        n = max(len(self.rows), len(o.rows))
        return BiPoly(self.row(k) + o.row(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(-r for r in self.rows)

    def __sub__(self, other):
        return self + (-_bp(other))

    def __rsub__(self, other):
        return _bp(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatPoly)):
            return BiPoly(r * other for r in self.rows)
        o = _bp(other)
        if not self.rows or not o.rows:
            return BiPoly()
        out = [RatPoly() for _ in range(len(self.rows) + len(o.rows) - 1)]
        for i, a in enumerate(self.rows):
            if a.is_zero():
                continue
            for j, b in enumerate(o.rows):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = BiPoly([RatPoly([1])])
        for _ in range(k):
            result = result * self
        return result

    def eval_x(self, value) -> RatPoly:
        """Substitute x := value (a RatPoly in zeta or a rational)."""
        v = _rp(value)
        acc = RatPoly()
        for r in reversed(self.rows):
            acc = acc * v + r
        return acc

    def eval_x_rational(self, xn: RatPoly, xd: RatPoly, degree: int) -> RatPoly:
        """Return xd^degree * P(xn/xd, zeta) as a polynomial in zeta."""
        acc = RatPoly()
        for k, r in enumerate(self.rows):
            acc = acc + r * xn ** k * xd ** (degree - k)
        return acc

    def eval_zeta(self, z) -> RatPoly:
        """Substitute zeta := z (rational), giving a polynomial in x."""
        return RatPoly(r(_as_fraction(z)) for r in self.rows)

    def __call__(self, x, z):
        total = 0
        for r in reversed(self.rows):
            total = total * x + r(z)
        return total

    def transpose(self) -> "BiPoly":
        """Swap the roles of the two variables."""
        dz = self.degree_zeta()
        return BiPoly(
            RatPoly(self.row(k).coeff(j) for k in range(len(self.rows)))
            for j in range(dz + 1)
        )

    def to_json_obj(self) -> dict:
        width = self.degree_zeta() + 1
        grid = []
        for r in self.rows:
            cs = list(r.coeffs) + [Fraction(0)] * (width - len(r))
            grid.append([[str(c.numerator), str(c.denominator)] for c in cs])
        return {"vars": ["x", "zeta"], "grid": grid}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "BiPoly":
        return cls(RatPoly(Fraction(int(n), int(d)) for n, d in row) for row in obj["grid"])

    @classmethod
    def from_json(cls, text: str) -> "BiPoly":
        return cls.from_json_obj(json.loads(text))


def _rp(value) -> RatPoly:
    if isinstance(value, RatPoly):
        return value
    return RatPoly([value])


def _bp(value) -> BiPoly:
    if isinstance(value, BiPoly):
        return value
    return BiPoly([_rp(value)])


def _exact_divide_ratpoly(num: RatPoly, den: RatPoly) -> RatPoly:
    if den.is_zero():
        raise ZeroDivisionError("exact division by the zero polynomial")
    if num.is_zero():
        return RatPoly()
    dnums, dden = den.int_coeffs
    g = _content(dnums)
    if dnums[-1] < 0:
        g = -g
    prim = [c // g for c in dnums]
    nnums, nden = num.int_coeffs
    q = _int_exact_div(nnums, prim)
    if q is None:
        raise NotDivisible("remainder is nonzero", poly_divmod(num, den)[1])
    # num = nnums/nden, den = g*prim/dden
    return RatPoly.from_ints(q, 1) * Fraction(dden, nden * g)


def exact_divide(num, den):
    """Exact quotient num/den; raises NotDivisible when a remainder is left."""
    if isinstance(num, RatPoly) and isinstance(den, (RatPoly, int, Fraction)):
        return _exact_divide_ratpoly(num, _rp(den))
    if isinstance(num, BiPoly):
        if isinstance(den, (RatPoly, int, Fraction)):
            d = _rp(den)
            try:
                return BiPoly(_exact_divide_ratpoly(r, d) for r in num.rows)
            except NotDivisible as exc:
                raise NotDivisible("bivariate remainder is nonzero", exc.remainder) from None
        if isinstance(den, BiPoly):
            return _exact_divide_bipoly(num, den)
    raise TypeError("exact_divide expects RatPoly or BiPoly operands")


def _exact_divide_bipoly(num: BiPoly, den: BiPoly) -> BiPoly:
    if den.is_zero():
        raise ZeroDivisionError("exact division by the zero polynomial")
    rows = list(num.rows)
    dd = den.degree_x()
    lead = den.rows[-1]
    if len(rows) - 1 < dd:
        if not rows:
            return BiPoly()
        raise NotDivisible("x-degree of divisor exceeds dividend", num)
    q = [RatPoly()] * (len(rows) - dd)
    for k in range(len(rows) - 1 - dd, -1, -1):
        top = rows[k + dd]
        if top.is_zero():
            continue
        try:
            c = _exact_divide_ratpoly(top, lead)
        except NotDivisible:
            raise NotDivisible("leading zeta-coefficient not divisible", None) from None
        q[k] = c
        for i in range(dd + 1):
            rows[k + i] = rows[k + i] - c * den.rows[i]
    rem = BiPoly(rows[:dd])
    if not rem.is_zero():
        raise NotDivisible("bivariate remainder is nonzero", rem)
    return BiPoly(q)


# ---------------------------------------------------------------------------
# Rational functions and Laurent expansions
# ---------------------------------------------------------------------------


class RatFunc:
    """Unreduced quotient of two RatPoly; enough for limits and valuations."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = _rp(num)
        self.den = _rp(1 if den is None else den)
        if self.den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")

    def _other(self, o):
        if isinstance(o, RatFunc):
            return o
        return RatFunc(o)

    def __add__(self, o):
        o = self._other(o)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        o = self._other(o)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._other(o)
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._other(o) / self

    def __pow__(self, k: int):
        if k >= 0:
            return RatFunc(self.num ** k, self.den ** k)
        return RatFunc(self.den ** (-k), self.num ** (-k))

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def as_poly(self) -> RatPoly:
        """Exact polynomial value, raising NotDivisible otherwise."""
        return exact_divide(self.num, self.den)


@dataclass(frozen=True)
class SeriesAtPoint:
    """Truncated Laurent expansion sum_k coeffs[k] (z-point)^(valuation+k)."""

    point: Fraction
    coeffs: tuple[Fraction, ...]
    valuation: int

    @property
    def leading(self) -> Fraction:
        return self.coeffs[0]


def valuation_at(p: RatPoly, point) -> int:
    """Order of vanishing of p at a rational point."""
    if p.is_zero():
        raise ValueError("the zero polynomial has infinite valuation")
    return p.taylor_shift(point).valuation()


def series_at_point(expr, point, order: int = 1) -> SeriesAtPoint:
    """Laurent expansion of a RatPoly or RatFunc at a rational point."""
    point = _as_fraction(point)
    f = expr if isinstance(expr, RatFunc) else RatFunc(expr)
    if f.num.is_zero():
        raise ValueError("zero expression has no Laurent expansion")
    a = f.num.taylor_shift(point)
    b = f.den.taylor_shift(point)
    va, vb = a.valuation(), b.valuation()
    ac = list(a.coeffs[va:]) + [Fraction(0)] * order
    bc = list(b.coeffs[vb:]) + [Fraction(0)] * order
    out = []
    for k in range(order):
        s = ac[k] - sum(out[i] * bc[k - i] for i in range(k))
        out.append(s / bc[0])
    return SeriesAtPoint(point, tuple(out), va - vb)


def laurent_limit(expr, point, scale_exponent: int = 0) -> Fraction:
    """Limit of (z-point)^scale_exponent * expr as z -> point.

    The expansion of ``expr`` must start exactly at power ``-scale_exponent``;
    any other order raises ValuationMismatch.
    """
    s = series_at_point(expr, point, 1)
    if s.valuation != -scale_exponent:
        raise ValuationMismatch(
            f"valuation {s.valuation} at {point}, expected {-scale_exponent}", s.valuation
        )
    return s.leading


# ---------------------------------------------------------------------------
# Truncated power series over an arbitrary field
# ---------------------------------------------------------------------------


class Series:
    """Power series in a formal epsilon, truncated after ``prec`` terms.

    Coefficients may be any field-like objects (Fraction, complex, or other
    series types); only ring operations plus division of the constant term
    are used.
    """

    __slots__ = ("c", "prec")

    def __init__(self, coeffs, prec: int):
        cs = list(coeffs)[:prec]
        zero = 0 * cs[0] if cs else 0
        cs += [zero] * (prec - len(cs))
        self.c = cs
        self.prec = prec

    @classmethod
    def const(cls, v, prec: int) -> "Series":
        return cls([v], prec)

    def _lift(self, o) -> "Series":
        if isinstance(o, Series):
            return o
        return Series([o], self.prec)

    def __add__(self, o):
        o = self._lift(o)
        return Series([a + b for a, b in zip(self.c, o.c)], self.prec)

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.c], self.prec)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, Series):
            return Series([a * o for a in self.c], self.prec)
        n = self.prec
        out = []
        for k in range(n):
            acc = self.c[0] * o.c[k]
            for i in range(1, k + 1):
                acc = acc + self.c[i] * o.c[k - i]
            out.append(acc)
        return Series(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        c0 = self.c[0]
        inv0 = 1 / c0
        out = [inv0]
        for k in range(1, self.prec):
            acc = self.c[1] * out[k - 1]
            for i in range(2, k + 1):
                acc = acc + self.c[i] * out[k - i]
            out.append(-acc * inv0)
        return Series(out, self.prec)

    def __truediv__(self, o):
        if not isinstance(o, Series):
            return Series([a / o for a in self.c], self.prec)
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def valuation(self) -> int | None:
        for k, a in enumerate(self.c):
            if a != 0:
                return k
        return None

    def shift_down(self, k: int) -> "Series":
        """Divide by epsilon^k; the first k coefficients must vanish."""
        return Series(self.c[k:], self.prec - k)


# ---------------------------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineSolution:
    """Solution set particular + span(kernel)."""

    particular: tuple[Fraction, ...]
    kernel: tuple[tuple[Fraction, ...], ...]

    @property
    def unique(self) -> bool:
        return not self.kernel


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    m = len(rows)
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        pr = rows[r]
        pv = pr[c]
        for i in range(r + 1, m):
            ri = rows[i]
            f = ri[c]
            if f == 0:
                if pv != prev:
                    for j in range(c + 1, len(ri)):
                        if ri[j]:
                            ri[j] = ri[j] * pv // prev
                continue
            for j in range(c + 1, len(ri)):
                ri[j] = (pv * ri[j] - f * pr[j]) // prev
            ri[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return rows, pivots


def solve_exact_linear(A: Sequence[Sequence], b: Sequence) -> AffineSolution:
    """Solve A x = b exactly with fraction-free (Bareiss) elimination.

    Returns the affine solution space; raises Inconsistent if empty.  Every
    returned vector is checked by substitution.
    """
    m = len(A)
    ncols = len(A[0]) if m else 0
    rows: list[list[int]] = []
    for i in range(m):
        fr = [_as_fraction(v) for v in A[i]] + [_as_fraction(b[i])]
        den = 1
        for f in fr:
            den = _lcm(den, f.denominator)
        rows.append([f.numerator * (den // f.denominator) for f in fr])
    rows, pivots = _bareiss_echelon(rows, ncols)
    rank = len(pivots)
    for i in range(rank, m):
        if rows[i][ncols] != 0:
            raise Inconsistent(f"linear system inconsistent (rank {rank})")
    free = [c for c in range(ncols) if c not in set(pivots)]

    def back_substitute(rhs_col: list[int], free_vals: dict[int, Fraction]) -> list[Fraction]:
        x = [Fraction(0)] * ncols
        for c, v in free_vals.items():
            x[c] = v
        for i in range(rank - 1, -1, -1):
            c = pivots[i]
            row = rows[i]
            s = Fraction(rhs_col[i])
            for j in range(c + 1, ncols):
                if row[j] and x[j]:
                    s -= row[j] * x[j]
            x[c] = s / row[c]
        return x

    rhs = [rows[i][ncols] for i in range(rank)]
    particular = back_substitute(rhs, {})
    kernel = []
    for f in free:
        kernel.append(tuple(back_substitute([0] * rank, {f: Fraction(1)})))
    sol = AffineSolution(tuple(particular), tuple(kernel))
    _check_solution(A, b, sol)
    return sol


def _check_solution(A, b, sol: AffineSolution) -> None:
    for i, row in enumerate(A):
        lhs = sum((_as_fraction(a) * x for a, x in zip(row, sol.particular) if a), Fraction(0))
        if lhs != _as_fraction(b[i]):
            raise ArithmeticError("back-substitution check failed")
        for k in sol.kernel:
            if sum((_as_fraction(a) * x for a, x in zip(row, k) if a), Fraction(0)) != 0:
                raise ArithmeticError("kernel vector check failed")


# ---------------------------------------------------------------------------
# GCD, squarefree part, Sturm sequences
# ---------------------------------------------------------------------------


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials, with a positive multiplier."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    mult = abs(lead)
    sgn = 1 if lead > 0 else -1
    while len(a) - 1 >= db and a:
        top = a[-1]
        shift = len(a) - 1 - db
        a = [c * mult for c in a]
        f = top * sgn
        for i in range(db + 1):
            a[shift + i] -= f * b[i]
        a.pop()
        _strip(a)
    return a


def _primitive(a: list[int]) -> list[int]:
    g = _content(a)
    return [c // g for c in a] if g > 1 else list(a)


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over Q (primitive remainder sequence on integer parts)."""
    x = list(a.primitive())
    y = list(b.primitive())
    if not x:
        x, y = y, x
    while y:
        r = _primitive(_prem(x, y))
        x, y = y, r
    if not x:
        return RatPoly()
    g = RatPoly.from_ints(x)
    return g / g.lead()


def squarefree_part(p: RatPoly) -> RatPoly:
    g = poly_gcd(p, p.derivative())
    return exact_divide(p, g)


def _sign_at(nums: Sequence[int], v: Fraction) -> int:
    a, b = v.numerator, v.denominator
    acc, bp = 0, 1
    for c in reversed(nums):
        acc = acc * a + c * bp
        bp *= b
    return (acc > 0) - (acc < 0)


def _sign_at_inf(nums: Sequence[int], positive: bool) -> int:
    lead = nums[-1]
    s = (lead > 0) - (lead < 0)
    if not positive and (len(nums) - 1) % 2 == 1:
        s = -s
    return s


def _variations(signs: Iterable[int]) -> int:
    prev = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


class SturmChain:
    """Sturm sequence of a squarefree polynomial with exact sign counting."""

    def __init__(self, p: RatPoly):
        s0 = list(p.primitive())
        s1 = _primitive(list(RatPoly.from_ints(s0).derivative().primitive()))
        chain = [s0]
        if s1:
            chain.append(s1)
            while True:
                r = _prem(chain[-2], chain[-1])
                if not r:
                    break
                chain.append(_primitive([-c for c in r]))
        self.chain = chain

    def variations_at(self, v) -> int:
        if v == math.inf or v == -math.inf:
            pos = v > 0
            return _variations(_sign_at_inf(s, pos) for s in self.chain)
        v = _as_fraction(v)
        return _variations(_sign_at(s, v) for s in self.chain)

    def count(self, lo=-math.inf, hi=math.inf) -> int:
        """Number of distinct roots in the half-open interval (lo, hi]."""
        return self.variations_at(lo) - self.variations_at(hi)


@dataclass(frozen=True)
class RealRootReport:
    count: int
    intervals: tuple[tuple[Fraction, Fraction], ...]
    multiplicities: tuple[int, ...] = ()


def _cauchy_bound(p: RatPoly) -> Fraction:
    cs = p.coeffs
    lead = abs(cs[-1])
    return 1 + max((abs(c) / lead for c in cs[:-1]), default=Fraction(0))


def sturm_real_roots(p: RatPoly, interval=None, width=None) -> RealRootReport:
    """Count and isolate the distinct real roots of p.

    Roots are isolated in intervals (a, b] with rational endpoints.  The input
    is reduced to its squarefree part first; the multiplicity of each isolated
    root is reported alongside.  ``width`` optionally refines every interval
    below that width.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    if p.degree() == 0:
        return RealRootReport(0, ())
    sf = squarefree_part(p)
    chain = SturmChain(sf)
    B = _cauchy_bound(sf)
    lo, hi = (-B, B) if interval is None else (_as_fraction(interval[0]), _as_fraction(interval[1]))
    # make sure no root sits exactly on an endpoint that we treat as open
    total = chain.count(lo, hi)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi, total)]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        ka = chain.count(a, mid)
        stack.append((mid, b, k - ka))
        stack.append((a, mid, ka))
    out.sort()
    if width is not None:
        w = _as_fraction(width)
        out = [refine_root(sf, a, b, w) for a, b in out]
    mults = tuple(_multiplicity(p, sf, a, b) for a, b in out)
    return RealRootReport(total, tuple(out), mults)


def _multiplicity(p: RatPoly, sf: RatPoly, a: Fraction, b: Fraction) -> int:
    if p.degree() == sf.degree():
        return 1
    m = 1
    q = p
    while True:
        q = q.derivative()
        if q.is_zero():
            return m
        g = poly_gcd(q, sf)
        if g.degree() == 0 or SturmChain(g).count(a, b) == 0:
            return m
        m += 1


def refine_root(sf: RatPoly, a: Fraction, b: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval (a, b] of a squarefree polynomial."""
    nums = sf.primitive()
    if _sign_at(nums, b) == 0:
        return (b, b)
    sb = _sign_at(nums, b)
    while b - a > width:
        mid = (a + b) / 2
        sm = _sign_at(nums, mid)
        if sm == 0:
            return (mid, mid)
        if sm == sb:
            b = mid
        else:
            a = mid
    return (a, b)


# ---------------------------------------------------------------------------
# Interpolation and counting formulas
# ---------------------------------------------------------------------------


def interpolate(points: Sequence, values: Sequence) -> RatPoly:
    """Exact Newton interpolation through (points[i], values[i])."""
    xs = [_as_fraction(x) for x in points]
    coef = [_as_fraction(v) for v in values]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    acc = RatPoly()
    for i in range(n - 1, -1, -1):
        acc = acc * RatPoly([-xs[i], 1]) + coef[i]
    return acc


def asm_count(n: int) -> int:
    """Number of n x n alternating sign matrices."""
    if n < 0:
        raise ValueError("n must be non-negative")
    num, den = 1, 1
    for k in range(n):
        num *= math.factorial(3 * k + 1)
        den *= math.factorial(n + k)
    return num // den


def cspp_count(n: int) -> int:
    """Number of cyclically symmetric plane partitions in an n-cube."""
    num, den = asm_count(n), 1
    for k in range(1, n + 1):
        num *= 3 * k - 1
        den *= 3 * k - 2
    q, r = divmod(num, den)
    assert r == 0
    return q
