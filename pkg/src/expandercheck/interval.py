"""Outward-rounded interval arithmetic on IEEE-754 doubles.

Every operation returns an interval that contains the exact mathematical
image of its arguments.  Results are computed in the default round-to-nearest
mode and then widened outward by one ulp per endpoint, except where an
error-free transformation proves the endpoint exact (or tells us which side
the rounding went, in which case only the losing side is widened).  No
rounding-mode switching is used, so everything here is pure and safe under
concurrent callers.

exp and ln lean on the platform libm being faithfully rounded (error below
one ulp, true of glibc); one ulp of outward widening is applied on top.  The
test suite checks containment against 50-digit recomputation.

Operations that would produce an unbounded enclosure raise instead of
returning infinities.
"""

from __future__ import annotations

import math
from fractions import Fraction

_INF = math.inf
_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant
# Magnitude window inside which the error-free transforms below are valid
# (no overflow in the splitting, no underflow in the residual).
_EFT_MAX = 1e150
_EFT_MIN = 1e-280


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _sum_residual(a: float, b: float, s: float) -> float:
    # 2Sum: exact residual of round-to-nearest addition, barring overflow.
    bb = s - a
    return (a - (s - bb)) + (b - bb)


def _product_residual(a: float, b: float, p: float) -> float:
    # Dekker's product: exact residual of round-to-nearest multiplication.
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


class Interval:
    """Closed interval [lo, hi] with finite double endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise OverflowError(f"non-finite endpoint: [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"inverted endpoints: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    # -- inspection ---------------------------------------------------------

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        """Round-to-nearest midpoint, clamped into the interval."""
        m = 0.5 * (self.lo + self.hi)
        if not math.isfinite(m):
            m = 0.5 * self.lo + 0.5 * self.hi
        return min(max(m, self.lo), self.hi)

    def contains(self, x) -> bool:
        """Exact test lo <= x <= hi; accepts float, int or Fraction."""
        if isinstance(x, float):
            return self.lo <= x <= self.hi
        x = Fraction(x)
        return Fraction(self.lo) <= x <= Fraction(self.hi)

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> "Interval":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Interval(
            _add_down(self.lo, other.lo), _add_up(self.hi, other.hi)
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Interval(
            _add_down(self.lo, -other.hi), _add_up(self.hi, -other.lo)
        )

    def __rsub__(self, other) -> "Interval":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "Interval":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        pairs = (
            (self.lo, other.lo),
            (self.lo, other.hi),
            (self.hi, other.lo),
            (self.hi, other.hi),
        )
        lo = min(_mul_down(a, b) for a, b in pairs)
        hi = max(_mul_up(a, b) for a, b in pairs)
        return Interval(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.lo <= 0.0 <= other.hi:
            raise ZeroDivisionError(f"divisor {other!r} contains zero")
        pairs = (
            (self.lo, other.lo),
            (self.lo, other.hi),
            (self.hi, other.lo),
            (self.hi, other.hi),
        )
        lo = min(_div_down(a, b) for a, b in pairs)
        hi = max(_div_up(a, b) for a, b in pairs)
        return Interval(lo, hi)

    def __rtruediv__(self, other) -> "Interval":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def square(self) -> "Interval":
        """Enclosure of {x*x}, tighter than self*self when 0 is inside."""
        a, b = abs(self.lo), abs(self.hi)
        if a > b:
            a, b = b, a
        hi = _mul_up(b, b)
        if self.lo <= 0.0 <= self.hi:
            return Interval(0.0, hi)
        return Interval(_mul_down(a, a), hi)

    def exp(self) -> "Interval":
        try:
            # exp(0) = 1 exactly; otherwise trust libm to within one ulp
            lo_val = 1.0 if self.lo == 0.0 else max(0.0, _down(math.exp(self.lo)))
            hi_val = 1.0 if self.hi == 0.0 else _up(math.exp(self.hi))
        except OverflowError:
            raise OverflowError(f"exp({self!r}) exceeds the double range") from None
        if not math.isfinite(hi_val):
            raise OverflowError(f"exp({self!r}) exceeds the double range")
        return Interval(lo_val, hi_val)

    def ln(self) -> "Interval":
        if self.lo <= 0.0:
            raise ValueError(f"ln({self!r}) needs a strictly positive interval")
        lo_val = 0.0 if self.lo == 1.0 else _down(math.log(self.lo))
        hi_val = 0.0 if self.hi == 1.0 else _up(math.log(self.hi))
        return Interval(lo_val, hi_val)

    def pow(self, expo) -> "Interval":
        """Enclosure of {x**y : x in self, y in expo}.

        Conventions: 0**0 = 1 and 0**y = 0 for y > 0.  Negative bases are
        rejected, as is an interval touching zero raised to a strictly
        negative exponent.  A point integer exponent goes through binary
        exponentiation (exact powers stay exact); anything else goes through
        exp(y * ln(x)).  When the base touches zero and the exponent
        straddles zero, the negative-exponent slice has no finite enclosure,
        so the result covers the zero- and one-branches together with the
        non-negative-exponent slice.
        """
        expo = _coerce(expo)
        if expo is None:
            raise TypeError("exponent must be an Interval, number or Fraction")
        if self.lo < 0.0:
            raise ValueError(f"pow base {self!r} reaches below zero")
        n = _point_integer(expo)
        if n is not None:
            return self._int_pow(n)
        if self.lo > 0.0:
            return (expo * self.ln()).exp()
        # base touches zero
        if expo.hi < 0.0:
            raise ValueError(
                f"pow: base {self!r} touches zero with negative exponent {expo!r}"
            )
        branches = [Interval(0.0)]  # 0**y for y > 0
        if expo.lo <= 0.0:
            branches.append(Interval(1.0))  # x**0, and the 0**0 convention
        if self.hi > 0.0 and expo.hi > 0.0:
            top = Interval(self.hi)
            pos = Interval(max(expo.lo, 0.0), expo.hi)
            branches.append((pos * top.ln()).exp())
        return hull(*branches)

    def _int_pow(self, n: int) -> "Interval":
        if n == 0:
            return Interval(1.0)
        if n < 0:
            if self.lo <= 0.0:
                raise ValueError(
                    f"pow: base {self!r} touches zero with negative exponent {n}"
                )
            return Interval(1.0) / self._int_pow(-n)
        acc = None
        base = self
        while n:
            if n & 1:
                acc = base if acc is None else acc * base
            n >>= 1
            if n:
                base = base.square()
        return acc

    def __pow__(self, other) -> "Interval":
        return self.pow(other)


# -- directed endpoint helpers ---------------------------------------------


def _add_down(a: float, b: float) -> float:
    s = a + b
    if not math.isfinite(s):
        raise OverflowError(f"{a} + {b} overflows")
    if abs(a) > _EFT_MAX or abs(b) > _EFT_MAX:
        return _down(s)
    r = _sum_residual(a, b, s)
    return s if r >= 0.0 else _down(s)


def _add_up(a: float, b: float) -> float:
    s = a + b
    if not math.isfinite(s):
        raise OverflowError(f"{a} + {b} overflows")
    if abs(a) > _EFT_MAX or abs(b) > _EFT_MAX:
        return _up(s)
    r = _sum_residual(a, b, s)
    return s if r <= 0.0 else _up(s)


def _mul_down(a: float, b: float) -> float:
    p = a * b
    if not math.isfinite(p):
        raise OverflowError(f"{a} * {b} overflows")
    if abs(a) > _EFT_MAX or abs(b) > _EFT_MAX or (p != 0.0 and abs(p) < _EFT_MIN):
        return _down(p)
    r = _product_residual(a, b, p)
    return p if r >= 0.0 else _down(p)


def _mul_up(a: float, b: float) -> float:
    p = a * b
    if not math.isfinite(p):
        raise OverflowError(f"{a} * {b} overflows")
    if abs(a) > _EFT_MAX or abs(b) > _EFT_MAX or (p != 0.0 and abs(p) < _EFT_MIN):
        return _up(p)
    r = _product_residual(a, b, p)
    return p if r <= 0.0 else _up(p)


def _div_exact(a: float, b: float, q: float) -> bool:
    if abs(a) > _EFT_MAX or abs(b) > _EFT_MAX or abs(q) > _EFT_MAX:
        return False
    if q != 0.0 and abs(q) < _EFT_MIN:
        return False
    return Fraction(q) * Fraction(b) == Fraction(a)


def _div_down(a: float, b: float) -> float:
    q = a / b
    if not math.isfinite(q):
        raise OverflowError(f"{a} / {b} overflows")
    return q if _div_exact(a, b, q) else _down(q)


def _div_up(a: float, b: float) -> float:
    q = a / b
    if not math.isfinite(q):
        raise OverflowError(f"{a} / {b} overflows")
    return q if _div_exact(a, b, q) else _up(q)


def _coerce(x) -> Interval | None:
    if isinstance(x, Interval):
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return from_fraction(Fraction(x))
    if isinstance(x, float):
        return Interval(x, x)
    if isinstance(x, Fraction):
        return from_fraction(x)
    return None


def _point_integer(iv: Interval) -> int | None:
    if iv.lo == iv.hi and iv.lo == int(iv.lo) and abs(iv.lo) <= 2**53:
        return int(iv.lo)
    return None


# -- constructors and predicates -------------------------------------------


def from_fraction(q: Fraction) -> Interval:
    """Tightest interval with double endpoints containing the rational q."""
    q = Fraction(q)
    f = float(q)
    if not math.isfinite(f):
        raise OverflowError(f"{q} exceeds the double range")
    fq = Fraction(f)
    if fq == q:
        return Interval(f, f)
    if fq < q:
        return Interval(f, _up(f))
    return Interval(_down(f), f)


def parse_decimal(text: str) -> Interval:
    """Parse "[a]", "[a,b]" or a bare decimal literal into an interval.

    Endpoints are exact decimal strings (scientific notation allowed); each
    is converted to the tightest enclosing double pair, so a point literal
    parses to an interval of width at most one ulp.
    """
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValueError(f"unbalanced brackets in {text!r}")
        s = s[1:-1]
    parts = [p.strip() for p in s.split(",")]
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2 or not all(parts):
        raise ValueError(f"expected one or two endpoints in {text!r}")
    try:
        a = Fraction(parts[0])
        b = Fraction(parts[1])
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad endpoint in {text!r}: {exc}") from None
    if a > b:
        raise ValueError(f"endpoints out of order in {text!r}")
    return Interval(from_fraction(a).lo, from_fraction(b).hi)


def hull(*intervals: Interval) -> Interval:
    """Smallest interval containing every argument."""
    if not intervals:
        raise ValueError("hull of nothing")
    return Interval(
        min(iv.lo for iv in intervals), max(iv.hi for iv in intervals)
    )


def clt(a: Interval, b: Interval) -> bool:
    """Certainly-less-than: every x in a is below every y in b."""
    return a.hi < b.lo


def split(iv: Interval) -> tuple[Interval, Interval]:
    """Bisect at the clamped midpoint; the halves share that endpoint."""
    m = iv.mid
    return Interval(iv.lo, m), Interval(m, iv.hi)
