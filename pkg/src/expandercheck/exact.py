"""Exact rational bookkeeping for the union bound over bad subset pairs.

A bad pair is a left subset U of size u whose neighbourhood fits inside a
right subset N of size n at or below the profile.  The expected number of
such pairs in the random multigraph is

    P(u, n) = C(v,u) * C(v,n) * C(dn,du) / C(dv,du)

and everything here evaluates it, its growth ratios, and the two-term
failure-probability bound exactly with Fractions.  Binomials come from
math.comb, which computes short products, so v = 10^5 or 3*10^5 costs
nothing even though (dv)! would be astronomical.

The Stirling bridge compares (1/v) ln(v^2 P) against the log of the rate
function that the verifier module bounds; the gap must shrink like ln(v)/v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .profiles import ExpansionProfile, builtin_profile

F = Fraction

DELTA = F(1, 100000)

# Corner width multiplier per degree: the first profile leg has slope at
# most this integer, so near the corner every bad pair satisfies n <= k*u.
CORNER_SLOPE = {5: 2, 6: 3, 7: 3, 8: 3}

# Envelope constant for the Stirling bridge, |gap| <= this * ln(v)/v.
# Fixed once by a sweep of the test grid over v in 100..3200 and all four
# degrees; the worst observed ratio was 1.26.
STIRLING_ENVELOPE = 2.0


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 for k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs non-negative arguments, got {n}, {k}")
    if k > n:
        return 0
    return math.comb(n, k)


def expected_bad_pairs(u: int, n: int, v: int, d: int) -> Fraction:
    """Expected count of (U, N) pairs with |U| = u, |N| = n, N(U) inside N."""
    if not (0 <= u <= n <= v):
        raise ValueError(f"need 0 <= u <= n <= v, got u={u}, n={n}, v={v}")
    if d < 1 or v < 1:
        raise ValueError(f"need d >= 1 and v >= 1, got d={d}, v={v}")
    return F(
        binomial(v, u) * binomial(v, n) * binomial(d * n, d * u),
        binomial(d * v, d * u),
    )


def growth_ratio(u: int, n: int, v: int, d: int) -> Fraction:
    """P(u, n+1) / P(u, n), as a product of d + 1 small factors."""
    if not (1 <= u <= n < v):
        raise ValueError(f"need 1 <= u <= n < v, got u={u}, n={n}, v={v}")
    ratio = F(v - n, n + 1)
    for i in range(1, d + 1):
        ratio *= F(d * n + i, d * n - d * u + i)
    return ratio


# -- corner lemma --------------------------------------------------------------


@dataclass(frozen=True)
class CornerRow:
    u: int
    weighted: Fraction  # 2k delta^2 v^2 P(u, ku)
    bound_ok: bool
    ratio: Fraction | None  # P(u, ku) / P(u+1, ku+k), None on the last row
    ratio_ok: bool


@dataclass
class CornerReport:
    k: int
    d: int
    v: int
    delta: Fraction
    rows: list[CornerRow]

    @property
    def passed(self) -> bool:
        return all(r.bound_ok and r.ratio_ok for r in self.rows)


def corner_lemma_check(d: int, v: int, delta: Fraction = DELTA) -> CornerReport:
    """Exact check that corner pairs weigh below 1/2 in the union bound.

    For every u up to floor(delta v): 2k delta^2 v^2 P(u, ku) < 1/2, and the
    per-step ratio P(u, ku) / P(u+1, ku+k) stays above 1, where k is the
    degree's corner slope multiplier.
    """
    k = CORNER_SLOPE[d]
    delta = F(delta)
    top = math.floor(delta * v)
    if top < 1:
        raise ValueError(f"v = {v} is too small: floor(delta v) must be >= 1")
    rows = []
    for u in range(1, top + 1):
        weighted = 2 * k * delta * delta * v * v * expected_bad_pairs(u, k * u, v, d)
        ratio = None
        ratio_ok = True
        if u < top:
            ratio = expected_bad_pairs(u, k * u, v, d) / expected_bad_pairs(
                u + 1, k * u + k, v, d
            )
            ratio_ok = ratio > 1
        rows.append(
            CornerRow(
                u=u,
                weighted=weighted,
                bound_ok=weighted < F(1, 2),
                ratio=ratio,
                ratio_ok=ratio_ok,
            )
        )
    return CornerReport(k=k, d=d, v=v, delta=delta, rows=rows)


def corner_ratio_floor(k: int, d: int, delta: Fraction = DELTA) -> Fraction:
    """Closed-form lower bound for the corner ratio, valid for u <= delta v."""
    delta = F(delta)
    return (
        delta ** -(d - k - 1)
        * (1 - (k * d + 3 * d) * delta)
        * F((k - 1) ** ((k - 1) * d), k ** (k * d))
    )


# -- union bound ----------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """Lattice of bad pairs for one graph size: u <= n <= v f(u/v)."""

    v: int
    d: int
    profile: ExpansionProfile
    delta: Fraction = DELTA

    def row_top(self, u: int) -> int:
        """Largest n in the row of u, capped at v - 1; -1 for an empty row."""
        top = min(math.floor(self.v * self.profile.value(F(u, self.v))), self.v - 1)
        return top if top >= u else -1

    def pairs(self):
        """Rows in increasing u; corner pairs (0,0) and (v,v) are excluded
        because those events cannot violate the expansion property."""
        for u in range(1, self.v):
            top = self.row_top(u)
            for n in range(u, top + 1):
                yield u, n

    def in_extreme_zone(self, u: int, n: int) -> bool:
        """True when the pair hugs either corner: min(u, v - n) <= delta v."""
        return min(u, self.v - n) <= self.delta * self.v


def region_for(v: int, d: int, delta: Fraction = DELTA) -> Region:
    return Region(v=v, d=d, profile=builtin_profile(d), delta=delta)


def union_bound(
    region: Region, extreme_max: Fraction, interior_max: Fraction
) -> Fraction:
    """Two-term failure bound from externally certified maxima.

    Pairs hugging the corners number at most 2 delta v * v f(delta); the
    rest are at most v^2.  Both maxima must be certified upper bounds on P
    over their zones.
    """
    v = F(region.v)
    extreme_count = 2 * region.delta * v * v * region.profile.value(region.delta)
    return extreme_count * F(extreme_max) + v * v * F(interior_max)


def union_bound_exhaustive(region: Region) -> Fraction:
    """Exact total 2 sum P(u, n) over the region's lattice.

    Cost grows like v^2 big-integer operations; meant for v up to a few
    hundred.
    """
    v, d = region.v, region.d
    if v == 0:
        return F(0)
    if v > 1000:
        raise ValueError("exhaustive sum is quadratic in v; use v <= 1000")
    choose_n = [binomial(v, n) for n in range(v + 1)]
    total = F(0)
    for u in range(1, v):
        top = region.row_top(u)
        if top < u:
            continue
        du = d * u
        numerator = sum(choose_n[n] * binomial(d * n, du) for n in range(u, top + 1))
        total += F(binomial(v, u) * numerator, binomial(d * v, du))
    return 2 * total


def region_terms(region: Region):
    """Per-pair weights for CSV export: (u, n, P(u, n))."""
    for u, n in region.pairs():
        yield u, n, expected_bad_pairs(u, n, region.v, region.d)


# -- Stirling bridge -------------------------------------------------------------


def stirling_gap(u: int, n: int, v: int, d: int) -> float:
    """(1/v) ln(v^2 P(u,n)) - ln rate(u/v, n/v), at 50 significant digits."""
    from mpmath import mp, mpf

    if not (1 <= u <= n <= v - 1):
        raise ValueError(f"need 1 <= u <= n <= v-1, got u={u}, n={n}, v={v}")
    p = expected_bad_pairs(u, n, v, d)
    with mp.workdps(50):
        ln_p = mp.log(mpf(p.numerator)) - mp.log(mpf(p.denominator))
        ln_v2 = 2 * mp.log(mpf(v))

        def xlnx(q: Fraction):
            if q == 0:
                return mpf(0)
            t = mpf(q.numerator) / q.denominator
            return t * mp.log(t)

        a, b = F(u, v), F(n, v)
        ln_rate = (
            (d - 1) * xlnx(1 - a)
            + (d - 1) * xlnx(b)
            - xlnx(a)
            - xlnx(1 - b)
            - d * xlnx(b - a)
        )
        return float((ln_v2 + ln_p) / v - ln_rate)


def stirling_envelope(v: int) -> float:
    """Admissible gap magnitude at graph size v."""
    return STIRLING_ENVELOPE * math.log(v) / v
