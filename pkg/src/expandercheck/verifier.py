"""Certified bounds on the pair-count rate function along profile boundaries.

The rate function at (alpha, beta) is

    (1-alpha)^((d-1)(1-alpha)) * beta^((d-1)beta)
    -----------------------------------------------------------
    alpha^alpha * (1-beta)^(1-beta) * (beta-alpha)^(d(beta-alpha))

with the convention 0^0 = 1.  Keeping it below a bound along the whole
boundary beta = f(alpha) of the violation region is what makes the union
bound over bad pairs vanish for large graphs; this module certifies such
bounds with interval arithmetic and adaptive bisection, and also certifies
the concavity-domain inequality that the diagonal argument needs.

Everything is evaluated in log space: the rate is exp of a sum of x*ln(x)
terms, each enclosed by `xlogx`, so bases touching zero cost nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .interval import Interval, clt, from_fraction, hull, parse_decimal, split
from .profiles import ExpansionProfile, builtin_profile

F = Fraction

DEFAULT_BOUND_TEXT = "[0.9999]"
DEFAULT_DEPTH = 60
DEFAULT_DELTA = F(1, 100000)

# Last checked alpha per degree: the first legs of the builtin profile are
# certified from DEFAULT_DELTA up to here.  For degree 8 the third leg's line
# is certified through 17/50, past the profile's own breakpoint at 1/3; the
# line lies on or above the profile there, so the checked curve is the harder
# one.
CHECK_END = {5: F(1, 2), 6: F(1, 2), 7: F(39, 100), 8: F(17, 50)}

_MIN_OF_XLOGX = Interval(-1.0, -1.0).exp()  # encloses 1/e, negated below


class BudgetExhausted(RuntimeError):
    """Raised when the split budget runs out before certification."""

    def __init__(self, piece: Interval, enclosure: Interval):
        super().__init__(
            f"cannot certify {piece!r}: enclosure {enclosure!r} at zero depth"
        )
        self.piece = piece
        self.enclosure = enclosure


def xlogx(x: Interval) -> Interval:
    """Enclosure of {t * ln(t) : t in x} for x within [0, inf).

    The map extends continuously with value 0 at t = 0; its only interior
    extremum is the minimum -1/e at t = 1/e.
    """
    if x.lo < 0.0:
        raise ValueError(f"xlogx needs a sub-interval of [0, inf), got {x!r}")

    def at(t: float) -> Interval:
        if t == 0.0:
            return Interval(0.0)
        p = Interval(t)
        return p * p.ln()

    out = hull(at(x.lo), at(x.hi))
    # conservative trigger around 1/e = 0.36787...; widening the low side to
    # the global minimum is sound wherever the trigger fires
    if x.lo < 0.3679 and x.hi > 0.3678:
        out = hull(out, -_MIN_OF_XLOGX)
    return out


def rate_enclosure(
    degree: int,
    alpha: Interval,
    beta: Interval,
    gap: Interval | None = None,
) -> Interval:
    """Interval value of the rate function on an (alpha, beta) box.

    When beta is a known function of alpha the plain difference beta - alpha
    throws away their correlation; callers owning the dependency may pass a
    tighter `gap` enclosure of {beta(a) - a} themselves.
    """
    if not (0.0 < alpha.lo and alpha.hi < 1.0):
        raise ValueError(f"alpha {alpha!r} must sit strictly inside (0, 1)")
    if not (0.0 < beta.lo and beta.hi < 1.0):
        raise ValueError(f"beta {beta!r} must sit strictly inside (0, 1)")
    if gap is None:
        gap = beta - alpha
    if gap.hi < 0.0:
        raise ValueError(f"beta {beta!r} entirely below alpha {alpha!r}")
    if gap.lo < 0.0:
        # boundary maps can dip a rounding error below the diagonal
        gap = Interval(0.0, gap.hi)
    d = degree
    log_rate = (
        (d - 1) * xlogx(1 - alpha)
        + (d - 1) * xlogx(beta)
        - xlogx(alpha)
        - xlogx(1 - beta)
        - d * xlogx(gap)
    )
    return log_rate.exp()


# -- boundary certification --------------------------------------------------


@dataclass(frozen=True)
class BoundarySegment:
    """Affine piece of the checked boundary curve, with exact coefficients."""

    lo: Fraction
    hi: Fraction
    slope: Fraction
    offset: Fraction

    def preimage(self) -> Interval:
        return Interval(from_fraction(self.lo).lo, from_fraction(self.hi).hi)

    def map(self) -> Callable[[Interval], tuple[Interval, Interval]]:
        """x -> (beta, gap) with gap = beta - x taken before widening."""
        k = from_fraction(self.slope)
        m = from_fraction(self.offset)
        k1 = from_fraction(self.slope - 1)
        return lambda x: (k * x + m, k1 * x + m)


@dataclass
class SegmentTranscript:
    segment: BoundarySegment
    records: list[tuple[Interval, float]] = field(default_factory=list)
    verified: bool = True
    failure: Interval | None = None

    @property
    def max_sup(self) -> float:
        return max((s for _, s in self.records), default=-math.inf)


@dataclass
class Transcript:
    degree: int
    bound: Interval
    segments: list[SegmentTranscript]

    @property
    def verified(self) -> bool:
        return all(s.verified for s in self.segments)

    @property
    def pieces(self) -> int:
        return sum(len(s.records) for s in self.segments)

    @property
    def max_sup(self) -> float:
        return max((s.max_sup for s in self.segments), default=-math.inf)

    def lines(self) -> Iterable[str]:
        """One log line per certified piece: '[lo,hi]: sup'."""
        for seg in self.segments:
            for piece, sup in seg.records:
                yield f"[{piece.lo!r},{piece.hi!r}]: {sup!r}"
            if not seg.verified:
                yield f"FAILED on [{seg.failure.lo!r},{seg.failure.hi!r}]"

    def write(self, path) -> None:
        with open(path, "w") as fh:
            for line in self.lines():
                fh.write(line + "\n")


def certify_segment(
    degree: int,
    segment: BoundarySegment,
    bound: Interval,
    depth: int = DEFAULT_DEPTH,
) -> SegmentTranscript:
    """Certify rate < bound on one boundary piece by adaptive bisection.

    Pieces are refined left to right; each certified piece is logged with the
    certified supremum.  On budget exhaustion the failing piece is recorded
    and the transcript is marked unverified.
    """
    out = SegmentTranscript(segment=segment)
    curve = segment.map()

    def visit(piece: Interval, budget: int) -> None:
        beta, gap = curve(piece)
        enclosure = rate_enclosure(degree, piece, beta, gap)
        if clt(enclosure, bound):
            out.records.append((piece, enclosure.hi))
            return
        if budget == 0 or piece.mid in (piece.lo, piece.hi):
            raise BudgetExhausted(piece, enclosure)
        left, right = split(piece)
        visit(left, budget - 1)
        visit(right, budget - 1)

    try:
        visit(segment.preimage(), depth)
    except BudgetExhausted as stop:
        out.verified = False
        out.failure = stop.piece
    return out


def boundary_segments(degree: int, delta: Fraction = DEFAULT_DELTA) -> list[BoundarySegment]:
    """Checked pieces of the profile boundary for one degree.

    Legs of the builtin profile clipped to [delta, CHECK_END[degree]]; for
    degree 8 the third leg's line continues to 17/50 (see CHECK_END).
    """
    profile = builtin_profile(degree)
    end = CHECK_END[degree]
    out = []
    for seg in profile.segments:
        lo = max(seg.lo, delta)
        hi = min(seg.hi, end)
        if degree == 8:
            if seg.lo == F(1, 5):
                hi = end  # this line is checked past the profile breakpoint
            elif seg.lo >= F(1, 3):
                continue
        if lo < hi:
            out.append(BoundarySegment(lo, hi, seg.slope, seg.offset))
    return out


def verify_profile_bound(
    degree: int,
    bound: Interval | None = None,
    depth: int = DEFAULT_DEPTH,
    delta: Fraction = DEFAULT_DELTA,
    jobs: int = 1,
) -> Transcript:
    """Certify rate < bound along the checked boundary of one degree.

    Segments are independent, so with jobs > 1 they are dispatched to worker
    processes; each segment's own bisection is sequential, which keeps the
    transcript identical whatever the worker count.
    """
    if bound is None:
        bound = parse_decimal(DEFAULT_BOUND_TEXT)
    segments = boundary_segments(degree, delta)
    if jobs > 1 and len(segments) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=min(jobs, len(segments))) as pool:
            parts = list(
                pool.map(
                    _certify_segment_task,
                    [(degree, seg, bound.lo, bound.hi, depth) for seg in segments],
                )
            )
    else:
        parts = [certify_segment(degree, seg, bound, depth) for seg in segments]
    return Transcript(degree=degree, bound=bound, segments=parts)


def _certify_segment_task(args) -> SegmentTranscript:
    degree, segment, blo, bhi, depth = args
    return certify_segment(degree, segment, Interval(blo, bhi), depth)


# -- convexity region ---------------------------------------------------------


@dataclass
class ConvexityReport:
    degree: int
    margin: Fraction
    boxes: int = 0
    skipped: int = 0
    deepest: int = 0
    min_lower: float = math.inf
    verified: bool = True
    failure: tuple[Interval, Interval] | None = None


def _curvature_numerator(degree: int, x: Interval, y: Interval) -> Interval:
    # (d-2)(1 - x^2 - y^2) - d y (1 + x^2 - y^2); the sign of the second
    # x-derivative of the log-rate restriction, whose denominator is positive
    # on the open unit diamond
    s = x.square()
    t = y.square()
    return (degree - 2) * (1 - s - t) - degree * (y * (1 + s - t))


def certify_convexity_region(
    degree: int,
    margin: Fraction = F(1, 10**6),
    depth: int = DEFAULT_DEPTH,
) -> ConvexityReport:
    """Certify the curvature inequality on the margin-shrunk triangle.

    The triangle is 0 <= y <= 1 - 2/d - margin, |x| <= (d(1-y) - 2)/(d-2)
    - margin.  It is covered with adaptively split boxes; boxes proven
    disjoint from the triangle (exact rational tests) are skipped, all others
    must certify a non-negative curvature numerator.
    """
    d = degree
    if d < 3:
        raise ValueError("degree must be at least 3")
    margin = F(margin)
    y_top = 1 - F(2, d) - margin
    if y_top <= 0:
        raise ValueError(f"margin {margin} swallows the whole triangle")

    def half_width(y: Fraction) -> Fraction:
        return (d * (1 - y) - 2) / F(d - 2) - margin

    report = ConvexityReport(degree=d, margin=margin)

    def visit(x: Interval, y: Interval, budget: int, used: int) -> None:
        report.deepest = max(report.deepest, used)
        # exact disjointness tests against the shrunk triangle
        y_lo = max(F(y.lo), F(0))
        if y_lo > y_top:
            report.skipped += 1
            return
        if x.lo > 0.0 or x.hi < 0.0:
            least_abs = min(abs(F(x.lo)), abs(F(x.hi)))
            if least_abs > half_width(y_lo):
                report.skipped += 1
                return
        g = _curvature_numerator(d, x, y)
        if g.lo >= 0.0:
            report.boxes += 1
            report.min_lower = min(report.min_lower, g.lo)
            return
        if budget == 0:
            report.verified = False
            report.failure = (x, y)
            raise BudgetExhausted(x, g)
        if x.width >= y.width:
            xl, xr = split(x)
            visit(xl, y, budget - 1, used + 1)
            visit(xr, y, budget - 1, used + 1)
        else:
            yl, yr = split(y)
            visit(x, yl, budget - 1, used + 1)
            visit(x, yr, budget - 1, used + 1)

    span = from_fraction(half_width(F(0)))
    x0 = Interval(-span.hi, span.hi)
    y0 = Interval(0.0, from_fraction(y_top).hi)
    try:
        visit(x0, y0, depth, 0)
    except BudgetExhausted:
        pass
    return report


# -- level curve --------------------------------------------------------------


@dataclass(frozen=True)
class LevelPoint:
    alpha: Interval
    beta: Interval  # certified bracket around the crossing


def level_curve(
    degree: int,
    samples: int,
    beta_gap: float = 1e-9,
    tol: float = 1e-9,
    max_steps: int = 200,
) -> list[LevelPoint]:
    """Bracket the crossing rate = 1 above each sampled alpha.

    Alphas are the interior grid i/(samples+1).  For each, the crossing of
    the rate function along increasing beta is bracketed by certified
    bisection: the lower end certainly sits below 1, the upper end certainly
    above.  Raises if no certified sign change exists in (alpha, 1 -
    beta_gap).
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    one = Interval(1.0)
    out = []
    for i in range(1, samples + 1):
        alpha = from_fraction(F(i, samples + 1))
        lo = alpha.hi
        hi = math.nextafter(1.0, 0.0) - beta_gap
        if not clt(rate_enclosure(degree, alpha, Interval(lo)), one):
            raise ValueError(f"rate not certifiably below 1 at the diagonal, alpha={alpha!r}")
        if not clt(one, rate_enclosure(degree, alpha, Interval(hi))):
            raise ValueError(f"no certified sign change in (alpha, 1-{beta_gap}) at alpha={alpha!r}")
        for _ in range(max_steps):
            if hi - lo <= tol:
                break
            m = 0.5 * (lo + hi)
            q = rate_enclosure(degree, alpha, Interval(m))
            if clt(q, one):
                lo = m
            elif clt(one, q):
                hi = m
            else:
                break  # enclosure straddles 1; the bracket stays certified
        out.append(LevelPoint(alpha=alpha, beta=Interval(lo, hi)))
    return out


def level_curve_rows(points: list[LevelPoint]) -> Iterable[str]:
    yield "alpha_lo,alpha_hi,beta_lo,beta_hi"
    for p in points:
        yield f"{p.alpha.lo!r},{p.alpha.hi!r},{p.beta.lo!r},{p.beta.hi!r}"
