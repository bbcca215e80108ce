"""Piecewise-linear expansion profiles with exact rational legs.

A profile maps a normalized subset size x in [0, 1] to the normalized
neighbourhood size the graph is required to reach.  Legs are affine with
Fraction slopes and offsets, so evaluation, continuity and symmetry checks
are exact.  One builtin profile ships per degree in 5..8.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .interval import Interval, from_fraction, hull

F = Fraction


@dataclass(frozen=True)
class AffineSegment:
    """One leg: x in [lo, hi] maps to slope * x + offset."""

    lo: Fraction
    hi: Fraction
    slope: Fraction
    offset: Fraction

    def value(self, x: Fraction) -> Fraction:
        return self.slope * x + self.offset

    def reflected(self) -> "AffineSegment":
        """Image under (x, y) -> (1 - y, 1 - x); needs a positive slope."""
        k, m = self.slope, self.offset
        return AffineSegment(
            lo=1 - self.value(self.hi),
            hi=1 - self.value(self.lo),
            slope=1 / k,
            offset=(k - 1 + m) / k,
        )


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


class ExpansionProfile:
    """Ordered affine legs tiling [0, 1]."""

    def __init__(self, degree: int, segments: tuple[AffineSegment, ...]):
        self.degree = degree
        self.segments = tuple(segments)
        if not self.segments:
            raise ValueError("a profile needs at least one segment")

    def __repr__(self) -> str:
        return f"ExpansionProfile(degree={self.degree}, legs={len(self.segments)})"

    def segment_at(self, x: Fraction) -> AffineSegment:
        """Owning leg; a breakpoint resolves to the leg ending there."""
        x = Fraction(x)
        for seg in self.segments:
            if x <= seg.hi:
                if x < seg.lo:
                    break
                return seg
        raise ValueError(f"{x} outside the profile domain [0, 1]")

    def value(self, x: Fraction) -> Fraction:
        return self.segment_at(x).value(Fraction(x))

    def enclose(self, x: Interval) -> Interval:
        """Interval enclosure of the image of x (slopes are positive)."""
        xlo, xhi = Fraction(x.lo), Fraction(x.hi)
        if xlo < 0 or xhi > 1:
            raise ValueError(f"{x!r} outside the profile domain [0, 1]")
        parts = []
        for seg in self.segments:
            if seg.hi < xlo or seg.lo > xhi:
                continue
            piece = Interval(
                max(x.lo, from_fraction(seg.lo).lo),
                min(x.hi, from_fraction(seg.hi).hi),
            )
            k = from_fraction(seg.slope)
            m = from_fraction(seg.offset)
            parts.append(k * piece + m)
        return hull(*parts)

    @property
    def max_slope(self) -> Fraction:
        return max(seg.slope for seg in self.segments)

    # -- structural checks --------------------------------------------------

    def structure_report(self) -> list[CheckResult]:
        checks = []
        segs = self.segments

        tiled = segs[0].lo == 0 and segs[-1].hi == 1
        gaps = [
            i
            for i in range(len(segs) - 1)
            if segs[i].hi != segs[i + 1].lo or segs[i].lo >= segs[i].hi
        ]
        tiled = tiled and not gaps and all(s.lo < s.hi for s in segs)
        checks.append(
            CheckResult(
                "tiling",
                tiled,
                "legs cover [0, 1] without gaps or overlaps"
                if tiled
                else f"bad joints at {gaps}",
            )
        )

        jumps = [
            str(segs[i].hi)
            for i in range(len(segs) - 1)
            if segs[i].value(segs[i].hi) != segs[i + 1].value(segs[i + 1].lo)
        ]
        checks.append(
            CheckResult(
                "continuity",
                not jumps,
                "legs agree at every breakpoint" if not jumps else f"jumps at {jumps}",
            )
        )

        ends = self.value(F(0)) == 0 and self.value(F(1)) == 1
        checks.append(
            CheckResult(
                "endpoints",
                ends,
                f"f(0) = {self.value(F(0))}, f(1) = {self.value(F(1))}",
            )
        )

        canon = {(s.lo, s.hi, s.slope, s.offset) for s in segs}
        mirrored = {
            (r.lo, r.hi, r.slope, r.offset)
            for r in (s.reflected() for s in segs)
        }
        symmetric = canon == mirrored
        checks.append(
            CheckResult(
                "symmetry",
                symmetric,
                "graph invariant under (x, y) -> (1 - y, 1 - x)"
                if symmetric
                else "reflected legs differ",
            )
        )

        cap = F(self.degree - 1)
        steep = [str(s.slope) for s in segs if not (0 < s.slope < cap)]
        checks.append(
            CheckResult(
                "slopes",
                not steep,
                f"all slopes inside (0, {cap})" if not steep else f"out of range: {steep}",
            )
        )
        return checks

    def structure_ok(self) -> bool:
        return all(c.ok for c in self.structure_report())

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        """One leg per line: domain_lo domain_hi slope offset, exact rationals."""
        lines = [f"degree {self.degree}"]
        for s in self.segments:
            lines.append(f"{s.lo} {s.hi} {s.slope} {s.offset}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ExpansionProfile":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("degree "):
            raise ValueError("missing 'degree N' header")
        degree = int(lines[0].split()[1])
        segs = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 4:
                raise ValueError(f"expected four rationals, got {ln!r}")
            lo, hi, k, m = (F(p) for p in parts)
            segs.append(AffineSegment(lo, hi, k, m))
        return cls(degree, tuple(segs))


def _profile(degree: int, rows: list[tuple]) -> ExpansionProfile:
    return ExpansionProfile(
        degree,
        tuple(AffineSegment(F(a), F(b), F(k), F(m)) for a, b, k, m in rows),
    )


_BUILTIN = {
    5: _profile(
        5,
        [
            (0, F(3, 20), 2, 0),
            (F(3, 20), F(3, 10), F(4, 3), F(1, 10)),
            (F(3, 10), F(1, 2), 1, F(1, 5)),
            (F(1, 2), F(7, 10), F(3, 4), F(13, 40)),
            (F(7, 10), 1, F(1, 2), F(1, 2)),
        ],
    ),
    6: _profile(
        6,
        [
            (0, F(1, 10), F(5, 2), 0),
            (F(1, 10), F(1, 4), F(5, 3), F(1, 12)),
            (F(1, 4), F(1, 2), 1, F(1, 4)),
            (F(1, 2), F(3, 4), F(3, 5), F(9, 20)),
            (F(3, 4), 1, F(2, 5), F(3, 5)),
        ],
    ),
    7: _profile(
        7,
        [
            (0, F(1, 10), 3, 0),
            (F(1, 10), F(3, 20), 2, F(1, 10)),
            (F(3, 20), F(3, 10), F(21, 15), F(19, 100)),
            (F(3, 10), F(39, 100), 1, F(31, 100)),
            (F(39, 100), F(3, 5), F(15, 21), F(59, 140)),
            (F(3, 5), F(7, 10), F(1, 2), F(11, 20)),
            (F(7, 10), 1, F(1, 3), F(2, 3)),
        ],
    ),
    8: _profile(
        8,
        [
            (0, F(1, 10), 3, 0),
            (F(1, 10), F(1, 5), 2, F(1, 10)),
            (F(1, 5), F(1, 3), F(5, 4), F(1, 4)),
            (F(1, 3), F(1, 2), F(4, 5), F(2, 5)),
            (F(1, 2), F(7, 10), F(1, 2), F(11, 20)),
            (F(7, 10), 1, F(1, 3), F(2, 3)),
        ],
    ),
}


def builtin_profile(degree: int) -> ExpansionProfile:
    """The shipped profile for a degree in 5..8."""
    try:
        return _BUILTIN[degree]
    except KeyError:
        raise ValueError(f"no builtin profile for degree {degree}") from None


SUPPORTED_DEGREES = tuple(sorted(_BUILTIN))
