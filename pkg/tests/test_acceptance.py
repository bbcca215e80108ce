"""Acceptance gate: one test per contract criterion, one verdict line each.

Run with -s (or read the -v listing) to see the PASS/FAIL lines.  Budgets
and tolerances are asserted exactly as stated; nothing here is tuned to the
current build beyond the frozen constants whose provenance is noted inline.
"""

import math
import random
import time
from fractions import Fraction

from expandercheck.cli import main
from expandercheck.exact import (
    corner_lemma_check,
    growth_ratio,
    region_for,
    stirling_envelope,
    stirling_gap,
    union_bound_exhaustive,
)
from expandercheck.graphs import containment_probability_oracle, violation_rate
from expandercheck.interval import Interval, from_fraction
from expandercheck.profiles import SUPPORTED_DEGREES, builtin_profile
from expandercheck.verifier import (
    CHECK_END,
    boundary_segments,
    certify_convexity_region,
    verify_profile_bound,
)

F = Fraction

# informational only: subinterval counts from the reference run this toolkit
# re-executes; our enclosures are tighter so fewer pieces are expected
REFERENCE_PIECES = {5: 332, 6: 391, 7: 857, 8: 261}

# fixed before the build by a brute-force sweep of this exact grid over
# v in 100..3200 and all four degrees (worst observed |gap|*v/ln(v) was
# 1.26, so the 2.0 envelope in stirling_envelope has honest headroom);
# entries are (alpha, beta) numerators over 20
STIRLING_GRID = [
    (1, 2), (1, 4), (2, 4), (2, 6), (3, 6), (3, 9), (4, 8), (4, 12),
    (5, 10), (5, 15), (6, 12), (6, 14), (7, 14), (8, 14), (8, 16),
    (9, 16), (10, 14), (10, 16), (12, 16), (14, 18),
]


def _verdict(name, ok, detail=""):
    tail = f"  ({detail})" if detail else ""
    print(f"\n{name}: {'PASS' if ok else 'FAIL'}{tail}")
    assert ok, f"{name}{tail}"


def test_boundary_rate_bound_all_degrees(tmp_path, capsys):
    t0 = time.perf_counter()
    details = []
    ok = True
    for d in SUPPORTED_DEGREES:
        segs = boundary_segments(d)
        ok &= segs[0].lo == F(1, 100000)
        ok &= segs[-1].hi == CHECK_END[d]
        ok &= all(a.hi == b.lo for a, b in zip(segs, segs[1:]))
        transcript = verify_profile_bound(d)
        ok &= transcript.verified
        ok &= F(transcript.max_sup) <= F(9999, 10000)
        code = main(["verify", "--d", str(d), "--log", str(tmp_path / f"{d}.log")])
        ok &= code == 0
        ok &= (tmp_path / f"{d}.log").read_text() != ""
        details.append(
            f"d={d}: {transcript.pieces} pieces"
            f" [reference run: {REFERENCE_PIECES[d]}],"
            f" max sup {transcript.max_sup:.6f}"
        )
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60.0
    capsys.readouterr()
    _verdict(
        "boundary rate bound, degrees 5-8 at [0.9999]",
        ok,
        "; ".join(details) + f"; total {elapsed:.2f}s < 60s",
    )


def _rand_fraction(rng, span=6):
    num = rng.randint(-(10**span), 10**span)
    den = rng.randint(1, 10**span)
    return Fraction(num, den)


def _rand_interval(rng):
    a, b = sorted((_rand_fraction(rng), _rand_fraction(rng)))
    return Interval(from_fraction(a).lo, from_fraction(b).hi), (a, b)


def _corner_points(rng, a, b):
    t = Fraction(rng.randint(0, 1000), 1000)
    return [a, b, a + (b - a) * t]


def test_interval_soundness_sweep():
    rng = random.Random(20260813)
    checks = 0
    violations = 0

    for _ in range(6000):  # 72000 checks over +,-,*
        x, (xa, xb) = _rand_interval(rng)
        y, (ya, yb) = _rand_interval(rng)
        s, d, p = x + y, x - y, x * y
        for px in _corner_points(rng, xa, xb)[:2]:
            for py in _corner_points(rng, ya, yb):
                checks += 3
                violations += not s.contains(px + py)
                violations += not d.contains(px - py)
                violations += not p.contains(px * py)

    done = 0
    while done < 3000:  # 12000 checks over /
        x, (xa, xb) = _rand_interval(rng)
        y, (ya, yb) = _rand_interval(rng)
        if ya <= 0 <= yb:
            continue
        q = x / y
        for px in _corner_points(rng, xa, xb)[:2]:
            for py in _corner_points(rng, ya, yb)[:2]:
                checks += 1
                violations += not q.contains(px / py)
        done += 1

    for _ in range(8000):  # 16000 endpoint checks over pow
        base = Fraction(rng.randint(1, 4000), rng.randint(1, 4000))
        num = rng.randint(-8, 8)
        den = rng.randint(1, 6)
        r = from_fraction(base).pow(from_fraction(Fraction(num, den)))
        lo, hi = Fraction(r.lo), Fraction(r.hi)
        checks += 2
        if lo > 0:  # lo <= base**(num/den) iff lo**den <= base**num
            violations += not lo**den <= base**num
        violations += not base**num <= hi**den

    _verdict(
        "interval soundness sweep",
        checks >= 100000 and violations == 0,
        f"{checks} containment checks, {violations} violations",
    )


def test_convexity_certification():
    details = []
    ok = True
    for d in SUPPORTED_DEGREES:
        t0 = time.perf_counter()
        report = certify_convexity_region(d, margin=F(1, 10**6))
        elapsed = time.perf_counter() - t0
        ok &= report.verified and elapsed < 60.0
        details.append(f"d={d}: {report.boxes} boxes in {elapsed:.1f}s")
    _verdict(
        "curvature inequality on the shrunk triangle, margin 1e-6",
        ok,
        "; ".join(details),
    )


def test_profile_structure_exact():
    slopes = {5: F(2), 6: F(5, 2), 7: F(3), 8: F(3)}
    ok = True
    for d in SUPPORTED_DEGREES:
        profile = builtin_profile(d)
        ok &= profile.structure_ok()
        ok &= profile.value(F(0)) == 0 and profile.value(F(1)) == 1
        ok &= profile.max_slope == slopes[d]
        ok &= profile.max_slope < d - 1
    _verdict(
        "profile structure, exact rational checks",
        ok,
        "max slopes " + ", ".join(f"d={d}: {slopes[d]}" for d in SUPPORTED_DEGREES),
    )


def test_corner_lemma_exact():
    ok = True
    rows_checked = 0
    ratios_checked = 0
    for d in SUPPORTED_DEGREES:
        for v in (10**5, 3 * 10**5):
            report = corner_lemma_check(d, v)
            ok &= report.passed
            rows_checked += len(report.rows)
            # growth in n on the whole checked lattice, not just the spine
            region = region_for(v, d)
            for u in range(1, math.floor(report.delta * v) + 1):
                for n in range(u, region.row_top(u)):
                    ratios_checked += 1
                    ok &= growth_ratio(u, n, v, d) > 1
    _verdict(
        "corner lemma at v=1e5 and 3e5, all four degrees",
        ok,
        f"{rows_checked} weighted rows, {ratios_checked} lattice ratios > 1",
    )


def test_containment_oracle_agreement():
    import itertools

    s1 = containment_probability_oracle(6, 5, 1, 2, trials=10**6, seed=2026)
    s2 = containment_probability_oracle(8, 5, 2, 4, trials=10**6, seed=2027)
    ok = abs(s1.z_score) < 4 and abs(s2.z_score) < 4
    ok &= s1.exact == F(252, 142506)

    # v=2, d=2: every one of the 4! matchings, no sampling
    doubled = sum(
        1
        for perm in itertools.permutations(range(4))
        if perm[0] < 2 and perm[1] < 2
    )
    exact_tiny = containment_probability_oracle(2, 2, 1, 1, trials=1, seed=0).exact
    ok &= F(doubled, 24) == exact_tiny == F(1, 6)
    _verdict(
        "containment probability oracle vs exact",
        ok,
        f"z-scores {s1.z_score:.2f}, {s2.z_score:.2f} over 1e6 trials; "
        f"4!-enumeration gives {F(doubled, 24)}",
    )


def test_stirling_envelope_grid():
    ok = True
    worst = 0.0
    for d in SUPPORTED_DEGREES:
        for a, b in STIRLING_GRID:
            gaps = []
            for v in (100, 200, 400):
                gap = abs(stirling_gap(a * v // 20, b * v // 20, v, d))
                ok &= gap <= stirling_envelope(v)
                worst = max(worst, gap * v / math.log(v))
                gaps.append(gap)
            ok &= gaps[0] > gaps[1] > gaps[2]
    _verdict(
        "normalization gap under 2 ln(v)/v, shrinking at every grid point",
        ok,
        f"80 grid points x 3 sizes, worst gap*v/ln(v) = {worst:.3f}",
    )


def test_large_v_trend():
    values = [union_bound_exhaustive(region_for(v, 8)) for v in (100, 200, 400)]
    ok = values[0] > values[1] > values[2]

    profile = builtin_profile(8)
    stats = [
        violation_rate(10, 8, profile, trials=3000, seed=2028),
        violation_rate(14, 8, profile, trials=1500, seed=2028),
        violation_rate(18, 8, profile, trials=800, seed=2028),
    ]
    for early, late in ((0, 1), (1, 2), (0, 2)):
        ok &= stats[late].ci_low <= stats[early].ci_high
    _verdict(
        "failure bound and sampled violation rates shrink with v",
        ok,
        "exhaustive d=8: "
        + " > ".join(f"{float(x):.3g}" for x in values)
        + "; rates "
        + ", ".join(f"v={v}: {s.rate:.4f}" for v, s in zip((10, 14, 18), stats)),
    )
