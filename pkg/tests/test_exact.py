import math
from fractions import Fraction as F

import pytest

from expandercheck.exact import (
    CORNER_SLOPE,
    Region,
    binomial,
    corner_lemma_check,
    corner_ratio_floor,
    expected_bad_pairs,
    growth_ratio,
    region_for,
    region_terms,
    stirling_envelope,
    stirling_gap,
    union_bound,
    union_bound_exhaustive,
)


def factorial_binomial(n, k):
    # independent oracle: full factorials, no shortcuts
    if k > n:
        return 0
    return math.factorial(n) // (math.factorial(k) * math.factorial(n - k))


def test_binomial_basics():
    assert binomial(5, 2) == 10
    assert binomial(20, 5) == 15504
    assert binomial(7, 0) == 1
    assert binomial(3, 9) == 0
    with pytest.raises(ValueError):
        binomial(-1, 0)
    with pytest.raises(ValueError):
        binomial(4, -2)


def test_binomial_matches_factorials():
    for n in range(0, 40):
        for k in range(0, n + 2):
            assert binomial(n, k) == factorial_binomial(n, k)


def test_expected_bad_pairs_known_values():
    assert expected_bad_pairs(1, 1, 4, 5) == F(1, 969)
    # empty left subset: the edge-placement factor collapses to 1
    assert expected_bad_pairs(0, 3, 7, 5) == binomial(7, 3)
    assert expected_bad_pairs(0, 0, 9, 4) == 1
    # full sets on both sides
    assert expected_bad_pairs(6, 6, 6, 3) == 1


def test_expected_bad_pairs_matches_factorial_oracle():
    import random

    rng = random.Random(7)
    for _ in range(200):
        v = rng.randint(1, 40)
        d = rng.randint(1, 8)
        u = rng.randint(0, v)
        n = rng.randint(u, v)
        expect = F(
            factorial_binomial(v, u)
            * factorial_binomial(v, n)
            * factorial_binomial(d * n, d * u),
            factorial_binomial(d * v, d * u),
        )
        assert expected_bad_pairs(u, n, v, d) == expect


def test_expected_bad_pairs_rejects_bad_input():
    with pytest.raises(ValueError):
        expected_bad_pairs(3, 2, 10, 5)
    with pytest.raises(ValueError):
        expected_bad_pairs(1, 11, 10, 5)
    with pytest.raises(ValueError):
        expected_bad_pairs(1, 2, 10, 0)


def test_expected_bad_pairs_bounded_by_subset_counts():
    import random

    rng = random.Random(11)
    for _ in range(100):
        v = rng.randint(2, 30)
        d = rng.randint(1, 8)
        u = rng.randint(0, v)
        n = rng.randint(u, v)
        p = expected_bad_pairs(u, n, v, d)
        assert 0 <= p <= binomial(v, u) * binomial(v, n)


def test_growth_ratio_equals_direct_quotient():
    assert growth_ratio(2, 50, 100, 6) == expected_bad_pairs(
        2, 51, 100, 6
    ) / expected_bad_pairs(2, 50, 100, 6)
    import random

    rng = random.Random(3)
    for _ in range(60):
        v = rng.randint(4, 50)
        d = rng.randint(1, 8)
        u = rng.randint(1, v - 2)
        n = rng.randint(u, v - 1)
        assert growth_ratio(u, n, v, d) == expected_bad_pairs(
            u, n + 1, v, d
        ) / expected_bad_pairs(u, n, v, d)


def test_growth_ratio_exceeds_one_near_corner():
    assert growth_ratio(1, 1, 100, 5) > 1
    # first-row lattice at v = 10^5: top of the row is v*f(1/v) = 3 for d=8
    for n in (1, 2):
        assert growth_ratio(1, n, 10**5, 8) > 1


def test_growth_ratio_rejects_bad_input():
    with pytest.raises(ValueError):
        growth_ratio(0, 1, 10, 5)
    with pytest.raises(ValueError):
        growth_ratio(2, 1, 10, 5)
    with pytest.raises(ValueError):
        growth_ratio(1, 10, 10, 5)


# -- corner lemma --


def test_corner_lemma_single_row():
    report = corner_lemma_check(5, 10**5)
    assert report.k == 2
    assert len(report.rows) == 1
    row = report.rows[0]
    assert row.u == 1 and row.ratio is None
    assert row.weighted == 4 * F(1, 10**10) * 10**10 * expected_bad_pairs(
        1, 2, 10**5, 5
    )
    assert report.passed


def test_corner_lemma_beats_coarse_estimate():
    # d=6 base case: exact weight sits below the crude 10^-10 * 3^7 * (v/(v-1))^6
    v = 10**5
    report = corner_lemma_check(6, v)
    coarse = F(1, 10**10) * 3**7 * F(v, v - 1) ** 6
    assert report.rows[0].weighted < coarse < F(1, 2)


def test_corner_lemma_two_rows():
    report = corner_lemma_check(8, 2 * 10**5)
    assert [row.u for row in report.rows] == [1, 2]
    assert report.rows[0].ratio is not None and report.rows[0].ratio > 1
    assert report.rows[1].ratio is None
    assert report.passed


@pytest.mark.parametrize("d", [5, 6, 7, 8])
def test_corner_lemma_ratio_beats_closed_form_floor(d):
    report = corner_lemma_check(d, 3 * 10**5)
    floor = corner_ratio_floor(report.k, d)
    assert floor > 1
    ratios = [row.ratio for row in report.rows if row.ratio is not None]
    assert len(ratios) == 2
    assert all(r > floor for r in ratios)


def test_corner_lemma_rejects_small_v():
    with pytest.raises(ValueError):
        corner_lemma_check(5, 10**4)


def test_corner_slope_dominates_first_leg():
    from expandercheck.profiles import builtin_profile

    # k is an integer cover for the corner slope, so n <= k*u holds there
    for d, k in CORNER_SLOPE.items():
        assert builtin_profile(d).segments[0].slope <= k


# -- union bound --


def test_region_lattice_small():
    region = region_for(10, 5)
    pairs = list(region.pairs())
    assert len(pairs) == 20
    assert pairs[0] == (1, 1)
    assert region.row_top(1) == 2
    assert region.row_top(9) == 9
    assert (0, 0) not in pairs and (10, 10) not in pairs


@pytest.mark.parametrize("d", [5, 6, 7, 8])
def test_region_lattice_closed_under_reflection(d):
    v = 25
    pairs = set(region_for(v, d).pairs())
    assert pairs == {(v - n, v - u) for u, n in pairs}


def test_extreme_zone_predicate():
    region = Region(v=60, d=5, profile=region_for(60, 5).profile, delta=F(1, 10))
    assert region.in_extreme_zone(6, 12)
    assert region.in_extreme_zone(30, 55)
    assert not region.in_extreme_zone(7, 30)


def test_union_bound_exhaustive_matches_bruteforce():
    region = region_for(10, 5)
    brute = 2 * sum(expected_bad_pairs(u, n, 10, 5) for u, n in region.pairs())
    val = union_bound_exhaustive(region)
    assert val == brute
    assert 0 < val < 1


def test_union_bound_exhaustive_empty_and_budget():
    assert union_bound_exhaustive(Region(v=0, d=5, profile=region_for(10, 5).profile)) == 0
    with pytest.raises(ValueError):
        union_bound_exhaustive(region_for(1001, 5))


def test_union_bound_exhaustive_shrinks_with_v():
    small = union_bound_exhaustive(region_for(50, 8))
    large = union_bound_exhaustive(region_for(100, 8))
    assert large < small < 1


def test_union_bound_dominates_exhaustive():
    region = Region(v=60, d=8, profile=region_for(60, 8).profile, delta=F(1, 10))
    extreme = [F(0)]
    interior = [F(0)]
    for u, n, p in region_terms(region):
        zone = extreme if region.in_extreme_zone(u, n) else interior
        zone[0] = max(zone[0], p)
    assert extreme[0] > 0 and interior[0] > 0
    parametric = union_bound(region, extreme[0], interior[0])
    assert parametric >= union_bound_exhaustive(region)


def test_region_terms_rows():
    rows = list(region_terms(region_for(10, 5)))
    assert rows[0] == (1, 1, expected_bad_pairs(1, 1, 10, 5))
    assert len(rows) == 20


# -- Stirling bridge --


def test_stirling_gap_shrinks_with_v():
    g100 = stirling_gap(25, 50, 100, 6)
    g200 = stirling_gap(50, 100, 200, 6)
    assert abs(g200) < abs(g100)


def test_stirling_gap_within_envelope():
    gap = stirling_gap(100, 200, 400, 5)
    assert abs(gap) <= stirling_envelope(400)
    assert stirling_envelope(100) == pytest.approx(2.0 * math.log(100) / 100)


def test_stirling_gap_diagonal_defined():
    gap = stirling_gap(30, 30, 100, 7)
    assert math.isfinite(gap)
    assert abs(gap) <= stirling_envelope(100)


def test_stirling_gap_rejects_bad_input():
    with pytest.raises(ValueError):
        stirling_gap(0, 5, 10, 5)
    with pytest.raises(ValueError):
        stirling_gap(2, 10, 10, 5)
