"""Certified expansion bounds for random d-regular bipartite multigraphs.

Four layers: outward-rounded interval arithmetic, exact rational profile and
lemma checks, an interval bisection verifier for the boundary rate bound,
and a seeded graph sampler with brute-force expansion oracles.
"""

from .exact import (
    binomial,
    corner_lemma_check,
    corner_ratio_floor,
    expected_bad_pairs,
    growth_ratio,
    region_for,
    stirling_envelope,
    stirling_gap,
    union_bound,
    union_bound_exhaustive,
)
from .graphs import (
    BipartiteMultigraph,
    containment_probability_oracle,
    expansion_report,
    graph_from_text,
    neighbour_set_size,
    sample,
    violation_rate,
)
from .interval import Interval, clt, from_fraction, hull, parse_decimal, split
from .profiles import (
    SUPPORTED_DEGREES,
    AffineSegment,
    ExpansionProfile,
    builtin_profile,
)
from .verifier import (
    certify_convexity_region,
    level_curve,
    rate_enclosure,
    verify_profile_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSegment",
    "BipartiteMultigraph",
    "ExpansionProfile",
    "Interval",
    "SUPPORTED_DEGREES",
    "binomial",
    "builtin_profile",
    "certify_convexity_region",
    "clt",
    "containment_probability_oracle",
    "corner_lemma_check",
    "corner_ratio_floor",
    "expansion_report",
    "expected_bad_pairs",
    "from_fraction",
    "graph_from_text",
    "growth_ratio",
    "hull",
    "level_curve",
    "neighbour_set_size",
    "parse_decimal",
    "rate_enclosure",
    "region_for",
    "sample",
    "split",
    "stirling_envelope",
    "stirling_gap",
    "union_bound",
    "union_bound_exhaustive",
    "verify_profile_bound",
    "violation_rate",
    "__version__",
]
