"""Random d-regular bipartite multigraphs and brute-force expansion oracles.

A graph is sampled by matching d*v left points to d*v right points with one
uniformly random permutation and collapsing each group of d consecutive
points into a node.  Uniform permutation gives a uniform perfect matching,
so the collapsed multigraph has the distribution the union-bound analysis
assumes, with every multidegree exactly d by construction.

The expansion oracle enumerates all 2^v subsets of a side with incremental
neighbour bitsets, so it is only usable at desk scale (v <= 22); it exists
to cross-check the certified analysis on concrete graphs, not to scale.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exact import binomial
from .profiles import ExpansionProfile

F = Fraction

MAX_ENUM_V = 22

# Per-trial generators are seeded with seed * _SEED_STRIDE + trial index so
# runs are reproducible and trials stay independent under any scheduling.
_SEED_STRIDE = 1_000_003


@dataclass(frozen=True)
class BipartiteMultigraph:
    v: int
    d: int
    edges: tuple  # d*v (left, right) pairs, sorted, parallel edges repeated

    def __post_init__(self):
        if self.v < 1 or self.d < 1:
            raise ValueError(f"need v >= 1 and d >= 1, got v={self.v}, d={self.d}")
        if len(self.edges) != self.d * self.v:
            raise ValueError(
                f"edge multiset has {len(self.edges)} members, want {self.d * self.v}"
            )
        left = [0] * self.v
        right = [0] * self.v
        for l, r in self.edges:
            left[l] += 1
            right[r] += 1
        if set(left) != {self.d} or set(right) != {self.d}:
            raise ValueError("multidegrees are not all d")

    def masks(self, side: str):
        """Neighbour bitmask per node of the given side."""
        out = [0] * self.v
        if side == "left":
            for l, r in self.edges:
                out[l] |= 1 << r
        elif side == "right":
            for l, r in self.edges:
                out[r] |= 1 << l
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        return out

    def to_text(self) -> str:
        lines = [f"{self.v} {self.d}"]
        lines.extend(f"{l} {r}" for l, r in self.edges)
        return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> BipartiteMultigraph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty graph text")
    try:
        v, d = map(int, lines[0].split())
        edges = tuple(sorted(tuple(map(int, ln.split())) for ln in lines[1:]))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"malformed graph text: {exc}") from None
    for l, r in edges:
        if not (0 <= l < v and 0 <= r < v):
            raise ValueError(f"edge ({l}, {r}) outside [0, {v})")
    return BipartiteMultigraph(v=v, d=d, edges=edges)


def sample(v: int, d: int, seed: int) -> BipartiteMultigraph:
    """Collapse one seeded uniform matching of d*v points per side."""
    if v < 1 or d < 1:
        raise ValueError(f"need v >= 1 and d >= 1, got v={v}, d={d}")
    points = list(range(d * v))
    random.Random(seed).shuffle(points)
    edges = tuple(sorted((i // d, points[i] // d) for i in range(d * v)))
    return BipartiteMultigraph(v=v, d=d, edges=edges)


def neighbour_set_size(g: BipartiteMultigraph, side: str, nodes) -> int:
    """Distinct opposite-side nodes adjacent to any node of the subset."""
    masks = g.masks(side)
    acc = 0
    for node in nodes:
        if not (0 <= node < g.v):
            raise ValueError(f"node {node} outside [0, {g.v})")
        acc |= masks[node]
    return acc.bit_count()


@lru_cache(maxsize=8)
def _size_grouping(v: int):
    """Stable ordering of all 2^v subsets by popcount, with group offsets."""
    sizes = np.bitwise_count(np.arange(1 << v, dtype=np.uint32))
    order = np.argsort(sizes, kind="stable")
    offsets = np.searchsorted(sizes[order], np.arange(v + 1))
    return order, offsets


def _side_minima(masks, v: int):
    """Min |N(U)| per subset size via subset DP over neighbour bitsets."""
    union = np.zeros(1 << v, dtype=np.uint32)
    for i, m in enumerate(masks):
        union[1 << i : 2 << i] = union[: 1 << i] | np.uint32(m)
    counts = np.bitwise_count(union)
    order, offsets = _size_grouping(v)
    return [int(x) for x in np.minimum.reduceat(counts[order], offsets)]


@dataclass(frozen=True)
class ExpansionReport:
    v: int
    d: int
    min_left: tuple  # entry u: min |N(U)| over left subsets of size u
    min_right: tuple

    def required(self, profile: ExpansionProfile):
        """Integer thresholds ceil(v * f(u/v)), computed in exact rationals."""
        return [math.ceil(self.v * profile.value(F(u, self.v))) for u in range(self.v + 1)]

    def rows(self, profile: ExpansionProfile):
        req = self.required(profile)
        for u in range(self.v + 1):
            yield u, self.min_left[u], self.min_right[u], req[u]

    def violates(self, profile: ExpansionProfile) -> bool:
        return any(
            min(lo_l, lo_r) < need for _, lo_l, lo_r, need in self.rows(profile)
        )


def expansion_report(g: BipartiteMultigraph) -> ExpansionReport:
    """Exact per-size neighbour minima for both sides (exhaustive, v <= 22)."""
    if g.v > MAX_ENUM_V:
        raise ValueError(f"subset enumeration needs v <= {MAX_ENUM_V}, got {g.v}")
    return ExpansionReport(
        v=g.v,
        d=g.d,
        min_left=tuple(_side_minima(g.masks("left"), g.v)),
        min_right=tuple(_side_minima(g.masks("right"), g.v)),
    )


def report_rows_csv(report: ExpansionReport, profile: ExpansionProfile):
    yield "u,min_left,min_right,required"
    for u, lo_l, lo_r, need in report.rows(profile):
        yield f"{u},{lo_l},{lo_r},{need}"


# -- Monte Carlo ----------------------------------------------------------------


@dataclass(frozen=True)
class RateStats:
    trials: int
    failures: int
    rate: float
    ci_low: float
    ci_high: float


def _wilson(successes: int, trials: int, z: float = 1.96):
    if trials == 0:
        raise ValueError("no trials")
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = phat + z * z / (2 * trials)
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return max(0.0, (centre - half) / denom), min(1.0, (centre + half) / denom)


def _violation_chunk(args):
    v, d, profile_text, seeds = args
    profile = ExpansionProfile.from_text(profile_text)
    failures = 0
    for s in seeds:
        if expansion_report(sample(v, d, s)).violates(profile):
            failures += 1
    return failures


def violation_rate(
    v: int,
    d: int,
    profile: ExpansionProfile,
    trials: int,
    seed: int,
    jobs: int = 1,
) -> RateStats:
    """Fraction of sampled graphs breaking the profile on either side."""
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")
    seeds = [seed * _SEED_STRIDE + t for t in range(trials)]
    if jobs > 1:
        chunks = [
            (v, d, profile.to_text(), seeds[i::jobs]) for i in range(jobs)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            failures = sum(pool.map(_violation_chunk, chunks))
    else:
        failures = _violation_chunk((v, d, profile.to_text(), seeds))
    lo, hi = _wilson(failures, trials)
    return RateStats(
        trials=trials, failures=failures, rate=failures / trials, ci_low=lo, ci_high=hi
    )


@dataclass(frozen=True)
class ContainmentStats:
    v: int
    d: int
    u: int
    n: int
    trials: int
    hits: int
    estimate: float
    exact: Fraction
    z_score: float


def containment_probability_oracle(
    v: int, d: int, u: int, n: int, trials: int, seed: int
) -> ContainmentStats:
    """Empirical Pr[N(U) inside N] for the first u left and n right nodes.

    Each trial draws a fresh matching permutation; the event holds when all
    d*u points of U land among the d*n points of N.  Reports the exact
    hypergeometric value C(dn,du)/C(dv,du) and the z-score of the estimate.
    """
    if not (0 <= u <= v and 0 <= n <= v):
        raise ValueError(f"need 0 <= u, n <= v, got u={u}, n={n}, v={v}")
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")
    exact = F(binomial(d * n, d * u), binomial(d * v, d * u))
    rng = random.Random(seed)
    points = list(range(d * v))
    du, dn = d * u, d * n
    hits = 0
    for _ in range(trials):
        rng.shuffle(points)
        if all(points[i] < dn for i in range(du)):
            hits += 1
    estimate = hits / trials
    p = float(exact)
    if 0.0 < p < 1.0:
        z = (estimate - p) / math.sqrt(p * (1 - p) / trials)
    else:
        z = 0.0 if estimate == p else math.inf
    return ContainmentStats(
        v=v, d=d, u=u, n=n, trials=trials, hits=hits, estimate=estimate, exact=exact,
        z_score=z,
    )
