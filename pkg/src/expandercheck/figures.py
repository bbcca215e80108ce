"""Figure rendering for the report-emitting CLI paths.

Uses matplotlib's object API only (no pyplot, no global backend state), so
importing this module never hijacks an interactive session.  Every renderer
takes already-computed data and writes one PNG.
"""

from __future__ import annotations

from matplotlib.figure import Figure

from .profiles import ExpansionProfile


def _profile_polyline(profile: ExpansionProfile):
    xs, ys = [], []
    for seg in profile.segments:
        xs.append(float(seg.lo))
        ys.append(float(seg.value(seg.lo)))
    last = profile.segments[-1]
    xs.append(float(last.hi))
    ys.append(float(last.value(last.hi)))
    return xs, ys


def render_level_curve(points, profile: ExpansionProfile, path) -> None:
    """Certified rate-crossing brackets with the profile overlaid."""
    fig = Figure(figsize=(6.0, 6.0))
    ax = fig.subplots()
    alphas = [p.alpha.mid for p in points]
    lows = [p.beta.lo for p in points]
    highs = [p.beta.hi for p in points]
    ax.fill_between(alphas, lows, highs, color="tab:blue", alpha=0.4)
    ax.plot(alphas, [0.5 * (a + b) for a, b in zip(lows, highs)],
            color="tab:blue", lw=1.0, label="rate = 1 crossing")
    xs, ys = _profile_polyline(profile)
    ax.plot(xs, ys, color="tab:red", lw=1.2, label=f"profile, degree {profile.degree}")
    ax.plot([0, 1], [0, 1], color="grey", lw=0.6, ls="--")
    ax.set_xlabel("left subset fraction")
    ax.set_ylabel("right subset fraction")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.legend(loc="lower right")
    fig.savefig(path, dpi=150)


def render_expansion(report, profile: ExpansionProfile, path) -> None:
    """Per-size neighbour minima of one sampled graph against the thresholds."""
    fig = Figure(figsize=(6.0, 4.5))
    ax = fig.subplots()
    rows = list(report.rows(profile))
    us = [r[0] for r in rows]
    ax.plot(us, [r[1] for r in rows], "o-", ms=3, label="min over left subsets")
    ax.plot(us, [r[2] for r in rows], "s-", ms=3, label="min over right subsets")
    ax.step(us, [r[3] for r in rows], where="mid", color="tab:red",
            label="required")
    ax.set_xlabel("subset size")
    ax.set_ylabel("distinct neighbours")
    ax.set_title(f"v = {report.v}, d = {report.d}")
    ax.legend(loc="upper left")
    fig.savefig(path, dpi=150)
