"""Command-line front end.

Exit codes: 0 when the requested check passes, 1 when a check runs but
fails, 2 on unusable flags or precondition violations.  All numeric flags
are parsed exactly (interval literals or decimal rationals), never through
binary floats.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import exact, graphs, verifier
from .interval import parse_decimal
from .profiles import SUPPORTED_DEGREES, builtin_profile


def _fraction_flag(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r} ({exc})")


def _interval_flag(text: str):
    try:
        return parse_decimal(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_degree(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, required=True, choices=SUPPORTED_DEGREES,
                   help="graph degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expandercheck",
        description="certified expansion-bound checks, exact lemma checks, "
        "and sampled-graph oracles for d-regular bipartite multigraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="certify the boundary rate bound for one degree")
    _add_degree(p)
    p.add_argument("--bound", type=_interval_flag, default=None,
                   help=f"interval literal, default {verifier.DEFAULT_BOUND_TEXT}")
    p.add_argument("--depth", type=int, default=verifier.DEFAULT_DEPTH,
                   help="bisection depth budget per segment")
    p.add_argument("--delta", type=_fraction_flag, default=verifier.DEFAULT_DELTA,
                   help="corner cutoff, exact rational")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--log", default=None,
                   help="transcript path (default verify_d<D>.log)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("convexity", help="certify the curvature inequality")
    _add_degree(p)
    p.add_argument("--margin", type=_fraction_flag, default=Fraction(1, 10**6),
                   help="triangle shrink margin, exact rational")
    p.add_argument("--depth", type=int, default=verifier.DEFAULT_DEPTH)
    p.set_defaults(func=_cmd_convexity)

    p = sub.add_parser("fd-props", help="check profile structure exactly")
    _add_degree(p)
    p.set_defaults(func=_cmd_fd_props)

    p = sub.add_parser("exact", help="exact corner lemma (large v) or "
                       "exhaustive failure bound (v <= 400)")
    _add_degree(p)
    p.add_argument("--v", type=int, required=True, help="nodes per side")
    p.add_argument("--delta", type=_fraction_flag, default=exact.DELTA)
    p.add_argument("--out", default=None, help="CSV path for the lattice sweep")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("sample", help="sample one multigraph and print it")
    _add_degree(p)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write edge list here instead of stdout")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("expansion", help="sampled-graph violation rate (v <= 22)")
    _add_degree(p)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None,
                   help="CSV report for the graph sampled with --seed")
    p.add_argument("--no-fig", action="store_true",
                   help="skip the PNG next to --out")
    p.set_defaults(func=_cmd_expansion)

    p = sub.add_parser("level-curve", help="certified brackets of the rate = 1 curve")
    _add_degree(p)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--no-fig", action="store_true",
                   help="skip the PNG next to --out")
    p.set_defaults(func=_cmd_level_curve)

    return parser


def _cmd_verify(args) -> int:
    bound = args.bound if args.bound is not None else parse_decimal(verifier.DEFAULT_BOUND_TEXT)
    transcript = verifier.verify_profile_bound(
        args.d, bound, depth=args.depth, delta=args.delta, jobs=args.jobs
    )
    log = args.log or f"verify_d{args.d}.log"
    transcript.write(log)
    for seg in transcript.segments:
        span = f"[{seg.segment.lo},{seg.segment.hi}]"
        if seg.verified:
            print(f"segment {span}: {len(seg.records)} pieces, max sup {seg.max_sup!r}")
        else:
            print(f"segment {span}: FAILED on "
                  f"[{seg.failure.lo!r},{seg.failure.hi!r}]")
    print(f"transcript: {log}")
    if transcript.verified:
        print(f"degree {args.d}: rate stays below {bound!r} on the whole boundary "
              f"({transcript.pieces} pieces)")
        return 0
    print(f"degree {args.d}: NOT verified at bound {bound!r}")
    return 1


def _cmd_convexity(args) -> int:
    report = verifier.certify_convexity_region(args.d, margin=args.margin,
                                               depth=args.depth)
    print(f"degree {args.d}, margin {args.margin}: {report.boxes} certified boxes, "
          f"{report.skipped} skipped, deepest split {report.deepest}")
    if report.verified:
        print(f"curvature numerator >= {report.min_lower!r} on the shrunk triangle")
        return 0
    x, y = report.failure
    print(f"NOT certified: stuck at x=[{x.lo!r},{x.hi!r}] y=[{y.lo!r},{y.hi!r}]")
    return 1


def _cmd_fd_props(args) -> int:
    profile = builtin_profile(args.d)
    ok = True
    for check in profile.structure_report():
        ok &= check.ok
        print(f"{check.name}: {'pass' if check.ok else 'FAIL'} ({check.detail})")
    print(f"max slope {profile.max_slope} vs cap {args.d - 1}")
    return 0 if ok else 1


def _cmd_exact(args) -> int:
    if args.v >= 10**5:
        report = exact.corner_lemma_check(args.d, args.v, delta=args.delta)
        floor = exact.corner_ratio_floor(report.k, args.d, delta=args.delta)
        print(f"corner lemma (k={report.k}, d={args.d}) at v={args.v}:")
        for row in report.rows:
            line = f"  u={row.u}: weighted {float(row.weighted)!r} " \
                   f"{'< 1/2' if row.bound_ok else 'BREAKS 1/2'}"
            if row.ratio is not None:
                line += f", step ratio {float(row.ratio)!r} " \
                        f"{'> 1' if row.ratio_ok else 'NOT > 1'}"
            print(line)
        print(f"closed-form ratio floor: {float(floor)!r}")
        return 0 if report.passed else 1
    if args.v <= 400:
        region = exact.region_for(args.v, args.d, delta=args.delta)
        value = exact.union_bound_exhaustive(region)
        pairs = sum(1 for _ in region.pairs())
        print(f"exhaustive failure bound at v={args.v}, d={args.d}: "
              f"{float(value)!r} over {pairs} lattice pairs")
        if args.out:
            with open(args.out, "w") as fh:
                fh.write("u,n,value\n")
                for u, n, p in exact.region_terms(region):
                    fh.write(f"{u},{n},{float(p)!r}\n")
            print(f"lattice sweep: {args.out}")
        return 0
    print("error: --v must be >= 100000 (corner lemma) or <= 400 (exhaustive)",
          file=sys.stderr)
    return 2


def _cmd_sample(args) -> int:
    g = graphs.sample(args.v, args.d, args.seed)
    text = g.to_text()
    if args.out:
        Path(args.out).write_text(text)
        print(f"graph: {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_expansion(args) -> int:
    profile = builtin_profile(args.d)
    stats = graphs.violation_rate(args.v, args.d, profile, args.trials,
                                  args.seed, jobs=args.jobs)
    print(f"degree {args.d}, v={args.v}: {stats.failures}/{stats.trials} "
          f"sampled graphs fall below the profile")
    print(f"rate {stats.rate!r}, 95% CI [{stats.ci_low!r}, {stats.ci_high!r}]")
    if args.out:
        report = graphs.expansion_report(graphs.sample(args.v, args.d, args.seed))
        with open(args.out, "w") as fh:
            for line in graphs.report_rows_csv(report, profile):
                fh.write(line + "\n")
        print(f"report: {args.out}")
        if not args.no_fig:
            from .figures import render_expansion

            fig_path = Path(args.out).with_suffix(".png")
            render_expansion(report, profile, fig_path)
            print(f"figure: {fig_path}")
    return 0


def _cmd_level_curve(args) -> int:
    points = verifier.level_curve(args.d, args.samples)
    rows = verifier.level_curve_rows(points)
    if args.out:
        with open(args.out, "w") as fh:
            for line in rows:
                fh.write(line + "\n")
        print(f"curve: {args.out}")
        if not args.no_fig:
            from .figures import render_level_curve

            fig_path = Path(args.out).with_suffix(".png")
            render_level_curve(points, builtin_profile(args.d), fig_path)
            print(f"figure: {fig_path}")
    else:
        for line in rows:
            print(line)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
