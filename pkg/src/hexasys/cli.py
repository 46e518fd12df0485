"""Command-line entry point ``hexasys``.

Exit codes: 0 success, 2 bad usage, 3 a checked constant did not come out as expected.
Reports on stdout and in output files are deterministic; timings go to stderr.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import area as area_mod
from .billiard import (DEFAULT_BUDGET, classify, diamond_crossings, length_certificate,
                       start_state, systole_scan, trace, unfold)
from .crofton import LineMeasure, ResolutionTooCoarse, smooth_measure
from .exact import SQRT3, PiValue, format_exact, parse_exact

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ASSERT = 3

SYSTOLE = Fraction(4)
CSV_HEADER = ["a", "b", "x", "chords", "r", "length", "tiles", "outcome"]


class UsageError(Exception):
    pass


def _decimal(value):
    return f"{float(value):.15g}"


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


def _rational(text):
    try:
        return parse_exact(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _nonnegative_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {v}")
    return v


def _nonnegative_float(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text}")
    return v


def _tiles(tiles):
    return ";".join(str(t) for t in tiles)


# -- systole ---------------------------------------------------------------------

def _scan_rows(result):
    rows = []
    for l in result.launches:
        r = l.record
        if r is None:
            rows.append([l.a, l.b, format_exact(l.x), "", "", "", "", l.outcome])
        else:
            rows.append([r.a, r.b, format_exact(r.x), r.chords, format_exact(r.r),
                         format_exact(r.length), _tiles(r.tiles), l.outcome])
    return rows


def _families(records):
    fam = {}
    for r in records:
        key = (r.a, r.b, r.r, r.chords)
        fam[key] = fam.get(key, 0) + 1
    return sorted(fam.items())


def _scan_report(args, result, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(_scan_rows(result))
        return buf.getvalue()
    doc = {
        "config": {"a_max": args.a_max, "b_max": args.b_max, "samples": args.samples,
                   "budget": args.budget},
        "minimum": None if result.minimum is None else format_exact(result.minimum),
        "counts": result.counts,
        "witnesses": [{"a": a, "b": b, "r": format_exact(r), "chords": c, "launches": n}
                      for (a, b, r, c), n in _families(result.witnesses)],
        "rows": [dict(zip(CSV_HEADER, row)) for row in _scan_rows(result)],
    }
    return json.dumps(doc, indent=2) + "\n"


def _run_scan(args):
    t0 = time.perf_counter()
    result = systole_scan(args.a_max, args.b_max, args.samples, args.budget, args.threads)
    print(f"scan wall time {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    return result


def cmd_systole(args):
    result = _run_scan(args)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(_scan_report(args, result, args.format))
    c = result.counts
    print(f"launches = {len(result.launches)} (closed {c['closed']}, vertex {c['vertex']}, "
          f"budget {c['budget']})")
    minimum = "none" if result.minimum is None else format_exact(result.minimum)
    print(f"minimum = {minimum}")
    for (a, b, r, chords), n in _families(result.witnesses):
        print(f"witness ({a},{b}) r={format_exact(r)} chords={chords} at {n} of {args.samples} x")
    if not args.no_assert and result.minimum != SYSTOLE:
        print(f"expected minimum {SYSTOLE}, got {minimum}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


# -- area ----------------------------------------------------------------------------

def cmd_area(args):
    exact = area_mod.ht_area("exact")
    target = float(exact)
    if args.method == "exact":
        print(f"hexagon area = {exact} ({_decimal(exact)})")
        sphere = area_mod.sphere_area()
        print(f"sphere area = {sphere} ({_decimal(sphere)})")
        return EXIT_OK if exact == PiValue(6, -1) else EXIT_ASSERT
    if args.method == "quadrature":
        value = area_mod.ht_area("quadrature", resolution=args.resolution,
                                 samples=args.mc_samples, seed=args.seed)
        tolerance = 1e-4 if args.tolerance is None else args.tolerance
    else:
        if args.sigma <= 0:
            raise UsageError("--sigma must be positive for the smoothed method")
        value = area_mod.ht_area("smoothed", epsilon=args.epsilon, sigma=args.sigma)
        tolerance = args.tolerance
    gap = value - target
    print(f"hexagon area = {_decimal(value)}")
    print(f"gap to {exact} = {gap:.6e} (relative {abs(gap) / target:.6e})")
    if tolerance is not None and abs(gap) > tolerance * target:
        print(f"relative gap exceeds tolerance {tolerance:g}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


# -- geodesic ------------------------------------------------------------------------

def _point(p):
    return [format_exact(p[0]), format_exact(p[1])]


def cmd_geodesic(args):
    try:
        start = start_state(args.x, args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc))
    traj = trace(start, args.budget)
    doc = {
        "a": args.a, "b": args.b, "x": format_exact(args.x), "budget": args.budget,
        "outcome": traj.outcome,
        "chords": [{"start": _point(c.start), "end": _point(c.end), "sheet": c.sheet.value,
                    "entry": str(c.entry_edge), "exit": str(c.exit_edge),
                    "axes": [format_exact(v) for v in c.contribution.axes],
                    "length": format_exact(c.contribution.total)} for c in traj.chords],
        "length": format_exact(traj.total_length),
    }
    if traj.chords:
        _, tiles = unfold(traj)
        doc["tiles"] = [str(t) for t in tiles]
    if traj.outcome == "vertex":
        doc["vertex"] = _point(traj.vertex.point)
    if traj.closed:
        rec = classify(traj)
        doc["closed"] = {"r": format_exact(rec.r), "chords": rec.chords,
                         "length": format_exact(rec.length), "direction": [rec.a, rec.b]}
        doc["certificate"] = [{"chord": row.chord, "tile": str(row.tile),
                               "axes": [format_exact(v) for v in row.axes],
                               "total": format_exact(row.total)}
                              for row in length_certificate(traj)]
        doc["diamonds"] = [{"chord": d.index, "tiles": [str(t) for t in d.tiles],
                            "axes": list(d.axes), "total": format_exact(d.total)}
                           for d in diamond_crossings(traj)]
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        if not traj.chords:
            raise UsageError("no chord to draw")
        from .svg import render_unfolding
        with open(args.svg, "w") as fh:
            fh.write(render_unfolding(traj))
    return EXIT_OK


# -- ratio ---------------------------------------------------------------------------

def ratio_lines(sys_value, sphere):
    ratio = area_mod.systolic_ratio(sys_value, sphere)
    bound = 2 * SQRT3
    relation = ">" if ratio.exceeds(bound) else "<="
    return ratio, [
        f"sys = {format_exact(sys_value)}, area = {sphere}, ratio = {ratio} ({_decimal(ratio)})",
        f"{ratio} {relation} 2*sqrt(3) = {_decimal(bound)}",
    ]


def cmd_ratio(args):
    sys_value, sphere = SYSTOLE, PiValue(12, -1)
    status = EXIT_OK
    if args.recompute:
        result = _run_scan(args)
        computed_area = area_mod.sphere_area()
        if result.minimum != SYSTOLE or computed_area != sphere:
            print(f"recomputed systole {result.minimum} and area {computed_area} "
                  f"disagree with {SYSTOLE} and {sphere}", file=sys.stderr)
            sys_value, sphere = result.minimum or SYSTOLE, computed_area
            status = EXIT_ASSERT
    ratio, lines = ratio_lines(sys_value, sphere)
    for line in lines:
        print(line)
    if ratio != PiValue(Fraction(4, 3), 1):
        status = EXIT_ASSERT
    return status


# -- smooth --------------------------------------------------------------------------

def cmd_smooth(args):
    if args.sigma <= 0:
        raise UsageError("--sigma must be positive")
    try:
        grid = smooth_measure(LineMeasure(), args.epsilon, args.sigma, args.n_t, args.n_theta)
    except ResolutionTooCoarse as exc:
        raise UsageError(str(exc))
    if args.out:
        grid.save(args.out, args.format)
    mass, expected = grid.mass(), grid.analytic_mass()
    print(f"grid {args.n_t} x {args.n_theta}, epsilon = {args.epsilon:g}, sigma = {args.sigma:g}")
    print(f"mass = {mass:.12f}, analytic = {expected:.12f}")
    if abs(mass - expected) > 1e-9:
        return EXIT_ASSERT
    return EXIT_OK


# -- parser --------------------------------------------------------------------------

def _add_scan_flags(p, defaults=(3, 3, 64)):
    p.add_argument("--a-max", type=_nonnegative_int, default=defaults[0])
    p.add_argument("--b-max", type=_nonnegative_int, default=defaults[1])
    p.add_argument("--samples", type=_positive_int, default=defaults[2])
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=_positive_int, default=None,
                   help="worker processes (default: $HEXASYS_THREADS or 1)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hexasys",
        description="Systole, area and systolic ratio of the doubled decorated hexagon.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("systole", help="scan straight closed geodesics and report the shortest")
    _add_scan_flags(p)
    p.add_argument("--out", help="write the per-launch report here")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--no-assert", action="store_true", help="do not require the minimum to be 4")
    p.set_defaults(func=cmd_systole)

    p = sub.add_parser("area", help="Holmes-Thompson area of one hexagon")
    p.add_argument("--method", choices=("exact", "quadrature", "smoothed"), default="exact")
    p.add_argument("--resolution", type=_positive_int, default=1000,
                   help="midpoint grid is resolution x resolution")
    p.add_argument("--mc-samples", type=_positive_int, default=None,
                   help="use Monte-Carlo sampling with this many points instead of the grid")
    p.add_argument("--seed", type=int, default=None, help="default: $HEXASYS_SEED or 0")
    p.add_argument("--epsilon", type=_nonnegative_float, default=1e-3)
    p.add_argument("--sigma", type=_nonnegative_float, default=1e-2)
    p.add_argument("--tolerance", type=float, default=None,
                   help="relative tolerance against 6/pi (quadrature default 1e-4)")
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("geodesic", help="trace one geodesic from the bottom edge")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--x", type=_rational, required=True,
                   help="start point on the bottom edge, in (-1/2, 1/2); write --x=-1/8 for negatives")
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET)
    p.add_argument("--out", help="write the JSON trace here instead of stdout")
    p.add_argument("--svg", help="write an SVG of the unfolded trajectory")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("ratio", help="systolic ratio of the doubled hexagon")
    p.add_argument("--recompute", action="store_true",
                   help="rerun the scan and the exact area instead of using the known constants")
    _add_scan_flags(p)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("smooth", help="mollify the line measure and write the density grid")
    p.add_argument("--epsilon", type=_nonnegative_float, default=1e-2)
    p.add_argument("--sigma", type=_nonnegative_float, default=5e-2)
    p.add_argument("--n-t", type=_positive_int, default=256)
    p.add_argument("--n-theta", type=_positive_int, default=1024)
    p.add_argument("--out", help="file stem for <stem>.json and <stem>.csv or .bin")
    p.add_argument("--format", choices=("csv", "bin"), default="csv")
    p.set_defaults(func=cmd_smooth)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "threads") and args.threads is None:
            args.threads = _env_int("HEXASYS_THREADS", 1)
            if args.threads < 1:
                raise UsageError("HEXASYS_THREADS must be at least 1")
        if hasattr(args, "seed") and args.seed is None:
            args.seed = _env_int("HEXASYS_SEED", 0)
        return args.func(args)
    except UsageError as exc:
        print(f"hexasys: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
