"""Straight-line geodesics on two copies of H glued along their edges.

A geodesic of the doubled hexagon projects to a billiard trajectory in H.
We simulate it folded: a state is a point on an edge, an inward direction
and the sheet (which copy of H the next chord runs on).  Every chord is
measured against H's own marked segments, since both copies carry the same
decoration.  Unfolding across the tiling is available for analysis and
pictures only.
"""

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional

from .plane import (AXES, DirectionVector, EdgeId, Isometry, PlanePoint,
                    TileName, VertexHit, check_in_hexagon, forms, lattice_direction,
                    ray_exit, reflect_int_direction, tile_of)
from .pseudometric import ChordContribution

__all__ = [
    "BOTTOM_EDGE",
    "BilliardState",
    "Chord",
    "ClosedGeodesicRecord",
    "DiamondCrossing",
    "Launch",
    "NotClosed",
    "ScanResult",
    "Sheet",
    "Trajectory",
    "classify",
    "diamond_crossings",
    "length_certificate",
    "sample_points",
    "scan_directions",
    "start_state",
    "step",
    "systole_scan",
    "trace",
    "unfold",
    "unfolding_maps",
]

BOTTOM_EDGE = EdgeId(0, -1)
DEFAULT_BUDGET = 64


class NotClosed(ValueError):
    pass


class Sheet(enum.Enum):
    DOWN = "down"
    UP = "up"

    def flip(self):
        return Sheet.UP if self is Sheet.DOWN else Sheet.DOWN


class BilliardState(NamedTuple):
    edge: EdgeId
    point: PlanePoint
    direction: DirectionVector
    sheet: Sheet


class Chord(NamedTuple):
    start: PlanePoint
    end: PlanePoint
    contribution: ChordContribution
    sheet: Sheet
    entry_edge: EdgeId
    exit_edge: EdgeId

    def is_diameter(self):
        return (self.entry_edge.axis == self.exit_edge.axis
                and self.entry_edge.sign != self.exit_edge.sign)


def start_state(x, a, b, sheet=Sheet.DOWN):
    """State at ``(x, -1)`` on the bottom edge heading along ``a e1 + b e2``."""
    x = Fraction(x)
    if not -Fraction(1, 2) < x < Fraction(1, 2):
        raise ValueError(f"start parameter {x} not inside the bottom edge (-1/2, 1/2)")
    w = lattice_direction(a, b)
    if w.dY <= 0:
        raise ValueError(f"direction ({a},{b}) does not point into H from the bottom edge")
    return BilliardState(BOTTOM_EDGE, PlanePoint(x, Fraction(-1)), w, sheet)


def _validate(state):
    check_in_hexagon(state.point)
    if forms(state.point)[state.edge.axis] != state.edge.sign:
        raise ValueError(f"{state.point} is not on edge {state.edge}")
    # inward means moving away from p_k = sign
    dp = forms(state.direction)[state.edge.axis]
    if dp * state.edge.sign >= 0:
        raise ValueError(f"direction {tuple(state.direction)} is not inward at {state.edge}")


def step(state):
    """Advance to the next edge.  Returns ``(chord, next_state)`` or a :class:`VertexHit`."""
    exit_ = ray_exit(state.point, state.direction, check=False)
    if isinstance(exit_, VertexHit):
        return exit_
    chord = Chord(state.point, exit_.hit,
                  ChordContribution.between_forms(forms(state.point), forms(exit_.hit)),
                  state.sheet, state.edge, exit_.edge)
    nxt = BilliardState(exit_.edge, exit_.hit,
                        reflect_int_direction(state.direction, exit_.edge),
                        state.sheet.flip())
    return chord, nxt


@dataclass
class Trajectory:
    start: BilliardState
    chords: list = field(default_factory=list)
    closed: bool = False
    outcome: str = "budget"
    vertex: Optional[VertexHit] = None

    @property
    def total_length(self):
        return sum((c.contribution.total for c in self.chords), Fraction(0))

    @property
    def budget_exhausted(self):
        return self.outcome == "budget"

    @property
    def certificate(self):
        return [tuple(c.contribution.axes) for c in self.chords]


def trace(start, max_chords=DEFAULT_BUDGET):
    """Iterate :func:`step` until the start state recurs, a vertex is hit, or the budget runs out."""
    if max_chords < 1:
        raise ValueError("max_chords must be at least 1")
    _validate(start)
    traj = Trajectory(start)
    state = start
    for _ in range(max_chords):
        out = step(state)
        if isinstance(out, VertexHit):
            traj.outcome = "vertex"
            traj.vertex = out
            return traj
        chord, state = out
        traj.chords.append(chord)
        if state == start:
            traj.closed = True
            traj.outcome = "closed"
            return traj
    return traj


def unfolding_maps(traj):
    """Isometries ``g_i`` carrying folded chord ``i`` to its unfolded position; one extra at the end."""
    g = Isometry.identity()
    maps = [g]
    for chord in traj.chords:
        g = g.compose(Isometry.reflection(chord.exit_edge))
        maps.append(g)
    return maps


def unfold(traj):
    """Straighten a trajectory across the tiling.

    Returns ``(polyline, tiles)``: the unfolded chord endpoints (one more than
    the number of chords) and the tile containing each unfolded chord.
    """
    if not traj.chords:
        raise ValueError("trajectory has no chords")
    return _unfold_with(traj, unfolding_maps(traj))


def _unfold_with(traj, maps):
    origin = PlanePoint(Fraction(0), Fraction(0))
    polyline = [traj.chords[0].start]
    tiles = []
    for g, chord in zip(maps, traj.chords):
        tiles.append(tile_of(g.apply(origin)))
        polyline.append(g.apply(chord.end))
    return polyline, tiles


class ClosedGeodesicRecord(NamedTuple):
    a: int
    b: int
    x: Fraction
    r: Fraction
    chords: int
    length: Fraction
    tiles: tuple


def classify(traj):
    """Read off ``(a, b, r)`` from the unfolded displacement ``r (a e1 + b e2)``."""
    if not traj.closed:
        raise NotClosed("trajectory is not closed")
    maps = unfolding_maps(traj)
    polyline, tiles = _unfold_with(traj, maps)
    end = maps[-1]
    if not end.is_translation():
        raise AssertionError("closed trajectory unfolds to a non-translation")
    dX = polyline[-1].X - polyline[0].X
    dY = polyline[-1].Y - polyline[0].Y
    # lattice coordinates of the displacement
    la = Fraction(2, 3) * dX
    lb = (dY - la) / 2
    if la.denominator != 1 or lb.denominator != 1:
        raise AssertionError(f"displacement ({dX}, {dY}) is not a lattice vector")
    ia, ib = int(la), int(lb)
    g = gcd(ia, ib)
    a, b = ia // g, ib // g
    if lattice_direction(a, b) != traj.start.direction:
        raise AssertionError("unfolded displacement is not along the launch direction")
    return ClosedGeodesicRecord(a, b, traj.start.point.X, Fraction(g), len(traj.chords),
                                traj.total_length, tuple(tiles))


class CertificateRow(NamedTuple):
    chord: int
    tile: TileName
    sheet: Sheet
    entry_edge: EdgeId
    exit_edge: EdgeId
    axes: tuple
    total: Fraction


def _as_trajectory(obj, max_chords=DEFAULT_BUDGET):
    if isinstance(obj, Trajectory):
        return obj
    traj = trace(start_state(obj.x, obj.a, obj.b), max(max_chords, obj.chords))
    if not traj.closed:
        raise NotClosed(f"record ({obj.a},{obj.b}) at x={obj.x} does not re-trace to a closed geodesic")
    return traj


def length_certificate(obj):
    """Per-chord, per-axis clipped contributions of a closed geodesic (record or trajectory)."""
    traj = _as_trajectory(obj)
    _, tiles = unfold(traj)
    return [CertificateRow(i, tile, c.sheet, c.entry_edge, c.exit_edge,
                           c.contribution.axes, c.contribution.total)
            for i, (c, tile) in enumerate(zip(traj.chords, tiles))]


class DiamondCrossing(NamedTuple):
    """Chord ``index`` and its successor cross the diamond of two l1 triangles.

    ``axes[0]`` is measured on chord ``index`` (tile ``tiles[0]``), ``axes[1]``
    on the next chord; ``total`` is the sum of the two contributions.
    """

    index: int
    tiles: tuple
    axes: tuple
    total: Fraction


def _zero_crossing(fs, fe, k):
    # parameter in (0, 1) where p_k changes sign along the chord, or None
    a, b = fs[k], fe[k]
    if (a < 0 < b) or (b < 0 < a):
        return a / (a - b)
    return None


def diamond_crossings(obj):
    """Diamond crossings of a closed geodesic.

    At an edge ``{pk = -1}`` the two chords meeting there both touch the l1
    triangle with axes ``{i, j}``.  The geodesic crosses the diamond when the
    incoming chord enters that triangle through the diagonal ``{pi = 0}`` and
    the outgoing one leaves through the other diagonal ``{pj = 0}``.
    """
    traj = _as_trajectory(obj)
    _, tiles = unfold(traj)
    chords = traj.chords
    n = len(chords)
    found = []
    last = n if traj.closed else n - 1
    for i in range(last):
        c_in, c_out = chords[i], chords[(i + 1) % n]
        edge = c_in.exit_edge
        if edge.sign != -1:
            continue
        pair = [k for k in AXES if k != edge.axis]
        f_in_s, f_in_e = forms(c_in.start), forms(c_in.end)
        f_out_s, f_out_e = forms(c_out.start), forms(c_out.end)
        # entry side: the diagonal crossed last by the incoming chord
        entry = [(t, k) for k in pair if (t := _zero_crossing(f_in_s, f_in_e, k)) is not None]
        # exit side: the diagonal crossed first by the outgoing chord
        exit_ = [(t, k) for k in pair if (t := _zero_crossing(f_out_s, f_out_e, k)) is not None]
        if not entry or not exit_:
            continue
        k_in = max(entry)[1]
        k_out = min(exit_)[1]
        if k_in == k_out:
            continue
        total = c_in.contribution.axes[k_in] + c_out.contribution.axes[k_out]
        found.append(DiamondCrossing(i, (tiles[i], tiles[(i + 1) % n]), (k_in, k_out), total))
    return found


# -- exhaustive scan -------------------------------------------------------

class Launch(NamedTuple):
    a: int
    b: int
    x: Fraction
    outcome: str
    record: Optional[ClosedGeodesicRecord]


@dataclass
class ScanResult:
    launches: list
    records: list
    minimum: Optional[Fraction]
    witnesses: list
    counts: dict


def sample_points(samples):
    """Midpoints of ``samples`` equal cells of the open bottom edge ``(-1/2, 1/2)``."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    return [Fraction(2 * i + 1, 2 * samples) - Fraction(1, 2) for i in range(samples)]


def scan_directions(a_max, b_max):
    """Primitive ``(a, b)`` with ``|a| <= a_max``, ``0 < |b| <= b_max`` plus ``(+-1, 0)``,
    keeping those that point into H from the bottom edge.

    The dropped half are exactly the reverses of kept directions.
    """
    dirs = {(1, 0), (-1, 0)}
    for a in range(-a_max, a_max + 1):
        for b in range(-b_max, b_max + 1):
            if b != 0 and gcd(a, b) == 1:
                dirs.add((a, b))
    return sorted(d for d in dirs if lattice_direction(*d).dY > 0)


def _launch_direction(args):
    (a, b), xs, max_chords = args
    out = []
    for x in xs:
        traj = trace(start_state(x, a, b), max_chords)
        rec = classify(traj) if traj.closed else None
        out.append(Launch(a, b, x, traj.outcome, rec))
    return out


def systole_scan(a_max, b_max, samples, max_chords=DEFAULT_BUDGET, threads=1):
    """Launch every scan direction from every sample point and collect closed geodesics.

    Results are sorted by ``(a, b, x)`` and do not depend on ``threads``.
    """
    xs = sample_points(samples)
    jobs = [(d, xs, max_chords) for d in scan_directions(a_max, b_max)]
    if threads is None:
        threads = os.cpu_count() or 1
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_launch_direction, jobs))
    else:
        chunks = [_launch_direction(job) for job in jobs]
    launches = sorted((l for chunk in chunks for l in chunk), key=lambda l: (l.a, l.b, l.x))
    records = [l.record for l in launches if l.record is not None]
    counts = {"closed": 0, "vertex": 0, "budget": 0}
    for l in launches:
        counts[l.outcome] += 1
    minimum = min((r.length for r in records), default=None)
    witnesses = [r for r in records if r.length == minimum]
    return ScanResult(launches, records, minimum, witnesses, counts)
