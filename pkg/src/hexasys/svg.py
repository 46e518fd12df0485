"""SVG pictures of unfolded trajectories over the hexagonal tiling."""

from fractions import Fraction

from .billiard import unfold, unfolding_maps
from .plane import VERTICES, PlanePoint, tile_center, to_euclidean

__all__ = ["render_unfolding"]

_ORIGIN = PlanePoint(Fraction(0), Fraction(0))
# endpoints of the marked segments in sheared coordinates (0 to u_k)
_MARKS = (
    PlanePoint(Fraction(0), Fraction(1)),
    PlanePoint(Fraction(-3, 4), Fraction(-1, 2)),
    PlanePoint(Fraction(3, 4), Fraction(-1, 2)),
)
_MARK_COLORS = ("#1b9e77", "#d95f02", "#7570b3")


def _fmt(v):
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def _xy(p):
    x, y = to_euclidean(p)
    # SVG's y axis points down
    return x, -y


def _poly(points):
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (_xy(p) for p in points))


def render_unfolding(traj, scale=60, margin=0.3):
    """SVG document (a string) showing the unfolded trajectory and the tiles it crosses.

    Each visited tile carries the image of H's marked segments under the
    accumulated reflections, so the decorations flip from tile to tile.
    """
    maps = unfolding_maps(traj)[:len(traj.chords)]
    polyline, tiles = unfold(traj)
    visited = []
    for g in maps:
        if g not in visited:
            visited.append(g)

    pts = [_xy(g.apply(v)) for g in visited for v in VERTICES] + [_xy(p) for p in polyline]
    xmin = min(x for x, _ in pts) - margin
    xmax = max(x for x, _ in pts) + margin
    ymin = min(y for _, y in pts) - margin
    ymax = max(y for _, y in pts) + margin

    # lattice tiles overlapping the picture, drawn faintly underneath
    background = []
    for a in range(-12, 13):
        for b in range(-12, 13):
            cx, cy = _xy(tile_center(a, b))
            if xmin - 1.2 < cx < xmax + 1.2 and ymin - 1.2 < cy < ymax + 1.2:
                c = tile_center(a, b)
                background.append(_poly([v + c for v in VERTICES]))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt((xmax - xmin) * scale)}" '
        f'height="{_fmt((ymax - ymin) * scale)}" '
        f'viewBox="{_fmt(xmin)} {_fmt(ymin)} {_fmt(xmax - xmin)} {_fmt(ymax - ymin)}">',
        f"<title>unfolded trajectory, {len(traj.chords)} chords, {traj.outcome}</title>",
        '<g fill="none" stroke="#cccccc" stroke-width="0.01">',
    ]
    out += [f'<polygon points="{p}"/>' for p in background]
    out.append("</g>")
    out.append('<g fill="#f4f4f4" stroke="#555555" stroke-width="0.015">')
    out += [f'<polygon points="{_poly([g.apply(v) for v in VERTICES])}"/>' for g in visited]
    out.append("</g>")
    out.append('<g stroke-width="0.03" stroke-linecap="round">')
    for g in visited:
        o = g.apply(_ORIGIN)
        for k, mark in enumerate(_MARKS):
            (x0, y0), (x1, y1) = _xy(o), _xy(g.apply(mark))
            out.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
                       f'stroke="{_MARK_COLORS[k]}"/>')
    out.append("</g>")
    out.append(f'<polyline points="{_poly(polyline)}" fill="none" stroke="#e7298a" '
               f'stroke-width="0.025"/>')
    x0, y0 = _xy(polyline[0])
    out.append(f'<circle cx="{_fmt(x0)}" cy="{_fmt(y0)}" r="0.04" fill="#e7298a"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
