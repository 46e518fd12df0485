"""Length structure of the decorated hexagon.

The length of a straight chord is the total Lebesgue measure of its three
projections clipped to the marked unit segments ``{0 <= pk <= 1}``.  Inside
the three sectors with two marked axes active the local norm is an l1 norm;
in the other three sectors only one axis is active and the norm is
degenerate (short segments crossing a marked segment orthogonally have
length 0).
"""

from fractions import Fraction
from typing import NamedTuple

from .plane import AXES, check_in_hexagon, forms

__all__ = [
    "ChordContribution",
    "active_axes",
    "chord_length",
    "clip_interval",
    "local_norm",
    "polyline_length",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def clip_interval(u, v):
    """``[min(u, v), max(u, v)] & [0, 1]`` as ``(lo, hi)``, or ``None`` if at most a point."""
    lo, hi = (u, v) if u <= v else (v, u)
    lo = lo if lo > 0 else _ZERO
    hi = hi if hi < 1 else _ONE
    if hi <= lo:
        return None
    return lo, hi


class ChordContribution(NamedTuple):
    """Per-axis clipped intervals of a chord and their lengths."""

    intervals: tuple
    axes: tuple
    total: Fraction

    @classmethod
    def between_forms(cls, fp, fq):
        intervals = tuple(clip_interval(fp[k], fq[k]) for k in AXES)
        axes = tuple(_ZERO if iv is None else iv[1] - iv[0] for iv in intervals)
        return cls(intervals, axes, axes[0] + axes[1] + axes[2])


def chord_length(p, q, check=True):
    """Length of the straight segment ``[p, q]`` inside H."""
    if check:
        check_in_hexagon(p)
        check_in_hexagon(q)
    return ChordContribution.between_forms(forms(p), forms(q))


def polyline_length(points):
    """Sum of chord lengths along consecutive vertices of a polyline in H.

    This is additive under concatenation; for chords and for curves whose
    projections are monotone it agrees with measuring the projected image.
    """
    points = list(points)
    if len(points) < 2:
        raise ValueError("a polyline needs at least two points")
    for p in points:
        check_in_hexagon(p)
    fs = [forms(p) for p in points]
    return sum((ChordContribution.between_forms(a, b).total for a, b in zip(fs, fs[1:])), _ZERO)


def active_axes(x):
    """Axes whose marked segment contains the projection of ``x`` in its interior."""
    check_in_hexagon(x)
    return frozenset(k for k, p in enumerate(forms(x)) if 0 < p < 1)


def local_norm(x, v):
    """Degenerate norm ``sum_{k active at x} |dpk(v)|`` of a tangent vector ``v`` at ``x``."""
    fv = forms(v)
    return sum((abs(fv[k]) for k in active_axes(x)), _ZERO)
