from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import edge_points, hex_points, small_dirs
from hexasys.plane import EDGES, EdgeId, PlanePoint, PointOutsideHexagon, forms
from hexasys.pseudometric import (active_axes, chord_length, clip_interval, local_norm,
                                  polyline_length)

F = Fraction
P = PlanePoint.of


def test_chord_examples():
    c = chord_length(P(0, -1), P(0, 1))
    assert c.total == 2 and c.axes == (1, F(1, 2), F(1, 2))
    c = chord_length(P(0, 0), P(1, 0))
    assert c.total == 1 and c.axes == (0, 0, 1)
    assert chord_length(P(F(-1, 2), 1), P(F(1, 2), 1)).total == 0
    d = F(1, 100)
    assert chord_length(P(-d, F(1, 2)), P(d, F(1, 2))).total == 0


def test_chord_outside_raises():
    with pytest.raises(PointOutsideHexagon):
        chord_length(P(0, 0), P(2, 0))


def test_polyline_examples():
    assert polyline_length([P(0, -1), P(0, 0), P(0, 1)]) == 2
    assert polyline_length([P(0, -1), P(F(1, 2), 0), P(0, 1)]) >= 2
    assert polyline_length([P(0, 0), P(1, 0), P(0, 0)]) == 2
    with pytest.raises(ValueError):
        polyline_length([P(0, 0)])


def test_active_axes_examples():
    assert active_axes(P(F(1, 2), F(1, 4))) == {0, 2}
    assert active_axes(P(0, F(1, 2))) == {0}
    assert active_axes(P(0, 0)) == frozenset()


def test_local_norm_examples():
    assert local_norm(P(F(1, 2), F(1, 4)), P(0, 1)) == F(3, 2)
    assert local_norm(P(0, F(1, 2)), P(1, 0)) == 0


@given(hex_points(), small_dirs)
def test_local_norm_homogeneous_and_symmetric(x, v):
    n = local_norm(x, v)
    assert local_norm(x, (2 * v[0], 2 * v[1])) == 2 * n
    assert local_norm(x, (-v[0], -v[1])) == n


@given(hex_points(), hex_points())
def test_chord_symmetric(p, q):
    assert chord_length(p, q) == chord_length(q, p)


@given(hex_points(), hex_points(), hex_points())
def test_triangle_inequality(p, q, r):
    assert chord_length(p, r).total <= chord_length(p, q).total + chord_length(q, r).total


def _integrated_norm(p, q):
    # split [p, q] where some form crosses 0 or 1; the norm is constant on each piece
    fp, fq = forms(p), forms(q)
    cuts = {F(0), F(1)}
    for k in range(3):
        if fp[k] != fq[k]:
            for level in (0, 1):
                t = (level - fp[k]) / (fq[k] - fp[k])
                if 0 < t < 1:
                    cuts.add(t)
    cuts = sorted(cuts)
    v = (q[0] - p[0], q[1] - p[1])
    total = F(0)
    for a, b in zip(cuts, cuts[1:]):
        m = (a + b) / 2
        mid = PlanePoint(p[0] + m * v[0], p[1] + m * v[1])
        total += local_norm(mid, v) * (b - a)
    return total


@given(hex_points(), hex_points())
def test_chord_equals_integrated_local_norm(p, q):
    assert chord_length(p, q).total == _integrated_norm(p, q)


@given(hex_points(), hex_points(), st.lists(hex_points(), max_size=4))
def test_polyline_at_least_chord(p, q, middle):
    assert polyline_length([p, *middle, q]) >= chord_length(p, q).total


@pytest.mark.parametrize("axis", [0, 1, 2])
@given(data=st.data())
def test_generalized_diameter_law(axis, data):
    p = data.draw(edge_points(EdgeId(axis, -1)))
    q = data.draw(edge_points(EdgeId(axis, 1)))
    assert chord_length(p, q).total == 2


@pytest.mark.parametrize("axis", [0, 1, 2])
@given(data=st.data())
def test_generalized_radius_law(axis, data):
    # from the edge {p_axis = 1} to a point of the parallel diagonal {p_axis = 0}
    p = data.draw(edge_points(EdgeId(axis, 1)))
    j = (axis + 1) % 3
    t = data.draw(st.fractions(min_value=-1, max_value=1, max_denominator=256))
    f = [None] * 3
    f[axis], f[j] = F(0), t
    f[3 - axis - j] = -t
    q = PlanePoint(-f[1] - f[0] / 2, f[0])
    assert chord_length(p, q).axes[axis] == 1


def test_clip_interval():
    assert clip_interval(F(-1), F(1, 2)) == (0, F(1, 2))
    assert clip_interval(F(2), F(3)) is None
    assert clip_interval(F(1, 3), F(1, 3)) is None


def test_edges_cover_six():
    assert len(EDGES) == 6
