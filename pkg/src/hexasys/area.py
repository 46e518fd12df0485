"""Holmes-Thompson area of the decorated hexagon.

The area density at ``x`` is ``1/pi`` times the Euclidean area of the dual
unit ball.  For the limit metric the norm at ``x`` is
``sum_{k active} |<v, uk>|``, whose dual ball is the polygon spanned by the
sign combinations of the active ``uk``: a parallelogram of area ``2 sqrt 3``
on the three l1 sectors and a segment on the three degenerate ones.

Everything here uses Euclidean (unsheared) coordinates; exact values live in
``Q[sqrt 3]``.
"""

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .crofton import QuadratureNotConverged, atoms, kernel, mollified_indicator
from .exact import SQRT3, IncompatiblePiPowers, PiValue, QSqrt3
from .plane import VERTICES
from .pseudometric import active_axes

__all__ = [
    "DualBallPolygon",
    "EmptyAxisSet",
    "HEXAGON_AREA",
    "U",
    "dual_ball",
    "ht_area",
    "shoelace",
    "smoothed_dual_area",
    "sphere_area",
    "systolic_ratio",
]

_HALF = Fraction(1, 2)
# Euclidean unit vectors of the three axes, at 90, 210 and 330 degrees
U = (
    (QSqrt3(0), QSqrt3(1)),
    (QSqrt3(0, -_HALF), QSqrt3(-_HALF)),
    (QSqrt3(0, _HALF), QSqrt3(-_HALF)),
)
# Euclidean area of H (apothem 1)
HEXAGON_AREA = 2 * SQRT3


class EmptyAxisSet(ValueError):
    pass


def shoelace(vertices):
    """Signed area of a polygon, exact over whatever field the coordinates live in."""
    n = len(vertices)
    total = QSqrt3(0)
    for i in range(n):
        (x0, y0), (x1, y1) = vertices[i], vertices[(i + 1) % n]
        total = total + (x0 * y1 - x1 * y0)
    return total / 2


def _euclidean_exact(p):
    # x = 2X / sqrt 3 = (2 sqrt 3 / 3) X
    return QSqrt3(0, Fraction(2, 3) * p[0]), QSqrt3(p[1])


class DualBallPolygon(NamedTuple):
    """Dual unit ball of a degenerate norm, vertices listed counterclockwise."""

    axes: frozenset
    vertices: tuple
    area: QSqrt3

    def is_centrally_symmetric(self):
        n = len(self.vertices)
        if n % 2:
            return False
        half = n // 2
        return all(self.vertices[i][0] == -self.vertices[i + half][0]
                   and self.vertices[i][1] == -self.vertices[i + half][1] for i in range(half))

    def to_float(self):
        return [(float(x), float(y)) for x, y in self.vertices]


def _add(u, v, s=1):
    return (u[0] + s * v[0], u[1] + s * v[1])


def _neg(u):
    return (-u[0], -u[1])


def dual_ball(where):
    """Dual ball of the limit norm at a point (``PlanePoint``) or for an axis set."""
    if isinstance(where, (set, frozenset, list, tuple)) and all(isinstance(k, int) for k in where):
        axes = frozenset(where)
    else:
        axes = active_axes(where)
    if not axes:
        raise EmptyAxisSet("no marked segment is active here; the dual ball is a point")
    if not axes <= {0, 1, 2} or len(axes) > 2:
        raise ValueError(f"axis set must be a subset of {{0, 1, 2}} of size 1 or 2, got {set(axes)}")
    if len(axes) == 1:
        (k,) = axes
        verts = (U[k], _neg(U[k]))
        return DualBallPolygon(axes, verts, QSqrt3(0))
    i, j = sorted(axes)
    a, b = _add(U[i], U[j]), _add(U[i], U[j], -1)
    verts = [a, b, _neg(a), _neg(b)]
    area = shoelace(verts)
    if area.sign() < 0:
        verts = [a, _neg(b), _neg(a), b]
        area = -area
    return DualBallPolygon(axes, tuple(verts), area)


def _sector_triangles():
    # the six triangles (centre, V_i, V_{i+1}) with a rational interior point
    for i in range(6):
        v0, v1 = VERTICES[i], VERTICES[(i + 1) % 6]
        centroid = ((v0[0] + v1[0]) / 3, (v0[1] + v1[1]) / 3)
        tri = [(QSqrt3(0), QSqrt3(0)), _euclidean_exact(v0), _euclidean_exact(v1)]
        yield centroid, shoelace(tri)


def _exact_area():
    total = QSqrt3(0)
    for centroid, tri_area in _sector_triangles():
        total = total + tri_area * dual_ball(centroid).area
    if not total.is_rational():
        raise ArithmeticError("sector sum left Q")
    return PiValue(total.a, -1)


def _limit_density(x, y):
    """Dual-ball area of the limit norm at Euclidean points (vectorized floats)."""
    p = np.stack([y, -math.sqrt(3) / 2 * x - y / 2, math.sqrt(3) / 2 * x - y / 2])
    inside = np.all(np.abs(p) <= 1, axis=0)
    active = np.sum((p > 0) & (p < 1), axis=0)
    return np.where(inside & (active == 2), 2 * math.sqrt(3), 0.0)


def _grid_area(resolution, chunk=250):
    # midpoint rule on the bounding box [-2/sqrt3, 2/sqrt3] x [-1, 1]
    half_w = 2 / math.sqrt(3)
    xs = -half_w + (np.arange(resolution) + 0.5) * (2 * half_w / resolution)
    ys = -1 + (np.arange(resolution) + 0.5) * (2 / resolution)
    cell = (2 * half_w / resolution) * (2 / resolution)
    partial = []
    for start in range(0, resolution, chunk):
        X, Y = np.meshgrid(xs, ys[start:start + chunk], indexing="xy")
        partial.append(np.sum(_limit_density(X, Y)))
    return float(np.sum(partial)) * cell / math.pi


def _monte_carlo_area(samples, seed):
    rng = np.random.default_rng(seed)
    half_w = 2 / math.sqrt(3)
    x = rng.uniform(-half_w, half_w, samples)
    y = rng.uniform(-1, 1, samples)
    box = 4 * half_w
    return float(np.mean(_limit_density(x, y))) * box / math.pi


# -- mollified metric ----------------------------------------------------------------

def smoothed_dual_area(points, epsilon, sigma, nodes=24):
    """Dual-ball area of the mollified Crofton norm at Euclidean points ``(M, 2)``.

    The norm is ``1/4 int |<v, n>| phi(theta) dtheta`` with
    ``phi = epsilon + sum over atoms of 2 eta(theta - theta_a) g_a(<x, n>)``; its
    dual ball is the zonoid with that support function, of area
    ``1/8 int int |sin(theta - theta')| phi phi'``.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    u, w = np.polynomial.legendre.leggauss(nodes)
    thetas, blocks = [], []
    for atom in atoms():
        th = atom.theta + sigma * u
        n = np.stack([-np.sin(th), np.cos(th)])
        g = mollified_indicator(points @ n, atom.t_lo, atom.t_hi, sigma)
        # psi * dtheta on the nodes: 2 K(u) w g  (the sigma of dtheta cancels the 1/sigma of eta)
        blocks.append(2 * kernel(u) * w * g)
        thetas.append(th)
    theta = np.concatenate(thetas)
    psi = np.concatenate(blocks, axis=1)
    S = np.abs(np.sin(theta[:, None] - theta[None, :]))
    quad = np.einsum("mi,ij,mj->m", psi, S, psi)
    return (8 * math.pi * epsilon ** 2 + 8 * epsilon * psi.sum(axis=1) + quad) / 8


def _graded_breaks(a, b, toward, finest, ratio=2.0):
    """Breakpoints of ``[a, b]`` refined geometrically toward ``toward`` (``a`` or ``b``)."""
    length = b - a
    steps = [length]
    while steps[-1] / ratio > finest:
        steps.append(steps[-1] / ratio)
    if toward == b:
        pts = [a] + [b - o for o in steps[1:]] + [b]
    else:
        pts = [a] + [a + o for o in steps[1:]] + [b]
    return sorted(set(pts))


def _panels(breaks, n):
    x, w = np.polynomial.legendre.leggauss(n)
    nodes, weights = [], []
    for lo, hi in zip(breaks, breaks[1:]):
        half = (hi - lo) / 2
        nodes.append(lo + half * (x + 1))
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _smoothed_area(epsilon, sigma, nodes=24, panel_nodes=8):
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    # the mollified measure keeps the D3 symmetry of H: integrate the wedge between
    # the mirror lines at 30 and 90 degrees in polar coordinates r = s R(phi)
    finest = sigma / 4
    mid = math.pi / 3
    phi_breaks = sorted(set(_graded_breaks(math.pi / 6, mid, mid, finest)
                            + _graded_breaks(mid, math.pi / 2, mid, finest)))
    s_breaks = sorted(set(_graded_breaks(0.0, 0.5, 0.0, finest)
                          + _graded_breaks(0.5, 1.0, 1.0, finest)))
    phi, wphi = _panels(phi_breaks, panel_nodes)
    s, ws = _panels(s_breaks, panel_nodes)
    total = 0.0
    for ph, wp in zip(phi, wphi):
        R = 1 / math.cos(ph - math.pi / 6) if ph < mid else 1 / math.sin(ph)
        r = s * R
        pts = np.stack([r * math.cos(ph), r * math.sin(ph)], axis=1)
        dens = smoothed_dual_area(pts, epsilon, sigma, nodes)
        total += wp * R * R * float(np.dot(ws * s, dens))
    return 6 * total / math.pi


def ht_area(method="exact", resolution=1000, samples=None, seed=0, epsilon=0.0, sigma=0.0):
    """Holmes-Thompson area of one hexagon.

    ``exact`` returns ``PiValue(6, -1)``; ``quadrature`` integrates the limit
    density on a ``resolution x resolution`` midpoint grid (or with
    ``samples`` Monte-Carlo points when given); ``smoothed`` integrates the
    density of the mollified Crofton metric with parameters ``epsilon``, ``sigma``.
    """
    if method == "exact":
        return _exact_area()
    if method == "quadrature":
        if samples is not None:
            return _monte_carlo_area(int(samples), seed)
        if resolution < 1:
            raise ValueError("resolution must be positive")
        return _grid_area(int(resolution))
    if method == "smoothed":
        coarse = _smoothed_area(epsilon, sigma, panel_nodes=6)
        fine = _smoothed_area(epsilon, sigma, panel_nodes=8)
        if abs(fine - coarse) > 1e-7 * abs(fine):
            raise QuadratureNotConverged("smoothed area", abs(fine - coarse))
        return fine
    raise ValueError(f"unknown area method {method!r}")


def sphere_area():
    """Two glued copies of the hexagon."""
    return 2 * ht_area("exact")


def systolic_ratio(sys, area):
    sys = Fraction(sys)
    if not isinstance(area, PiValue) or area.pi_power != -1:
        raise IncompatiblePiPowers("the area must be a rational multiple of 1/pi")
    if sys <= 0 or area.coefficient <= 0:
        raise ValueError("systole and area must be positive")
    return PiValue(sys * sys) / area
