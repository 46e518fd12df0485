"""Measures on oriented lines and the distances and norms they induce.

An oriented line is ``(t, theta)``: the points ``t n(theta) + s w(theta)``
with ``w = (cos, sin)`` and ``n`` its +90 degree rotation, in Euclidean
coordinates.  The distance of a line measure ``mu`` is

    d(p, q) = 1/4 * integral of #(line & [p, q]) dmu(line).

The hexagon's measure is singular: for each axis ``k``, weight 2 times ``dt``
on the lines ``{pk = t}``, ``t`` in ``[0, 1]``, at both orientations (six
atoms in ``theta``).  Optionally it carries a uniform background
``epsilon dt dtheta`` and a mollification of width ``sigma`` in both ``t`` and
``theta``.
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .plane import forms, to_euclidean

__all__ = [
    "Atom",
    "DensityGrid",
    "LineMeasure",
    "OrientedLine",
    "QuadratureNotConverged",
    "ResolutionTooCoarse",
    "SINGULAR_WEIGHT",
    "atoms",
    "crofton_distance",
    "hexagon_support",
    "kernel",
    "kernel_cdf",
    "kernel_cdf_integral",
    "mollified_indicator",
    "norm_from_measure",
    "smooth_measure",
]

SINGULAR_WEIGHT = 2
TWO_PI = 2 * math.pi
# circumradius of H, the largest support value
_R = 2 / math.sqrt(3)
_GL_NODES = 64


class QuadratureNotConverged(RuntimeError):
    def __init__(self, message, achieved):
        super().__init__(f"{message} (achieved {achieved:.3e})")
        self.achieved = achieved


class ResolutionTooCoarse(ValueError):
    pass


class OrientedLine(NamedTuple):
    t: float
    theta: float

    def same_unoriented(self, other, tol=1e-12):
        d = (self.theta - other.theta) % TWO_PI
        if min(d, TWO_PI - d) < tol:
            return abs(self.t - other.t) < tol
        if abs(d - math.pi) < tol:
            return abs(self.t + other.t) < tol
        return False

    def reversed(self):
        return OrientedLine(-self.t, (self.theta + math.pi) % TWO_PI)


class Atom(NamedTuple):
    """Lines ``{sign * pk = t}``, ``t`` in ``[t_lo, t_hi]``, at direction angle ``theta``."""

    axis: int
    sign: int
    theta: float
    t_lo: int
    t_hi: int


def atoms():
    # normal s*u_k has angle 90 + 120 k (+180 if s = -1); theta = normal angle - 90
    out = []
    for k in (0, 1, 2):
        for s in (1, -1):
            theta = math.radians(120 * k + (0 if s > 0 else 180)) % TWO_PI
            out.append(Atom(k, s, theta, 0 if s > 0 else -1, 1 if s > 0 else 0))
    return out


@dataclass(frozen=True)
class LineMeasure:
    singular: bool = True
    epsilon: float = 0.0
    sigma: float = 0.0

    def __post_init__(self):
        if self.epsilon < 0 or self.sigma < 0:
            raise ValueError("epsilon and sigma must be nonnegative")
        if self.sigma >= 0.5:
            raise ValueError("sigma must stay below 0.5 so the six atom windows do not overlap")

    @property
    def is_exact(self):
        return self.sigma == 0 and self.epsilon == 0

    def analytic_mass(self):
        """Mass of the singular part plus the background over lines meeting H."""
        singular = 6 * SINGULAR_WEIGHT if self.singular else 0
        # lines meeting a convex body: integral of its width over theta in [0, 2 pi)
        # = 2 * perimeter; the perimeter of H is 4 sqrt(3)
        return singular + float(self.epsilon) * 8 * math.sqrt(3)


# -- kernel ------------------------------------------------------------------
# K(s) = 35/32 (1 - s^2)^3 on [-1, 1]: even, C^2, unit mass

def kernel(s):
    s = np.asarray(s, dtype=float)
    return np.where(np.abs(s) < 1, 35 / 32 * (1 - s * s) ** 3, 0.0)


def kernel_cdf(s):
    s = np.clip(np.asarray(s, dtype=float), -1, 1)
    s2 = s * s
    return 0.5 + s * (35 / 32 + s2 * (-35 / 32 + s2 * (21 / 32 - 5 / 32 * s2)))


def kernel_cdf_integral(s):
    """Antiderivative of :func:`kernel_cdf` vanishing below -1 (equals ``s`` above 1)."""
    s = np.asarray(s, dtype=float)
    c = np.clip(s, -1, 1)
    c2 = c * c
    inner = 35 / 256 + c / 2 + c2 * (35 / 64 + c2 * (-35 / 128 + c2 * (7 / 64 - 5 / 256 * c2)))
    return np.where(s <= -1, 0.0, np.where(s >= 1, s, inner))


def mollified_indicator(t, lo, hi, sigma):
    """Indicator of ``[lo, hi]`` convolved with the kernel of width ``sigma``."""
    if sigma == 0:
        t = np.asarray(t, dtype=float)
        return ((t >= lo) & (t <= hi)).astype(float)
    return kernel_cdf((np.asarray(t) - lo) / sigma) - kernel_cdf((np.asarray(t) - hi) / sigma)


def _mollified_indicator_integral(t, lo, hi, sigma):
    return sigma * (kernel_cdf_integral((np.asarray(t) - lo) / sigma)
                    - kernel_cdf_integral((np.asarray(t) - hi) / sigma))


def _wrap(u):
    return (np.asarray(u) + math.pi) % TWO_PI - math.pi


def _angular_mass(theta0, theta1, center, sigma):
    """Mass of the periodic angular kernel centered at ``center`` on ``[theta0, theta1]``."""
    u0 = _wrap(np.asarray(theta0) - center)
    u1 = u0 + (np.asarray(theta1) - np.asarray(theta0))
    if sigma == 0:
        return ((u0 <= 0) & (0 < u1)).astype(float)
    return kernel_cdf(u1 / sigma) - kernel_cdf(u0 / sigma)


# -- geometry helpers ---------------------------------------------------------

def _euclid(p):
    if isinstance(p, np.ndarray):
        return p
    return np.array(to_euclidean(p))


def _normal(theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([-np.sin(theta), np.cos(theta)], axis=-1)


def hexagon_support(theta):
    """Support value ``max_{v in H} <v, n(theta)>`` (Euclidean)."""
    theta = np.asarray(theta, dtype=float)
    # vertices sit at multiples of 60 degrees; the normal angle is theta + 90
    phi = (theta + math.pi / 2) % (math.pi / 3)
    return _R * np.cos(np.minimum(phi, math.pi / 3 - phi))


def _gauss_legendre(a, b, n):
    x, w = np.polynomial.legendre.leggauss(n)
    half = (b - a) / 2
    return a + half * (x + 1), half * w


def _split_points(lo, hi, kinks):
    pts = [lo] + sorted(k for k in kinks if lo < k < hi) + [hi]
    return list(zip(pts, pts[1:]))


def _angles_parallel_to(vec, lo, hi):
    """Angles in ``(lo, hi)`` where ``<vec, n(theta)> = 0``."""
    if not np.any(vec):
        return []
    base = math.atan2(vec[1], vec[0])
    out = []
    k0 = math.floor((lo - base) / math.pi)
    for k in range(k0, k0 + int((hi - lo) / math.pi) + 3):
        a = base + k * math.pi
        if lo < a < hi:
            out.append(a)
    return out


def _angles_at_offset(x, c, lo, hi):
    """Angles in ``(lo, hi)`` where ``<x, n(theta)> = c``."""
    r = math.hypot(x[0], x[1])
    if r <= abs(c):
        return []
    # <x, n(theta)> = r cos(theta - psi)
    psi = math.atan2(-x[0], x[1])
    out = []
    for base in (psi + math.acos(c / r), psi - math.acos(c / r)):
        k0 = math.floor((lo - base) / TWO_PI)
        for k in range(k0, k0 + int((hi - lo) / TWO_PI) + 2):
            a = base + k * TWO_PI
            if lo < a < hi:
                out.append(a)
    return out


def _join_angles(points, atom, sigma, lo, hi):
    # the mollified t-profile is piecewise polynomial with joins at t_lo +- sigma, t_hi +- sigma
    out = []
    for x in points:
        for c in (atom.t_lo - sigma, atom.t_lo + sigma, atom.t_hi - sigma, atom.t_hi + sigma):
            out.extend(_angles_at_offset(x, c, lo, hi))
    return out


def _integrate_pieces(func, pieces, n):
    total = 0.0
    for lo, hi in pieces:
        x, w = _gauss_legendre(lo, hi, n)
        total += float(np.dot(w, func(x)))
    return total


def _checked(func, pieces, tol, what):
    coarse = _integrate_pieces(func, pieces, _GL_NODES // 2)
    fine = _integrate_pieces(func, pieces, _GL_NODES)
    err = abs(fine - coarse)
    if err > tol * max(1.0, abs(fine)):
        raise QuadratureNotConverged(f"{what} quadrature did not converge", err)
    return fine


# -- distances ----------------------------------------------------------------

def _singular_distance_exact(p, q):
    fp, fq = forms(p), forms(q)
    total = Fraction(0)
    for atom in atoms():
        # offsets of p and q for this family: <x, s u_k> = s p_k(x)
        a, b = atom.sign * fp[atom.axis], atom.sign * fq[atom.axis]
        lo, hi = max(min(a, b), atom.t_lo), min(max(a, b), atom.t_hi)
        if hi > lo:
            total += SINGULAR_WEIGHT * (hi - lo)
    return total / 4


def _background_distance(pe, qe, tol):
    d = qe - pe
    pieces = _split_points(0.0, TWO_PI, _angles_parallel_to(d, 0.0, TWO_PI))
    return _checked(lambda th: np.abs(_normal(th) @ d), pieces, tol, "background") / 4


def _smoothed_singular_distance(pe, qe, sigma, tol):
    d = qe - pe
    total = 0.0
    for atom in atoms():
        lo, hi = atom.theta - sigma, atom.theta + sigma
        pieces = _split_points(lo, hi, _angles_parallel_to(d, lo, hi)
                               + _join_angles((pe, qe), atom, sigma, lo, hi))

        def integrand(th, atom=atom):
            n = _normal(th)
            gp = _mollified_indicator_integral(n @ pe, atom.t_lo, atom.t_hi, sigma)
            gq = _mollified_indicator_integral(n @ qe, atom.t_lo, atom.t_hi, sigma)
            eta = kernel((th - atom.theta) / sigma) / sigma
            return SINGULAR_WEIGHT * eta * np.abs(gq - gp)

        total += _checked(integrand, pieces, tol, "smoothed atom")
    return total / 4


def crofton_distance(measure, p, q, tol=1e-10):
    """Crofton distance between two points of H (sheared :class:`PlanePoint` values).

    The pure singular measure gives an exact ``Fraction``; anything involving
    the background or mollification gives a float.
    """
    if isinstance(measure, DensityGrid):
        return measure.distance(p, q)
    if tuple(p) == tuple(q):
        return Fraction(0) if measure.is_exact else 0.0
    if measure.is_exact:
        return _singular_distance_exact(p, q) if measure.singular else Fraction(0)
    pe, qe = _euclid(p), _euclid(q)
    total = 0.0
    if measure.singular:
        if measure.sigma == 0:
            total += float(_singular_distance_exact(p, q))
        else:
            total += _smoothed_singular_distance(pe, qe, measure.sigma, tol)
    if measure.epsilon:
        total += float(measure.epsilon) * _background_distance(pe, qe, tol)
    return total


# -- norms ------------------------------------------------------------------------

def _euclid_vector(v):
    return np.array([2 * float(v[0]) / math.sqrt(3), float(v[1])])


def norm_from_measure(measure, x, v, tol=1e-10):
    """Crofton norm ``1/4 * integral |<v, n(theta)>| f(<x, n(theta)>, theta) dtheta`` at ``x``.

    ``v`` is a tangent vector in sheared coordinates.  Exact for the pure
    singular measure, where the open-interval convention is used for
    ``<x, n>`` on the atom ranges.
    """
    if isinstance(measure, DensityGrid):
        return measure.norm(x, v)
    if measure.singular and measure.sigma == 0:
        fx, fv = forms(x), forms(v)
        exact = Fraction(0)
        for atom in atoms():
            off = atom.sign * fx[atom.axis]
            if atom.t_lo < off < atom.t_hi:
                exact += SINGULAR_WEIGHT * abs(fv[atom.axis])
        exact /= 4
        if not measure.epsilon:
            return exact
        singular = float(exact)
    else:
        singular = 0.0
    xe, ve = _euclid(x), _euclid_vector(v)
    if measure.singular and measure.sigma > 0:
        sigma = measure.sigma
        for atom in atoms():
            lo, hi = atom.theta - sigma, atom.theta + sigma
            pieces = _split_points(lo, hi, _angles_parallel_to(ve, lo, hi)
                                   + _join_angles((xe,), atom, sigma, lo, hi))

            def integrand(th, atom=atom):
                n = _normal(th)
                g = mollified_indicator(n @ xe, atom.t_lo, atom.t_hi, sigma)
                eta = kernel((th - atom.theta) / sigma) / sigma
                return SINGULAR_WEIGHT * eta * g * np.abs(n @ ve)

            singular += _checked(integrand, pieces, tol, "norm") / 4
    background = 0.0
    if measure.epsilon:
        # 1/4 * epsilon * integral |<v, n>| dtheta = epsilon |v|
        pieces = _split_points(0.0, TWO_PI, _angles_parallel_to(ve, 0.0, TWO_PI))
        background = float(measure.epsilon) * _checked(
            lambda th: np.abs(_normal(th) @ ve), pieces, tol, "background norm") / 4
    return singular + background


# -- mollified density grids --------------------------------------------------------

def _background_cell_masses(t_edges, theta_edges):
    """``integral over each cell of 1[|t| <= h(theta)]`` (lines meeting H), exactly up to rounding."""
    n_t, n_th = len(t_edges) - 1, len(theta_edges) - 1
    dth = np.diff(theta_edges)
    out = np.zeros((n_t, n_th))
    vertex_kinks = [k * math.pi / 3 for k in range(7)]
    for i in range(n_t):
        t0, t1 = t_edges[i], t_edges[i + 1]
        if max(abs(t0), abs(t1)) <= 1 and t0 * t1 >= 0 or (abs(t0) <= 1 and abs(t1) <= 1):
            # h >= 1 everywhere: the cell lies inside the band
            out[i] = (t1 - t0) * dth
            continue
        if min(abs(t0), abs(t1)) >= _R and t0 * t1 > 0:
            continue
        kinks = list(vertex_kinks)
        for c in (abs(t0), abs(t1)):
            if 1 < c < _R:
                psi = math.acos(c / _R)
                for m in range(6):
                    # support = R cos(normal angle - vertex angle)
                    for sgn in (-1, 1):
                        kinks.append((m * math.pi / 3 + sgn * psi - math.pi / 2) % TWO_PI)
        breaks = np.unique(np.concatenate([theta_edges, [k for k in kinks
                                                        if theta_edges[0] < k < theta_edges[-1]]]))
        x, w = np.polynomial.legendre.leggauss(8)
        a, b = breaks[:-1], breaks[1:]
        nodes = (a[:, None] + (b - a)[:, None] * (x[None, :] + 1) / 2)
        weights = (b - a)[:, None] * w[None, :] / 2
        h = hexagon_support(nodes)
        length = np.clip(np.minimum(t1, h) - np.maximum(t0, -h), 0, None)
        piece = (length * weights).sum(axis=1)
        # attribute each elementary piece to its theta cell
        cell = np.searchsorted(theta_edges, (a + b) / 2, side="right") - 1
        np.add.at(out[i], cell, piece)
    return out


@dataclass
class DensityGrid:
    """Cell-averaged density of a (mollified) line measure on ``[t] x [theta]``.

    ``density[i, j]`` is the average over the cell ``t_edges[i:i+2] x theta_edges[j:j+2]``.
    """

    t_edges: np.ndarray
    theta_edges: np.ndarray
    density: np.ndarray
    epsilon: float
    sigma: float
    singular: bool = True

    @property
    def shape(self):
        return self.density.shape

    def cell_areas(self):
        return np.outer(np.diff(self.t_edges), np.diff(self.theta_edges))

    def mass(self):
        # pairwise summation keeps this reproducible
        return float(np.sum(self.density * self.cell_areas()))

    def analytic_mass(self):
        return LineMeasure(self.singular, self.epsilon, self.sigma).analytic_mass()

    def _row_cumulative(self):
        dt = np.diff(self.t_edges)
        cum = np.zeros((len(self.t_edges), self.density.shape[1]))
        cum[1:] = np.cumsum(self.density * dt[:, None], axis=0)
        return cum

    def distance(self, p, q):
        pe, qe = _euclid(p), _euclid(q)
        theta_c = (self.theta_edges[:-1] + self.theta_edges[1:]) / 2
        n = _normal(theta_c)
        a, b = n @ pe, n @ qe
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        cum = self._row_cumulative()
        j = np.arange(len(theta_c))
        F_hi = np.array([np.interp(hi[k], self.t_edges, cum[:, k]) for k in j])
        F_lo = np.array([np.interp(lo[k], self.t_edges, cum[:, k]) for k in j])
        return float(np.sum((F_hi - F_lo) * np.diff(self.theta_edges))) / 4

    def norm(self, x, v):
        xe, ve = _euclid(x), _euclid_vector(v)
        theta_c = (self.theta_edges[:-1] + self.theta_edges[1:]) / 2
        n = _normal(theta_c)
        off = n @ xe
        t_c = (self.t_edges[:-1] + self.t_edges[1:]) / 2
        f = np.array([np.interp(off[k], t_c, self.density[:, k]) for k in range(len(theta_c))])
        return float(np.sum(np.abs(n @ ve) * f * np.diff(self.theta_edges))) / 4

    def header(self):
        return {
            "n_t": int(self.density.shape[0]),
            "n_theta": int(self.density.shape[1]),
            "t_min": float(self.t_edges[0]),
            "t_max": float(self.t_edges[-1]),
            "theta_min": float(self.theta_edges[0]),
            "theta_max": float(self.theta_edges[-1]),
            "epsilon": float(self.epsilon),
            "sigma": float(self.sigma),
            "singular": bool(self.singular),
            "layout": "row-major, t slowest, theta fastest",
            "mass": self.mass(),
        }

    def save(self, stem, fmt="csv"):
        """Write ``<stem>.json`` (header) and ``<stem>.csv`` or ``<stem>.bin`` (float64 LE)."""
        header = self.header()
        header["format"] = fmt
        with open(f"{stem}.json", "w") as fh:
            json.dump(header, fh, indent=2, sort_keys=True)
            fh.write("\n")
        if fmt == "csv":
            np.savetxt(f"{stem}.csv", self.density, delimiter=",", fmt="%.17g")
        elif fmt == "bin":
            self.density.astype("<f8").tofile(f"{stem}.bin")
        else:
            raise ValueError(f"unknown grid format {fmt!r}")

    @classmethod
    def load(cls, stem):
        with open(f"{stem}.json") as fh:
            h = json.load(fh)
        shape = (h["n_t"], h["n_theta"])
        if h["format"] == "csv":
            density = np.loadtxt(f"{stem}.csv", delimiter=",", ndmin=2).reshape(shape)
        else:
            density = np.fromfile(f"{stem}.bin", dtype="<f8").reshape(shape)
        return cls(np.linspace(h["t_min"], h["t_max"], shape[0] + 1),
                   np.linspace(h["theta_min"], h["theta_max"], shape[1] + 1),
                   density, h["epsilon"], h["sigma"], h["singular"])


def smooth_measure(measure, epsilon, sigma, n_t=512, n_theta=2048):
    """Mollify ``measure + epsilon dt dtheta`` with width ``sigma`` and sample it on a grid.

    The background is uniform, hence unchanged by the convolution; it is
    restricted to lines meeting H afterwards so the grid carries finite mass.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    t_max = max(1 + sigma, _R) * 1.02
    t_edges = np.linspace(-t_max, t_max, n_t + 1)
    theta_edges = np.linspace(0.0, TWO_PI, n_theta + 1)
    dt, dth = t_edges[1] - t_edges[0], theta_edges[1] - theta_edges[0]
    if sigma < 2 * max(dt, dth):
        raise ResolutionTooCoarse(
            f"sigma={sigma} is below two grid cells (dt={dt:.3g}, dtheta={dth:.3g})")
    masses = np.zeros((n_t, n_theta))
    if measure.singular:
        for atom in atoms():
            # differences of monotone primitives: clamp the roundoff below zero
            t_mass = np.maximum(
                np.diff(_mollified_indicator_integral(t_edges, atom.t_lo, atom.t_hi, sigma)), 0)
            th_mass = np.maximum(
                _angular_mass(theta_edges[:-1], theta_edges[1:], atom.theta, sigma), 0)
            masses += SINGULAR_WEIGHT * np.outer(t_mass, th_mass)
    total_eps = float(epsilon) + float(measure.epsilon)
    if total_eps:
        masses += total_eps * _background_cell_masses(t_edges, theta_edges)
    density = masses / np.outer(np.diff(t_edges), np.diff(theta_edges))
    return DensityGrid(t_edges, theta_edges, density, total_eps, sigma, measure.singular)
