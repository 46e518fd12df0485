"""Exact planar geometry of the decorated hexagon H.

Coordinates are sheared, ``X = (sqrt(3)/2) x`` and ``Y = y`` for Euclidean
``(x, y)``.  In this frame the hexagon of apothem 1 is

    H = {|p0| <= 1, |p1| <= 1, |p2| <= 1},
    p0 = Y,  p1 = -X - Y/2,  p2 = X - Y/2,

and every vertex, edge line, reflection and lattice vector is rational.  The
form ``pk`` is the signed coordinate of the orthogonal projection onto the
line through the unit vector ``uk`` (Euclidean angles 90, 210 and 330
degrees), so the marked unit segment of axis ``k`` is ``{0 <= pk <= 1}``.
"""

from fractions import Fraction
from math import gcd
from typing import NamedTuple

__all__ = [
    "AXES",
    "EDGES",
    "E1",
    "E2",
    "ExitHit",
    "EdgeId",
    "Isometry",
    "NotALatticeCenter",
    "PlanePoint",
    "PointOutsideHexagon",
    "TileName",
    "VERTICES",
    "VertexHit",
    "DirectionVector",
    "direction",
    "forms",
    "in_hexagon",
    "lattice_direction",
    "project",
    "ray_exit",
    "reflect_direction",
    "reflect_point",
    "tile_center",
    "tile_of",
    "to_euclidean",
]

AXES = (0, 1, 2)
_HALF = Fraction(1, 2)


class PointOutsideHexagon(ValueError):
    pass


class NotALatticeCenter(ValueError):
    pass


class PlanePoint(NamedTuple):
    X: Fraction
    Y: Fraction

    @classmethod
    def of(cls, X, Y):
        return cls(Fraction(X), Fraction(Y))

    def __add__(self, other):
        return PlanePoint(self.X + other[0], self.Y + other[1])

    def __sub__(self, other):
        return PlanePoint(self.X - other[0], self.Y - other[1])

    def scaled(self, t):
        return PlanePoint(self.X * t, self.Y * t)

    def __str__(self):
        return f"({self.X}, {self.Y})"


class DirectionVector(NamedTuple):
    """Oriented direction stored as a primitive integer pair."""

    dX: int
    dY: int

    def line_key(self):
        """Sign-normalized representative: ``dY > 0``, or ``dY == 0`` and ``dX > 0``."""
        if self.dY < 0 or (self.dY == 0 and self.dX < 0):
            return DirectionVector(-self.dX, -self.dY)
        return self

    def __neg__(self):
        return DirectionVector(-self.dX, -self.dY)


def direction(dX, dY):
    """Scale a nonzero rational vector to a primitive integer pair, keeping orientation."""
    dX, dY = Fraction(dX), Fraction(dY)
    if dX == 0 and dY == 0:
        raise ValueError("zero direction vector")
    den = dX.denominator * dY.denominator // gcd(dX.denominator, dY.denominator)
    ix, iy = int(dX * den), int(dY * den)
    g = gcd(ix, iy)
    return DirectionVector(ix // g, iy // g)


class EdgeId(NamedTuple):
    """Edge of H supported on ``{p_axis = sign}``."""

    axis: int
    sign: int

    def __str__(self):
        return f"p{self.axis}={'+' if self.sign > 0 else '-'}1"


EDGES = tuple(EdgeId(k, s) for k in AXES for s in (-1, 1))

VERTICES = tuple(PlanePoint.of(X, Y) for X, Y in
                 [(1, 0), (_HALF, 1), (-_HALF, 1), (-1, 0), (-_HALF, -1), (_HALF, -1)])

# sheared images of the unit vectors u_k: p_k(u_k) = 1, and u_k is Euclidean-orthogonal
# to the edges {p_k = +-1}
_NORMALS = (
    (Fraction(0), Fraction(1)),
    (Fraction(-3, 4), Fraction(-1, 2)),
    (Fraction(3, 4), Fraction(-1, 2)),
)


def forms(v):
    """All three forms ``(p0, p1, p2)`` of a point or vector."""
    X, Y = Fraction(v[0]), Fraction(v[1])
    half = Y / 2
    return (Y, -X - half, X - half)


def _doubled_forms(w):
    # 2 * forms(w) for an integer direction, kept in int arithmetic
    dX, dY = w[0], w[1]
    return (2 * dY, -2 * dX - dY, 2 * dX - dY)


def project(point, k):
    """Signed coordinate of the projection of ``point`` onto the axis ``k``."""
    if k not in AXES:
        raise ValueError(f"axis must be 0, 1 or 2, got {k!r}")
    return forms(point)[k]


def in_hexagon(point):
    return all(-1 <= p <= 1 for p in forms(point))


def check_in_hexagon(point):
    if not in_hexagon(point):
        raise PointOutsideHexagon(f"{point} is not in the hexagon")


def to_euclidean(point):
    """Float Euclidean coordinates of a sheared point (for output only)."""
    return 2 * float(point[0]) / 3 ** 0.5, float(point[1])


def reflect_direction(w, edge):
    """Linear part of the Euclidean reflection across ``edge``, in the sheared frame."""
    nX, nY = _NORMALS[edge.axis]
    c = 2 * project(w, edge.axis)
    return direction(w[0] - c * nX, w[1] - c * nY)


def reflect_int_direction(w, edge):
    """Fast path of :func:`reflect_direction` for a primitive integer direction."""
    c = _doubled_forms(w)[edge.axis]
    if edge.axis == 0:
        return DirectionVector(w[0], w[1] - c)
    # scale by 4 to clear the 3/4 and 1/2 in the normals
    nX4 = -3 if edge.axis == 1 else 3
    x, y = 4 * w[0] - c * nX4, 4 * w[1] + 2 * c
    g = gcd(x, y)
    return DirectionVector(x // g, y // g)


def reflect_point(point, edge):
    """Reflect a point across the line supporting ``edge``."""
    nX, nY = _NORMALS[edge.axis]
    c = 2 * (project(point, edge.axis) - edge.sign)
    return PlanePoint(point[0] - c * nX, point[1] - c * nY)


class ExitHit(NamedTuple):
    edge: EdgeId
    hit: PlanePoint
    t: Fraction


class VertexHit(NamedTuple):
    """A ray ran into a vertex of H: the geodesic is undefined there."""

    point: PlanePoint
    edges: tuple
    t: Fraction


def ray_exit(origin, w, check=True):
    """First boundary point of H met by ``origin + t w``, ``t > 0``.

    Returns an :class:`ExitHit`, or a :class:`VertexHit` when two edge lines
    are reached at the same parameter.
    """
    if check:
        check_in_hexagon(origin)
    po = forms(origin)
    pw = _doubled_forms(w) if isinstance(w, DirectionVector) else [2 * f for f in forms(w)]
    best = None
    hits = []
    for k in AXES:
        d = pw[k]
        if d == 0:
            continue
        target = 1 if d > 0 else -1
        t = 2 * (target - po[k]) / d
        if t <= 0:
            raise ValueError(f"direction {tuple(w)} leaves H at {origin}")
        if best is None or t < best:
            best = t
            hits = [EdgeId(k, target)]
        elif t == best:
            hits.append(EdgeId(k, target))
    hit = PlanePoint(origin[0] + best * w[0], origin[1] + best * w[1])
    if len(hits) > 1:
        return VertexHit(hit, tuple(hits), best)
    return ExitHit(hits[0], hit, best)


class TileName(NamedTuple):
    a: int
    b: int

    def __str__(self):
        return f"({self.a},{self.b})"


# lattice basis of the tiling, sheared images of (sqrt 3, 1) and (0, 2)
E1 = (Fraction(3, 2), Fraction(1))
E2 = (Fraction(0), Fraction(2))


def tile_center(a, b):
    return PlanePoint(a * E1[0] + b * E2[0], a * E1[1] + b * E2[1])


def tile_of(center):
    a = Fraction(2, 3) * center[0]
    b = (center[1] - a) / 2
    if a.denominator != 1 or b.denominator != 1:
        raise NotALatticeCenter(f"{center} is not a tile center")
    return TileName(int(a), int(b))


def lattice_direction(a, b):
    """Direction of ``a e1 + b e2``."""
    return direction(a * E1[0] + b * E2[0], a * E1[1] + b * E2[1])


class Isometry(NamedTuple):
    """Affine map ``p -> M p + c`` of the sheared plane, ``M = ((m00, m01), (m10, m11))``.

    The maps generated by edge reflections have all entries in ``Z/4`` (the
    point group of H and the tile lattice are both quarter-integral in the
    sheared frame), so entries are stored as integers counting quarters.
    """

    q00: int
    q01: int
    q10: int
    q11: int
    qX: int
    qY: int

    @classmethod
    def identity(cls):
        return cls(4, 0, 0, 4, 0, 0)

    @classmethod
    def reflection(cls, edge):
        return _REFLECTIONS[edge]

    @classmethod
    def _build_reflection(cls, edge):
        nX, nY = _NORMALS[edge.axis]
        # p_k(v) = a X + b Y
        a, b = [(Fraction(0), Fraction(1)), (Fraction(-1), Fraction(-1, 2)),
                (Fraction(1), Fraction(-1, 2))][edge.axis]
        entries = (1 - 2 * nX * a, -2 * nX * b, -2 * nY * a, 1 - 2 * nY * b,
                   2 * edge.sign * nX, 2 * edge.sign * nY)
        return cls(*(int(4 * e) for e in entries))

    @property
    def matrix(self):
        return ((Fraction(self.q00, 4), Fraction(self.q01, 4)),
                (Fraction(self.q10, 4), Fraction(self.q11, 4)))

    @property
    def translation(self):
        return PlanePoint(Fraction(self.qX, 4), Fraction(self.qY, 4))

    def apply(self, p):
        return PlanePoint(Fraction(self.q00 * p[0] + self.q01 * p[1] + self.qX) / 4,
                          Fraction(self.q10 * p[0] + self.q11 * p[1] + self.qY) / 4)

    def apply_linear(self, v):
        return ((self.q00 * v[0] + self.q01 * v[1]) / Fraction(4),
                (self.q10 * v[0] + self.q11 * v[1]) / Fraction(4))

    def compose(self, other):
        """``self o other``."""
        vals = (
            self.q00 * other.q00 + self.q01 * other.q10,
            self.q00 * other.q01 + self.q01 * other.q11,
            self.q10 * other.q00 + self.q11 * other.q10,
            self.q10 * other.q01 + self.q11 * other.q11,
            self.q00 * other.qX + self.q01 * other.qY + 4 * self.qX,
            self.q10 * other.qX + self.q11 * other.qY + 4 * self.qY,
        )
        if any(v % 4 for v in vals):
            raise ArithmeticError("composition left the quarter-integral maps")
        return Isometry(*(v // 4 for v in vals))

    def determinant(self):
        return Fraction(self.q00 * self.q11 - self.q01 * self.q10, 16)

    def is_translation(self):
        return self.q00 == 4 and self.q11 == 4 and self.q01 == 0 and self.q10 == 0


_REFLECTIONS = {e: Isometry._build_reflection(e) for e in EDGES}
