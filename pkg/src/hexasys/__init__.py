"""Exact systolic geometry of two decorated hexagons glued into a Finsler sphere.

The sphere has systole 4 and Holmes-Thompson area 12/pi, so its systolic
ratio is 4 pi / 3.
"""

from .area import DualBallPolygon, EmptyAxisSet, dual_ball, ht_area, sphere_area, systolic_ratio
from .billiard import (BilliardState, ClosedGeodesicRecord, NotClosed, Sheet, Trajectory,
                       classify, diamond_crossings, length_certificate, start_state, step,
                       systole_scan, trace, unfold)
from .crofton import (DensityGrid, LineMeasure, OrientedLine, QuadratureNotConverged,
                      ResolutionTooCoarse, crofton_distance, norm_from_measure, smooth_measure)
from .exact import SQRT3, IncompatiblePiPowers, PiValue, QSqrt3, format_exact, parse_exact
from .plane import (EDGES, VERTICES, DirectionVector, EdgeId, Isometry, PlanePoint,
                    PointOutsideHexagon, TileName, VertexHit, direction, forms, in_hexagon,
                    lattice_direction, project, ray_exit, reflect_direction, reflect_point,
                    tile_center, tile_of)
from .pseudometric import active_axes, chord_length, local_norm, polyline_length

__version__ = "0.1.0"
