"""Lengths in the decorated hexagon.

Each axis k carries a marked unit segment from the centre toward u_k.  A
chord is as long as its three projections overlap those segments.
"""

from fractions import Fraction as F

from hexasys import PlanePoint, active_axes, chord_length, forms, local_norm

P = PlanePoint.of

# sheared coordinates keep everything rational
bottom, top = P(0, -1), P(0, 1)
print("forms of the bottom midpoint:", forms(bottom))

c = chord_length(bottom, top)
print("bottom to top:", c.total, "per axis", c.axes)

# any chord between opposite edges has length 2, wherever it starts and ends
print("skewed diameter:", chord_length(P(F(1, 3), -1), P(F(-1, 4), 1)).total)

# a short horizontal hop inside the sector that contains only one marked segment
d = F(1, 100)
print("short crossing of the vertical marked segment:", chord_length(P(-d, F(1, 2)), P(d, F(1, 2))).total)

# the whole top edge also has length 0
print("top edge:", chord_length(P(F(-1, 2), 1), P(F(1, 2), 1)).total)

for x in [P(F(1, 2), F(1, 4)), P(0, F(1, 2)), P(0, 0)]:
    print(f"at {x}: active axes {sorted(active_axes(x))}, "
          f"norm of (0,1) = {local_norm(x, P(0, 1))}, norm of (1,0) = {local_norm(x, P(1, 0))}")
