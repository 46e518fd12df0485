"""Holmes-Thompson area and the systolic ratio.

On the three sectors where two marked segments are active the dual unit
ball is a parallelogram of area 2 sqrt 3; elsewhere it is flat.
"""

import math

from hexasys import dual_ball, ht_area, sphere_area, systolic_ratio
from hexasys.exact import SQRT3

for axes in ({0, 1}, {0, 2}, {1, 2}, {0}):
    ball = dual_ball(axes)
    print(f"dual ball for axes {sorted(axes)}: {len(ball.vertices)} vertices, area {ball.area}")

area = ht_area("exact")
print("\nhexagon area:", area, "=", float(area))
print("grid quadrature (10^6 cells):", ht_area("quadrature", resolution=1000))
print("Monte-Carlo (10^6 points, seed 1):", ht_area("quadrature", samples=10**6, seed=1))

sphere = sphere_area()
ratio = systolic_ratio(4, sphere)
print(f"\nsystole 4, sphere area {sphere}: ratio {ratio} = {float(ratio):.6f}")
print(f"round sphere value 2*sqrt(3) = {float(2 * SQRT3):.6f}; exceeded: {ratio.exceeds(2 * SQRT3)}")
print("check:", abs(float(ratio) - 4 * math.pi / 3) < 1e-15)
