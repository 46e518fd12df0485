"""From the singular line measure to smooth Finsler metrics.

The distance of H counts, with weight, the lines of three parallel families
that cross a segment.  Blurring those lines and adding a little of the
uniform measure gives a smooth metric close to it.
"""

import math
import random
from fractions import Fraction as F

from hexasys import LineMeasure, PlanePoint, chord_length, crofton_distance, ht_area, smooth_measure

rng = random.Random(0)


def point():
    while True:
        p0, p1 = F(rng.randint(-100, 100), 100), F(rng.randint(-100, 100), 100)
        if abs(p0 + p1) <= 1:
            return PlanePoint(-p1 - p0 / 2, p0)


pairs = [(point(), point()) for _ in range(40)]

# the singular measure reproduces the hexagon lengths exactly
print("exact agreement:", all(crofton_distance(LineMeasure(), p, q) == chord_length(p, q).total
                              for p, q in pairs))

print("\n  epsilon   sigma     sup |d - d_H|   area - 6/pi")
for eps, sigma in [(1e-1, 1e-1), (1e-2, 1e-2), (1e-3, 10 ** -2.5)]:
    m = LineMeasure(epsilon=eps, sigma=sigma)
    err = max(abs(crofton_distance(m, p, q) - float(chord_length(p, q).total)) for p, q in pairs)
    gap = ht_area("smoothed", epsilon=eps, sigma=sigma) - 6 / math.pi
    print(f"  {eps:<8.0e}  {sigma:<8.2e}  {err:.3e}       {gap:.3e}")

grid = smooth_measure(LineMeasure(), 0.01, 0.05)
print(f"\ndensity grid {grid.shape}: mass {grid.mass():.10f}, expected {grid.analytic_mass():.10f}")
