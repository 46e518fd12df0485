"""Following straight geodesics on the doubled hexagon.

A geodesic alternates between the two copies of H, so inside one hexagon it
looks like a billiard path.  Unfolding it across the tiling straightens it.
"""

from fractions import Fraction as F
from pathlib import Path

from hexasys import classify, diamond_crossings, length_certificate, start_state, trace, unfold
from hexasys.svg import render_unfolding

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

# the vertical family: two diameters, back where it started after one turn
vertical = trace(start_state(F(1, 8), 0, 1))
rec = classify(vertical)
print(f"(0,1) from x=1/8: {rec.chords} chords, length {rec.length}, r = {rec.r}, tiles {rec.tiles}")
polyline, _ = unfold(vertical)
print("unfolded endpoints:", polyline[0], "->", polyline[-1])

# a shortest geodesic in direction (2,1), found by the scan
witness = trace(start_state(F(-63, 128), 2, 1))
rec = classify(witness)
print(f"\n(2,1) from x=-63/128: {rec.chords} chords, length {rec.length}, r = {rec.r}")
print("tiles", " ".join(str(t) for t in rec.tiles))
print("chord  tile   p0       p1       p2       total")
for row in length_certificate(rec):
    print(f"{row.chord:5d}  {str(row.tile):6s} " + " ".join(f"{str(a):8s}" for a in row.axes)
          + f" {row.total}")

# crossing a diamond costs exactly 1 on the designated pair of axes
for d in diamond_crossings(rec):
    print(f"diamond after chord {d.index}: tiles {d.tiles[0]} {d.tiles[1]}, axes {d.axes}, sum {d.total}")

# some directions run into a corner, where the geodesic stops being defined
print("\n(2,5) from x=0:", trace(start_state(0, 2, 5)).outcome)

(out / "vertical.svg").write_text(render_unfolding(vertical))
(out / "witness_2_1.svg").write_text(render_unfolding(witness))
print("\nwrote", out / "vertical.svg", "and", out / "witness_2_1.svg")
