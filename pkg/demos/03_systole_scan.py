"""Searching for the shortest closed geodesic.

Launch every primitive direction from equispaced points of the bottom edge
and keep the closed ones.  Lengths are exact, so the minimum is exact too.
"""

from collections import Counter

from hexasys import systole_scan

res = systole_scan(3, 3, 64)
print("outcomes:", res.counts)
print("shortest closed geodesic:", res.minimum)

families = Counter((r.a, r.b, r.r, r.chords) for r in res.witnesses)
for (a, b, r, chords), n in sorted(families.items()):
    print(f"  direction ({a},{b}), r = {r}, {chords} chords, at {n} of 64 start points")

# lengths per direction: the shortest length seen in each direction
best = {}
for r in res.records:
    best[(r.a, r.b)] = min(best.get((r.a, r.b), r.length), r.length)
print("\nshortest length by direction")
for (a, b), length in sorted(best.items(), key=lambda kv: (kv[1], kv[0])):
    print(f"  ({a:2d},{b:2d})  {length}")
