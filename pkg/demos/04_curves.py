"""Invariant curves through the interior saddle.

The unstable curve is grown from a short segment along the expanding
eigendirection and pushed forward by the map.  The stable curve is found
as the boundary between the two basins, by bisection across it.
"""
from dioecy import FitnessParams, classify_square, evolve, stable_boundary, unstable_curve
from dioecy.geometry import invariance_defect, polyline_distance

p = FitnessParams(3.0, 1, 10, 2, 1, 10)
saddle = classify_square(p, "z2")
print("anchor", tuple(round(v, 6) for v in saddle.location), saddle.stability.value)
print("eigenvalues", saddle.eigen.lambda1, saddle.eigen.lambda2)

wu = unstable_curve(p, saddle, steps=30)
for b, pts in enumerate(wu.branches):
    print(f"unstable branch {b}: {len(pts)} vertices, ends at {tuple(round(v, 4) for v in pts[-1])}"
          f" ({wu.terminations[b]}, escapes after {wu.escape_steps[b]} steps)")
print("invariance defect", invariance_defect(p, wu))

# every vertex maps back onto the curve
z = wu.branches[0][5]
print("distance of W(z) from the curve:", polyline_distance(evolve(p, z), wu.branches))

ws = stable_boundary(p, saddle, rays=16)
print(f"stable boundary: {sum(len(b) for b in ws.branches)} points, skipped rays {ws.skipped_rays}")
for pts in ws.branches:
    print("   ", [tuple(round(v, 4) for v in z) for z in pts[:4]], "...")
