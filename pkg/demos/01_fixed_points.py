"""Fixed points of the two-sex selection map and their types.

Run:  python demos/01_fixed_points.py
"""
from fractions import Fraction

from dioecy import FitnessParams, ReducedParams, quadrant_fixed_points, square_fixed_points

# Heterozygote advantage in neither sex, A2A2 fittest: one interior saddle.
p = FitnessParams.of("3", "1", "10", "2", "1", "10")
print("fitnesses:", [str(v) for v in p])
for rep in square_fixed_points(p):
    if rep.location is None:
        print(f"  {rep.label}: not applicable ({rep.note})")
        continue
    where = tuple(str(v) for v in rep.location)
    kind = rep.stability.value if rep.stability else "-"
    print(f"  {rep.label}: {where} in_domain={rep.in_domain} residual={rep.residual} {kind}")

# The same dynamics in odds coordinates only needs four ratios.
print()
print("odds-coordinate fixed points for a few reduced parameter sets")
for row in [("0.3", "0.1", "0.2", "0.1"), ("0.9", "0.5", "0.2", "0.8"),
            ("9", "5", "2", "0.8"), ("9", "0.5", "2", "0.5")]:
    r = ReducedParams.of(*row)
    _, P = quadrant_fixed_points(r)
    l1, l2 = P.eigen.lambda1, P.eigen.lambda2
    loc = "(" + ", ".join(str(Fraction(v)) for v in P.location) + ")"
    print(f"  {row}: P={loc:<20} eigenvalues {l1.real:+.10f} {l2.real:+.10f}  {P.stability.value}")

# The first row is often quoted with a second eigenvalue near -0.585.
# trace and det of the Jacobian pin it down to about -0.00585 instead.
_, P = quadrant_fixed_points(ReducedParams.of("0.3", "0.1", "0.2", "0.1"))
print()
print("trace", float(P.eigen.trace), "det", float(P.eigen.det))
print("det / lambda1 =", float(P.eigen.det) / P.eigen.lambda1.real)
