"""Equal fitnesses in both sexes.

With the same viabilities for males and females, one generation puts every
orbit on the diagonal.  After that the fate is decided by a single number,
the male frequency after one step, compared with the threshold
x* = (c - 2b) / (a - 2b + c) when c > 2b.
"""
from fractions import Fraction

from dioecy import FitnessParams, SymmetricCase, iterate, male_update, predict_symmetric_limit

for fit in [(1, 1, 1, 1, 1, 1), (1, 1, 4, 1, 1, 4)]:
    p = FitnessParams(*(float(v) for v in fit))
    case = SymmetricCase.from_params(p)
    print(fit, case.regime.value, "threshold", case.x_star)
    for z in [(0.1, 0.1), (0.3, 0.9), (0.5, 0.5), (0.9, 0.2), (0.0, 0.0)]:
        traj = iterate(p, z)
        guess = predict_symmetric_limit(case, z)
        print(f"   start {z}: first step x = {male_update(p, z):.4f}"
              f"  predicted {tuple(guess)}  iterated {traj.verdict} after {traj.steps_used} steps")

# Orbits on the separatrix sit at the threshold forever, when computed exactly.
p = FitnessParams(1, 1, 4, 1, 1, 4)
print()
print("exact orbit from (2/3, 2/3):", iterate(p, (Fraction(2, 3), Fraction(2, 3))).verdict)
