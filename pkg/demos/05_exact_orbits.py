"""Exact orbits and the certificate that they never reach the edge.

Fractions double their size every generation, so fifty exact steps would
need numbers with ~10^15 digits.  The certificate instead tracks the
integer gaps 1 - x, 1 - y modulo a few large primes: a nonzero residue
proves the exact gap is nonzero.
"""
import time
from fractions import Fraction

from dioecy import FitnessParams, certify_orbit_avoids_one, iterate

p = FitnessParams(3, 1, 10, 2, 1, 10)
z = (Fraction(1, 3), Fraction(5, 7))

traj = iterate(p, z, max_iter=8)
for k, (x, y) in enumerate(traj.states):
    print(k, f"x has {x.denominator.bit_length():5d}-bit denominator", f"{float(x):.6f} {float(y):.6f}")

for n, method in [(10, "fraction"), (50, "modular")]:
    t = time.perf_counter()
    cert = certify_orbit_avoids_one(p, z, n, method=method)
    print(f"{n} steps by {method}: certified={cert.certified} in {time.perf_counter() - t:.3f} s")

# Starting on the edge the orbit jumps straight to (1, 1), so both
# coordinates must start below 1.
print(iterate(p, (Fraction(1), Fraction(1, 2)), max_iter=3).states)
