"""Solving geodesic triangles on the sphere, the plane and the hyperbolic plane.

The same three side lengths give three different triangles depending on the
curvature. Angle sums sit above, on, or below pi, and all three agree once
the triangle is small.
"""

import math

from schlaefli import Geometry, a_invariant, dangle_dlength, solve_angles

sides = (0.7, 0.9, 1.1)

print("sides", sides)
for g in Geometry:
    tri = solve_angles(*sides, g)
    excess = sum(tri.angles) - math.pi
    print(f"  {g.name.lower():<10} angles {[round(a, 6) for a in tri.angles]}  "
          f"sum - pi = {excess:+.6f}")

# the A-invariant is the sine law in disguise: the same for every corner
tri = solve_angles(*sides, Geometry.HYPERBOLIC)
print("\nA-invariant of the hyperbolic triangle at each corner:",
      [round(a_invariant(tri, k), 12) for k in (1, 2, 3)])

# how the angles move when a side grows
print("\nd(angle_i)/d(side_j), spherical:")
tri = solve_angles(*sides, Geometry.SPHERICAL)
for i in (1, 2, 3):
    print("  ", [f"{dangle_dlength(tri, i, j):+.5f}" for j in (1, 2, 3)])

# shrink the triangle: the curved answers converge to the flat one at rate eps^2
flat = solve_angles(*sides, Geometry.EUCLIDEAN).angles
print("\nflat limit (max angle difference from the Euclidean triangle):")
for eps in (0.4, 0.2, 0.1, 0.05):
    curved = solve_angles(*(eps * s for s in sides), Geometry.SPHERICAL).angles
    print(f"  eps={eps:<5} {max(abs(c - f) for c, f in zip(curved, flat)):.3e}")
