"""Polar duality of spherical tetrahedra.

Swap the roles of lengths and angles, each replaced by its supplement, and
move everything to the opposite edge: the result is again a spherical
tetrahedron and doing it twice returns the original.
"""

import math

import numpy as np

from schlaefli import TetraLengths, curvature_map, dual, random_tetrahedron

x = random_tetrahedron("spherical", seed=3)
a = curvature_map(x)
dx, da = dual(x, a)
print("lengths      ", np.round(x.array, 6))
print("angles       ", np.round(a.array, 6))
print("dual lengths ", np.round(dx.array, 6))
print("dual angles  ", np.round(da.array, 6))
print("angles recomputed from the dual lengths differ by",
      np.abs(curvature_map(dx).array - da.array).max())

ddx, dda = dual(dx, da)
print("dual of the dual differs from the original by", np.abs(ddx.array - x.array).max())

orthant = TetraLengths(np.full(6, math.pi / 2), "spherical")
print("the orthant is its own dual:", dual(orthant)[0].array)
