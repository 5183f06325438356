"""From six edge lengths to six dihedral angles.

Each dihedral angle is an angle of a small spherical triangle, the link of a
vertex, whose sides are the face angles at that vertex. Every edge has two
endpoints and both links must report the same angle.
"""

import math

import numpy as np

from schlaefli import (TetraLengths, curvature_map, is_valid, relabel, vertex_link)

regular = TetraLengths(np.ones(6), "euclidean")
print("regular Euclidean tetrahedron:")
print("  dihedral angles", curvature_map(regular).to_dict())
print("  arccos(1/3)    ", math.acos(1 / 3))

link = vertex_link(regular, 1)
print("  link of vertex 1: sides", link.triangle.lengths, "angles", link.triangle.angles)

print("\nthe same lengths in the three geometries:")
for g in ("spherical", "euclidean", "hyperbolic"):
    print(f"  {g:<10} a_12 = {curvature_map(TetraLengths(np.ones(6), g))['12']:.10f}")

orthant = TetraLengths(np.full(6, math.pi / 2), "spherical")
print("\nthe orthant of S^3 has every angle pi/2:", curvature_map(orthant).array)

print("\nvalidity is decided face by face, then link by link:")
for values, g in (([1, 1, 1, 1, 1, 10], "euclidean"),
                  ([1, 1, 1, 1, 1, 1.9], "euclidean"),
                  ([2 * math.pi / 3] * 6, "spherical")):
    report = is_valid(values, g)
    print(f"  {values} ({g}): {report.stage}: {report.reason}")

# relabelling the vertices only relabels the answer
x = TetraLengths([0.6, 0.8, 1.0, 0.9, 1.1, 0.7], "hyperbolic")
perm = {1: 3, 2: 1, 3: 4, 4: 2}
lhs = curvature_map(relabel(x, perm)).array
rhs = relabel(curvature_map(x), perm).array
print("\nrelabel then solve vs solve then relabel:", np.abs(lhs - rhs).max())
