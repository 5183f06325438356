"""The derivative of the dihedral angles with respect to the edge lengths.

The raw Jacobian has no visible structure. Divided by sin(a_ij) sin(a_rs) it
becomes symmetric, and it satisfies further relations between entries on
adjacent, opposite and complementary edges. The inverse Jacobian, divided by
the curvature-dependent sines of the lengths, has the mirror-image relations.
"""

import numpy as np

from schlaefli import (SweepConfig, TetraLengths, jacobian_analytic, jacobian_fd, p_matrix,
                       r_matrix, random_tetrahedron, sweep, verify_angle_identities,
                       verify_length_identities)

np.set_printoptions(precision=4, suppress=True, linewidth=100)

x = random_tetrahedron("hyperbolic", seed=5)
print("lengths", x.to_dict())

jac = jacobian_analytic(x)
print("\nJacobian d a / d x (rows and columns 12 13 14 23 24 34):")
print(jac.matrix)
print("asymmetry of J:", np.abs(jac.matrix - jac.matrix.T).max())

p = p_matrix(x, jac)
print("asymmetry of P:", np.abs(p.matrix - p.matrix.T).max())

fd = jacobian_fd(x, 1e-5)
print("analytic vs central differences:", np.abs(jac.matrix - fd.matrix).max())

print()
print(verify_angle_identities(x).table())
print()
print(verify_length_identities(x).table())
print("\ncondition number of J:", r_matrix(x, jac).condition)

# the regular Euclidean tetrahedron: dead zero under scaling, and sqrt(2) off the diagonal
regular = TetraLengths(np.ones(6), "euclidean")
jr = jacobian_analytic(regular).matrix
print("\nregular Euclidean: J[12, 34] =", jr[0, 5], " J @ x =", jr @ np.ones(6))

print("\nsweep over 500 random spherical tetrahedra:")
print(sweep(SweepConfig("spherical", samples=500), "lengths").table())
