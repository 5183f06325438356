"""Volumes from angles alone.

In curved space the volume changes with the dihedral angles at the rate
(lambda / 2) x_ij. Integrating that along the path that shrinks the
tetrahedron to a point gives its volume without any coordinates.
"""

import math

import numpy as np

from schlaefli import (TetraLengths, euclidean_volume_cm, volume_gradient_check,
                       volume_schlaefli, volume_two_segment)

orthant = TetraLengths(np.full(6, math.pi / 2), "spherical")
print("orthant of S^3 (one sixteenth of 2 pi^2):", math.pi ** 2 / 8)
for n in (64, 256, 1024, 4096):
    r = volume_schlaefli(orthant, n)
    print(f"  n={n:<5} V={r.value:.12f}  error estimate {r.error_estimate:.2e}  "
          f"extrapolated {r.extrapolated:.12f}")

print("\nsmall regular tetrahedra against the flat Cayley-Menger volume:")
for eps in (0.4, 0.2, 0.1, 0.05):
    flat = euclidean_volume_cm(TetraLengths(np.full(6, eps), "euclidean"))
    sph = volume_schlaefli(TetraLengths(np.full(6, eps), "spherical")).value
    hyp = volume_schlaefli(TetraLengths(np.full(6, eps), "hyperbolic")).value
    print(f"  eps={eps:<5} spherical {sph / flat - 1:+.5%}   hyperbolic {hyp / flat - 1:+.5%}")

x = TetraLengths([0.9, 1.0, 0.8, 1.1, 0.85, 0.95], "hyperbolic")
check = volume_gradient_check(x, 1e-4)
print("\nmove one edge by h = 1e-4 and compare dV with -(1/2) sum x da:")
for key, r, p in zip(("12", "13", "14", "23", "24", "34"), check.residuals, check.predicted):
    print(f"  edge {key}: mismatch {r:+.3e}, expected second-order term {p:+.3e}")

via = x.array * np.array([1.1, 0.9, 1.0, 1.05, 0.95, 1.0])
print("\nanother path to the same tetrahedron:",
      volume_two_segment(x, via), "vs", volume_schlaefli(x).extrapolated)
