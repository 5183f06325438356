"""The form sum x_ij da_ij has no curl.

Symmetry of the normalized Jacobian is the statement that the 1-form
sum x_ij da_ij is closed. Around any loop in length space it integrates to
zero, so the volume integral does not depend on the path.
"""

from schlaefli import one_form_loop_residual, random_tetrahedron

for g in ("spherical", "euclidean", "hyperbolic"):
    x0 = random_tetrahedron(g, seed=9)
    print(g)
    for plane in (("12", "34"), ("13", "24"), ("12", "13")):
        values = [one_form_loop_residual(x0, r, plane, 256) for r in (0.04, 0.02, 0.01)]
        print(f"  loop in the {plane} plane, radii 0.04 0.02 0.01:",
              "  ".join(f"{v:.1e}" for v in values))

# For an exactly closed form the trapezoid sum around a circle cancels at
# every order in the radius, so what remains is floating-point round-off.
