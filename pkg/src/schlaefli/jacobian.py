"""Jacobian of the curvature map and its normalized forms.

``J[ij, rs] = d a_ij / d x_rs`` with rows and columns in canonical edge order.
Two assembly modes exist:

``"direct"``
    every entry from its own chain rule through a vertex link (default; the
    identity checks rely on it being independent of the identities).
``"minimal"``
    only the three opposite-edge entries from the chain rule, the rest filled
    in from the adjacency and diagonal identities.
"""

import io
import math
from dataclasses import dataclass

import numpy as np

from . import _kernel
from ._kernel import EDGE_KEYS, edge, others
from .config import DEFAULT_TOLERANCES
from .errors import InvalidTetrahedron, NearDegenerate, SingularJacobian, WrongGeometry
from .tetra import TetraLengths, curvature_map, edge_index, is_valid
from .triangle import Geometry, c_lambda, s_lambda


@dataclass(frozen=True)
class EdgeMatrix:
    """A 6x6 matrix indexed by edges, tagged with its geometry."""

    matrix: np.ndarray
    geometry: Geometry

    def __getitem__(self, key):
        row, col = key
        return float(self.matrix[edge_index(row), edge_index(col)])

    def to_json(self):
        return {
            "geometry": self.geometry.name.lower(),
            "edges": list(EDGE_KEYS),
            "matrix": [[float(v) for v in row] for row in self.matrix],
        }

    def to_csv(self):
        buf = io.StringIO()
        buf.write("," + ",".join(EDGE_KEYS) + "\n")
        for key, row in zip(EDGE_KEYS, self.matrix):
            buf.write(key + "," + ",".join(f"{v:.17g}" for v in row) + "\n")
        return buf.getvalue()


class JacobianMatrix(EdgeMatrix):
    """``d a_ij / d x_rs``."""


class PMatrix(EdgeMatrix):
    """Jacobian scaled by ``1 / (sin a_ij sin a_rs)``; symmetric."""


@dataclass(frozen=True)
class RMatrix(EdgeMatrix):
    """Inverse Jacobian scaled by ``lam / (S(x_ij) S(x_rs))``; symmetric.

    ``condition`` is the 2-norm condition number of the Jacobian that was inverted.
    """

    condition: float = math.nan

    def to_json(self):
        out = super().to_json()
        out["condition"] = self.condition
        return out


def _require_valid(x, tol):
    report = is_valid(x.values, x.geometry, tol)
    if not report:
        raise InvalidTetrahedron(f"{report.stage}: {report.reason}")


def _require_curved(x, what):
    if x.geometry is Geometry.EUCLIDEAN:
        raise WrongGeometry(f"{what} requires curved geometry (spherical or hyperbolic)")


def jacobian_analytic(x, mode="direct", tol=DEFAULT_TOLERANCES):
    """Analytic Jacobian of the curvature map at ``x``.

    Raises
    ------
    InvalidTetrahedron
        ``x`` does not bound a tetrahedron.
    NearDegenerate
        Some face or link A-invariant is below ``tol.min_invariant``.
    """
    _require_valid(x, tol)
    frame = _kernel.Frame(x.array, x.geometry)
    smallest = float(frame.min_invariant())
    if smallest < tol.min_invariant:
        raise NearDegenerate(f"smallest A-invariant {smallest:.3e} below {tol.min_invariant}")
    if mode == "direct":
        jac = _kernel.jacobian_direct(frame)
    elif mode == "minimal":
        jac = _kernel.jacobian_minimal(frame)
    else:
        raise ValueError(f"unknown Jacobian mode {mode!r}; expected 'direct' or 'minimal'")
    return JacobianMatrix(jac, x.geometry)


def jacobian_fd(x, h=1e-5, tol=DEFAULT_TOLERANCES):
    """Central-difference Jacobian of :func:`~schlaefli.tetra.curvature_map`.

    Every perturbed configuration ``x +- h e_rs`` must itself be valid; if not,
    shrink ``h``.
    """
    _require_valid(x, tol)
    base = x.array
    for n in range(6):
        for sign in (1.0, -1.0):
            moved = base.copy()
            moved[n] += sign * h
            report = is_valid(moved, x.geometry, tol)
            if not report:
                raise InvalidTetrahedron(
                    f"perturbation {sign * h:+g} of x_{EDGE_KEYS[n]} leaves the valid region "
                    f"({report.stage}: {report.reason})")
    return JacobianMatrix(_kernel.jacobian_fd(base, x.geometry, h), x.geometry)


def p_matrix(x, jac=None, tol=DEFAULT_TOLERANCES):
    """Normalized Jacobian ``P[ij, rs] = J[ij, rs] / (sin a_ij sin a_rs)``."""
    if jac is None:
        jac = jacobian_analytic(x, tol=tol)
    sines = np.sin(curvature_map(x, tol).array)
    if sines.min() < tol.min_invariant:
        raise NearDegenerate(f"sin of a dihedral angle is {sines.min():.3e}")
    return PMatrix(jac.matrix / np.outer(sines, sines), x.geometry)


def _w_numerator_angles(c, i, j):
    k, l = others(i, j)
    return (c(i, j) * c(j, k) * c(k, i) + c(i, j) * c(j, l) * c(l, i)
            + c(i, k) * c(j, l) + c(i, l) * c(j, k))


def w_angle(a, e, tol=DEFAULT_TOLERANCES):
    """Ratio ``P[ij, ij] / P[ij, kl]`` predicted from the dihedral angles alone.

    ``(c_ij c_jk c_ki + c_ij c_jl c_li + c_ik c_jl + c_il c_jk) / sin^2 a_ij``
    with ``c_rs = cos a_rs``.
    """
    i, j = _pair(e)
    cosines = np.cos(a.array)
    sine = math.sin(a[(i, j)])
    if sine < tol.min_invariant:
        raise NearDegenerate(f"sin a_{i}{j} = {sine:.3e}")
    num = _w_numerator_angles(lambda p, q: cosines[edge(p, q)], i, j)
    return float(num / sine ** 2)


def r_matrix(x, jac=None, tol=DEFAULT_TOLERANCES):
    """Normalized inverse Jacobian for curvature +-1.

    ``R[ij, rs] = lam / (S(x_ij) S(x_rs)) * d x_ij / d a_rs``. For the sphere
    this is ``1 / (sin x_ij sin x_rs)``; for hyperbolic space it is the real
    form of ``1 / (sin(i x_ij) sin(i x_rs)) = -1 / (sinh x_ij sinh x_rs)``.
    """
    _require_curved(x, "R-matrix")
    if jac is None:
        jac = jacobian_analytic(x, tol=tol)
    cond = float(np.linalg.cond(jac.matrix))
    if not np.isfinite(cond) or cond > tol.max_condition:
        raise SingularJacobian(f"Jacobian condition number {cond:.3e} exceeds "
                               f"{tol.max_condition:.1e}", cond)
    inverse = np.linalg.inv(jac.matrix)
    s = s_lambda(x.array, x.geometry)
    return RMatrix(x.geometry.curvature * inverse / np.outer(s, s), x.geometry, cond)


def _w_numerator_lengths(c, i, j):
    k, l = others(i, j)
    return (-c(i, j) * c(i, k) * c(i, l) - c(j, i) * c(j, k) * c(j, l)
            + c(i, k) * c(j, l) + c(i, l) * c(j, k))


def w_length(x, e, tol=DEFAULT_TOLERANCES):
    """Ratio ``R[ij, ij] / R[ij, kl]`` predicted from the edge lengths alone.

    Numerator ``-c_ij c_ik c_il - c_ij c_jk c_jl + c_ik c_jl + c_il c_jk`` with
    ``c_rs = C(x_rs)`` (``cos`` or ``cosh``), denominator ``lam * S(x_ij)**2``.
    """
    _require_curved(x, "w_length")
    i, j = _pair(e)
    cosines = c_lambda(x.array, x.geometry)
    s = s_lambda(x[(i, j)], x.geometry)
    if abs(s) < tol.min_invariant:
        raise NearDegenerate(f"S(x_{i}{j}) = {s:.3e}")
    num = _w_numerator_lengths(lambda p, q: cosines[edge(p, q)], i, j)
    return float(num / (x.geometry.curvature * s * s))


def _pair(e):
    n = edge_index(e)
    return _kernel.EDGES[n]
