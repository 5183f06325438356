"""Triangles in the model planes of curvature +1, 0 and -1.

Everything here works on plain floats and, for the underscore-free array
helpers, on numpy arrays of any broadcastable shape. Indices are 1-based to
match the usual labelling of a triangle's sides ``l1, l2, l3`` and of the
opposite angles ``a1, a2, a3``.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import InvalidTriangle, NearDegenerate


class Geometry(enum.IntEnum):
    """Curvature of the ambient space."""

    SPHERICAL = 1
    EUCLIDEAN = 0
    HYPERBOLIC = -1

    @property
    def curvature(self):
        return int(self)

    @classmethod
    def coerce(cls, value):
        """Accept a Geometry, a curvature integer or a name such as ``"hyperbolic"``."""
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            try:
                return cls[value.strip().upper()]
            except KeyError:
                raise ValueError(f"unknown geometry {value!r}") from None
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return cls(int(value))
        raise ValueError(f"unknown geometry {value!r}")


def s_lambda(t, g):
    """``t``, ``sin t`` or ``sinh t`` for curvature 0, +1, -1."""
    g = Geometry.coerce(g)
    if g is Geometry.SPHERICAL:
        return np.sin(t) if isinstance(t, np.ndarray) else math.sin(t)
    if g is Geometry.HYPERBOLIC:
        return np.sinh(t) if isinstance(t, np.ndarray) else math.sinh(t)
    return t


def c_lambda(t, g):
    """Cosine companion of :func:`s_lambda`: ``1``, ``cos t`` or ``cosh t``.

    For curvature +-1 it satisfies ``lam * s_lambda(t)**2 + c_lambda(t)**2 == 1``.
    """
    g = Geometry.coerce(g)
    if g is Geometry.SPHERICAL:
        return np.cos(t) if isinstance(t, np.ndarray) else math.cos(t)
    if g is Geometry.HYPERBOLIC:
        return np.cosh(t) if isinstance(t, np.ndarray) else math.cosh(t)
    return np.ones_like(t) if isinstance(t, np.ndarray) else 1.0


def angle_opposite(l1, l2, l3, g):
    """Angle opposite ``l1`` in a triangle with sides ``l1, l2, l3`` (arrays allowed).

    Uses the half-angle tangent form of the cosine law,
    ``tan(a1/2)**2 = S(s-l2) S(s-l3) / (S(s) S(s-l1))`` with ``s`` the
    semi-perimeter, which keeps full relative accuracy for tiny triangles where
    the textbook ``arccos`` form cancels catastrophically. Inputs are assumed
    valid; see :func:`check_lengths`.
    """
    s = 0.5 * (l1 + l2 + l3)
    num = s_lambda(s - l2, g) * s_lambda(s - l3, g)
    den = s_lambda(s, g) * s_lambda(s - l1, g)
    return 2.0 * np.arctan2(np.sqrt(num), np.sqrt(den))


def cosine_law_cos(l1, l2, l3, g):
    """``cos a1`` straight from the cosine law; used as an independent check."""
    g = Geometry.coerce(g)
    if g is Geometry.SPHERICAL:
        return (np.cos(l1) - np.cos(l2) * np.cos(l3)) / (np.sin(l2) * np.sin(l3))
    if g is Geometry.HYPERBOLIC:
        return (np.cosh(l2) * np.cosh(l3) - np.cosh(l1)) / (np.sinh(l2) * np.sinh(l3))
    return (l2 * l2 + l3 * l3 - l1 * l1) / (2.0 * l2 * l3)


def triangle_violation(l1, l2, l3, g):
    """Return a message describing the first failed condition, or ``None``."""
    g = Geometry.coerce(g)
    lengths = (l1, l2, l3)
    for n, value in enumerate(lengths, 1):
        if not math.isfinite(value) or value <= 0.0:
            return f"length l{n}={value!r} is not a positive finite number"
    if g is Geometry.SPHERICAL:
        for n, value in enumerate(lengths, 1):
            if value >= math.pi:
                return f"spherical length l{n}={value!r} is not below pi"
        perimeter = l1 + l2 + l3
        if perimeter >= 2.0 * math.pi:
            return f"spherical perimeter {perimeter!r} is not below 2*pi"
    for n in range(3):
        a, b, c = lengths[n], lengths[(n + 1) % 3], lengths[(n + 2) % 3]
        if a >= b + c:
            return (f"triangle inequality fails: l{n + 1}={a!r} >= "
                    f"l{(n + 1) % 3 + 1}+l{(n + 2) % 3 + 1}={b + c!r}")
    return None


def check_lengths(l1, l2, l3, g):
    """Raise :class:`InvalidTriangle` unless the three lengths form a triangle in ``g``."""
    problem = triangle_violation(l1, l2, l3, g)
    if problem is not None:
        raise InvalidTriangle(problem)


@dataclass(frozen=True)
class TriangleData:
    """Side lengths and opposite angles of a triangle; ``angles[n]`` faces ``lengths[n]``."""

    lengths: tuple
    angles: tuple
    geometry: Geometry

    def sine_law_residual(self):
        """Largest relative mismatch ``|S(l_i) sin a_j - S(l_j) sin a_i|`` over pairs."""
        g = self.geometry
        sl = [s_lambda(l, g) for l in self.lengths]
        sa = [math.sin(a) for a in self.angles]
        worst = 0.0
        for i in range(3):
            for j in range(i + 1, 3):
                scale = max(abs(sl[i] * sa[j]), abs(sl[j] * sa[i]))
                worst = max(worst, abs(sl[i] * sa[j] - sl[j] * sa[i]) / scale)
        return worst


def solve_angles(l1, l2, l3, g, tol=DEFAULT_TOLERANCES):
    """Solve a triangle from its three sides.

    Parameters
    ----------
    l1, l2, l3 : float
        Geodesic side lengths (radians on the unit sphere).
    g : Geometry or int or str
        Curvature of the plane the triangle lives in.
    tol : Tolerances, optional
        Supplies the degeneracy guard.

    Returns
    -------
    TriangleData

    Raises
    ------
    InvalidTriangle
        If the sides violate a strict triangle inequality, positivity, or
        (on the sphere) the ``l < pi`` and ``perimeter < 2 pi`` bounds.
    NearDegenerate
        If an angle falls within ``tol.degenerate_angle`` of 0 or pi.
    """
    g = Geometry.coerce(g)
    l1, l2, l3 = float(l1), float(l2), float(l3)
    check_lengths(l1, l2, l3, g)
    angles = (
        float(angle_opposite(l1, l2, l3, g)),
        float(angle_opposite(l2, l3, l1, g)),
        float(angle_opposite(l3, l1, l2, g)),
    )
    for n, a in enumerate(angles, 1):
        if a < tol.degenerate_angle or a > math.pi - tol.degenerate_angle:
            raise NearDegenerate(f"angle a{n}={a!r} is within {tol.degenerate_angle} of 0 or pi "
                                 f"for lengths {(l1, l2, l3)}")
    return TriangleData((l1, l2, l3), angles, g)


def a_invariant(t, index=1):
    """``sin(a_i) S(l_j) S(l_k)``; the same number for every choice of ``index``."""
    i = index - 1
    j, k = (i + 1) % 3, (i + 2) % 3
    g = t.geometry
    return math.sin(t.angles[i]) * s_lambda(t.lengths[j], g) * s_lambda(t.lengths[k], g)


def dangle_dlength(t, i, j, tol=DEFAULT_TOLERANCES):
    """Analytic partial derivative of angle ``a_i`` with respect to side ``l_j``.

    ``d a_i / d l_i = S(l_i) / A`` and, for ``j != i``,
    ``d a_i / d l_j = -(d a_i / d l_i) cos(a_k)`` with ``k`` the third index.
    """
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"indices must be 1, 2 or 3, got {(i, j)}")
    area = a_invariant(t)
    if area < tol.min_invariant:
        raise NearDegenerate(f"A-invariant {area!r} below {tol.min_invariant}")
    diag = s_lambda(t.lengths[i - 1], t.geometry) / area
    if i == j:
        return diag
    k = 6 - i - j
    return -diag * math.cos(t.angles[k - 1])
