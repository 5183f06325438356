"""Tetrahedra described by their six edge lengths.

Vertices are labelled 1..4 and an edge ``{i, j}`` is addressed either as a
pair ``(i, j)`` or as the two-character key ``"ij"``. Six-vectors and 6x6
matrices always use the canonical order ``12, 13, 14, 23, 24, 34``.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernel
from ._kernel import EDGE_KEYS, EDGES, OPPOSITE, edge, others
from .config import DEFAULT_TOLERANCES
from .errors import (InvalidLink, InvalidTetrahedron, InvalidTriangle, NearDegenerate,
                     WrongGeometry)
from .triangle import Geometry, TriangleData, solve_angles, triangle_violation

__all__ = [
    "EDGES", "EDGE_KEYS", "edge_index", "complement",
    "TetraLengths", "TetraAngles", "VertexLink", "ValidityReport",
    "face_angle", "vertex_link", "curvature_map", "is_valid", "dual", "relabel",
]


def edge_index(e):
    """Canonical position of an edge given as ``(i, j)`` or ``"ij"``."""
    if isinstance(e, str):
        if len(e) != 2 or not e.isdigit():
            raise ValueError(f"edge key must look like '12', got {e!r}")
        e = (int(e[0]), int(e[1]))
    return edge(*e)


def complement(e):
    """The opposite edge: ``{i, j}`` maps to ``{1, 2, 3, 4} - {i, j}``."""
    return EDGES[OPPOSITE[edge_index(e)]]


def _six(values):
    arr = np.asarray(values, dtype=float)
    if arr.shape != (6,):
        raise ValueError(f"expected 6 values in edge order {EDGE_KEYS}, got shape {arr.shape}")
    return tuple(float(v) for v in arr)


class _EdgeVector:
    values: tuple

    @property
    def array(self):
        return np.array(self.values)

    def __getitem__(self, e):
        return self.values[edge_index(e)]

    def to_dict(self):
        return dict(zip(EDGE_KEYS, self.values))


@dataclass(frozen=True)
class TetraLengths(_EdgeVector):
    """Edge lengths ``x_ij`` of a tetrahedron in a constant-curvature 3-space.

    Construction only checks shape; realizability is the business of
    :func:`is_valid` and is enforced by every computation that needs it.
    """

    values: tuple
    geometry: Geometry

    def __init__(self, values, geometry):
        object.__setattr__(self, "values", _six(values))
        object.__setattr__(self, "geometry", Geometry.coerce(geometry))

    @classmethod
    def from_dict(cls, data):
        """Parse ``{"geometry": ..., "lengths": {"12": ..., ..., "34": ...}}``.

        Raises ``KeyError`` naming the first missing key.
        """
        if "geometry" not in data:
            raise KeyError("geometry")
        if "lengths" not in data:
            raise KeyError("lengths")
        lengths = data["lengths"]
        if not isinstance(lengths, dict):
            raise ValueError("'lengths' must be an object keyed by edge, e.g. {\"12\": 1.0}")
        missing = [key for key in EDGE_KEYS if key not in lengths]
        if missing:
            raise KeyError(f"lengths.{missing[0]}")
        return cls([float(lengths[key]) for key in EDGE_KEYS], data["geometry"])

    def to_json(self):
        return {"geometry": self.geometry.name.lower(), "lengths": self.to_dict()}

    def scaled(self, factor):
        return TetraLengths(self.array * factor, self.geometry)


@dataclass(frozen=True)
class TetraAngles(_EdgeVector):
    """Dihedral angles ``a_ij`` in canonical edge order."""

    values: tuple

    def __init__(self, values):
        object.__setattr__(self, "values", _six(values))


@dataclass(frozen=True)
class VertexLink:
    """Spherical link of one vertex.

    ``triangle.angles[n]`` is the dihedral angle along the edge from ``vertex``
    to ``neighbours[n]``; ``triangle.lengths[n]`` is the opposite link side,
    i.e. the face angle at ``vertex`` between the two other neighbours.
    """

    vertex: int
    neighbours: tuple
    triangle: TriangleData

    def angle(self, p):
        """Dihedral angle along edge ``{vertex, p}``."""
        return self.triangle.angles[self.neighbours.index(p)]

    def side(self, p, q):
        """Face angle at ``vertex`` in the face ``{vertex, p, q}``."""
        (r,) = (n for n in self.neighbours if n not in (p, q))
        return self.triangle.lengths[self.neighbours.index(r)]


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    stage: str = None
    reason: str = None

    def __bool__(self):
        return self.valid


def _face_lengths(x, i, j, k):
    """Sides of face ``ijk`` ordered opposite to vertices ``i, j, k``."""
    return x[(j, k)], x[(i, k)], x[(i, j)]


def face_angle(x, i, j, k, tol=DEFAULT_TOLERANCES):
    """Inner angle at vertex ``i`` of face ``{i, j, k}``."""
    if len({i, j, k}) != 3:
        raise ValueError(f"vertices must be distinct, got {(i, j, k)}")
    try:
        return solve_angles(*_face_lengths(x, i, j, k), x.geometry, tol).angles[0]
    except (InvalidTriangle, NearDegenerate) as exc:
        raise type(exc)(f"face {''.join(map(str, sorted((i, j, k))))}: {exc}") from None


def vertex_link(x, k, tol=DEFAULT_TOLERANCES):
    """Spherical triangle of directions at vertex ``k``.

    Raises
    ------
    InvalidTriangle
        A face through ``k`` is not a triangle.
    InvalidLink
        The three face angles at ``k`` do not bound a spherical triangle, so the
        six lengths do not bound a tetrahedron.
    """
    neighbours = others(k)
    sides = []
    for p in neighbours:
        q, r = (n for n in neighbours if n != p)
        sides.append(face_angle(x, k, q, r, tol))
    try:
        tri = solve_angles(*sides, Geometry.SPHERICAL, tol)
    except (InvalidTriangle, NearDegenerate) as exc:
        raise InvalidLink(f"link of vertex {k}: {exc}") from None
    return VertexLink(k, neighbours, tri)


def is_valid(values, g, tol=DEFAULT_TOLERANCES):
    """Decide whether six lengths bound a non-degenerate tetrahedron in geometry ``g``.

    Conditions are checked in order: finiteness and positivity, the spherical
    bound ``x < pi``, the four faces, the four vertex links. The first failure
    is reported; nothing is raised.
    """
    g = Geometry.coerce(g)
    try:
        x = TetraLengths(values, g)
    except (TypeError, ValueError) as exc:
        return ValidityReport(False, "shape", str(exc))
    for key, value in zip(EDGE_KEYS, x.values):
        if not math.isfinite(value) or value <= 0.0:
            return ValidityReport(False, "positivity", f"x_{key}={value!r} is not positive")
    if g is Geometry.SPHERICAL:
        for key, value in zip(EDGE_KEYS, x.values):
            if value >= math.pi:
                return ValidityReport(False, "spherical_bound", f"x_{key}={value!r} is not below pi")
    for face in itertools.combinations((1, 2, 3, 4), 3):
        problem = triangle_violation(*_face_lengths(x, *face), g)
        if problem is not None:
            return ValidityReport(False, "face", f"face {''.join(map(str, face))}: {problem}")
    for v in (1, 2, 3, 4):
        try:
            vertex_link(x, v, tol)
        except NearDegenerate as exc:
            return ValidityReport(False, "degenerate", str(exc))
        except InvalidLink as exc:
            return ValidityReport(False, "link", str(exc))
    return ValidityReport(True)


def curvature_map(x, tol=DEFAULT_TOLERANCES):
    """Dihedral angles of the tetrahedron with edge lengths ``x``.

    Each ``a_ij`` is read off the link of ``v_i`` and must agree with the
    value read off the link of ``v_j`` to ``tol.link_consistency``.
    """
    report = is_valid(x.values, x.geometry, tol)
    if not report:
        raise InvalidTetrahedron(f"{report.stage}: {report.reason}")
    frame = _kernel.Frame(x.array, x.geometry)
    gap = np.abs(frame.angles - frame.angles_alt)
    if gap.max() > tol.link_consistency:
        worst = EDGE_KEYS[int(gap.argmax())]
        raise NearDegenerate(f"links disagree on a_{worst} by {gap.max():.3e}")
    return TetraAngles(frame.angles)


def dual(x, a=None, tol=DEFAULT_TOLERANCES):
    """Polar dual of a spherical tetrahedron.

    The dual edge complementary to ``{i, j}`` has length ``pi - a_ij`` and
    dihedral angle ``pi - x_ij``.

    Returns
    -------
    (TetraLengths, TetraAngles)
    """
    if x.geometry is not Geometry.SPHERICAL:
        raise WrongGeometry("duality is defined for spherical tetrahedra only")
    if a is None:
        a = curvature_map(x, tol)
    dual_x = np.empty(6)
    dual_a = np.empty(6)
    for n in range(6):
        dual_x[OPPOSITE[n]] = math.pi - a.values[n]
        dual_a[OPPOSITE[n]] = math.pi - x.values[n]
    report = is_valid(dual_x, Geometry.SPHERICAL, tol)
    if not report:
        raise InvalidTetrahedron(f"dual lengths invalid: {report.stage}: {report.reason}")
    return TetraLengths(dual_x, Geometry.SPHERICAL), TetraAngles(dual_a)


def relabel(x, perm):
    """Rename vertex ``v`` as ``perm[v]`` (``perm`` maps 1..4 onto 1..4)."""
    if sorted(perm[v] for v in (1, 2, 3, 4)) != [1, 2, 3, 4]:
        raise ValueError(f"{perm!r} is not a permutation of the vertices")
    values = np.empty(6)
    for n, (i, j) in enumerate(EDGES):
        values[edge(perm[i], perm[j])] = x.values[n]
    if isinstance(x, TetraLengths):
        return TetraLengths(values, x.geometry)
    return TetraAngles(values)
