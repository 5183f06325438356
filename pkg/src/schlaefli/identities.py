"""Residual checks for the symmetries of the normalized Jacobians.

Two families are checked. For ``P`` (the angle-side matrix, every geometry):

=================  ===============================================
``symmetry``       ``P[ij, rs] == P[rs, ij]``
``opposite``       ``P[ij, kl] == P[ik, jl] == P[il, jk]``
``adjacent``       ``P[ij, ik] == -P[ij, kl] * cos a_jk``
``diagonal``       ``P[ij, ij] == P[ij, kl] * w_ij`` (angle form)
``complement``     ``P[ij, rs] == P[i'j', r's']`` for ``ij != rs``
=================  ===============================================

For ``R`` (the length-side matrix, curvature +-1 only) the same five names are
used, with ``adjacent`` reading ``R[ij, ik] == R[ij, kl] * C(x_il)`` and the
length form of ``w_ij``; ``inverse`` additionally records
``max |J J^-1 - I|``.

Each residual ``|lhs - rhs|`` is divided by ``max(1, max |M|)`` for the
matrix ``M`` it was computed from: absolute for matrices with entries of order
one, relative to the largest entry otherwise. Near-flat tetrahedra have
normalized entries in the thousands and round-off grows with them. The
``inverse`` residual is absolute. All checks are vectorized over leading batch
axes so the sweep code can reuse them.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from ._kernel import EDGE_KEYS, EDGES, OPPOSITE, VERTICES, edge, others
from .config import DEFAULT_TOLERANCES
from .errors import InvalidTetrahedron, NearDegenerate, WrongGeometry
from .tetra import edge_index, is_valid
from .triangle import Geometry, c_lambda, s_lambda

ANGLE_IDENTITIES = ("symmetry", "opposite", "adjacent", "diagonal", "complement")
LENGTH_IDENTITIES = ANGLE_IDENTITIES + ("inverse",)


def _terms():
    """Index tables shared by both families; built once at import."""
    sym = [(n, m) for n in range(6) for m in range(n + 1, 6)]
    opp_entries = [(n, OPPOSITE[n]) for n in range(6)]
    opp = list(itertools.combinations(range(6), 2))
    adj = []
    for i, j in itertools.permutations(VERTICES, 2):
        for k in others(i, j):
            (l,) = others(i, j, k)
            adj.append((i, j, k, l))
    comp = [(n, m, OPPOSITE[n], OPPOSITE[m]) for n in range(6) for m in range(6) if n != m]
    return sym, opp_entries, opp, adj, comp


_SYM, _OPP_ENTRIES, _OPP, _ADJ, _COMP = _terms()

_LABELS = {
    "symmetry": [f"{EDGE_KEYS[n]},{EDGE_KEYS[m]}" for n, m in _SYM],
    "opposite": [f"{EDGE_KEYS[_OPP_ENTRIES[p][0]]},{EDGE_KEYS[_OPP_ENTRIES[p][1]]}"
                 f"~{EDGE_KEYS[_OPP_ENTRIES[q][0]]},{EDGE_KEYS[_OPP_ENTRIES[q][1]]}"
                 for p, q in _OPP],
    "adjacent": [f"i={i},j={j},k={k}" for i, j, k, _ in _ADJ],
    "diagonal": list(EDGE_KEYS),
    "complement": [f"{EDGE_KEYS[n]},{EDGE_KEYS[m]}" for n, m, _, _ in _COMP],
    "inverse": ["max"],
}


def _common(m):
    """Residuals of the three identities whose form does not depend on the family."""
    sym = np.stack([m[..., n, k] - m[..., k, n] for n, k in _SYM], axis=-1)
    entries = [m[..., n, k] for n, k in _OPP_ENTRIES]
    opp = np.stack([entries[p] - entries[q] for p, q in _OPP], axis=-1)
    comp = np.stack([m[..., n, k] - m[..., n2, k2] for n, k, n2, k2 in _COMP], axis=-1)
    return {"symmetry": np.abs(sym), "opposite": np.abs(opp), "complement": np.abs(comp)}


def angle_residuals(p, cos_a):
    """Per-term residual arrays for the P family.

    Parameters
    ----------
    p : ndarray, shape (..., 6, 6)
    cos_a : ndarray, shape (..., 6)
        Cosines of the dihedral angles.
    """
    out = _common(p)

    def c(a, b):
        return cos_a[..., edge(a, b)]

    adj = [p[..., edge(i, j), edge(i, k)] + p[..., edge(i, j), edge(k, l)] * c(j, k)
           for i, j, k, l in _ADJ]
    out["adjacent"] = np.abs(np.stack(adj, axis=-1))
    sin2 = 1.0 - cos_a ** 2
    diag = []
    for n, (i, j) in enumerate(EDGES):
        w = _w_angle_numerator(c, i, j) / sin2[..., n]
        diag.append(p[..., n, n] - p[..., n, OPPOSITE[n]] * w)
    out["diagonal"] = np.abs(np.stack(diag, axis=-1))
    return {name: out[name] for name in ANGLE_IDENTITIES}


def length_residuals(r, x, g):
    """Per-term residual arrays for the R family (without ``inverse``)."""
    g = Geometry.coerce(g)
    out = _common(r)
    cosines = c_lambda(x, g)
    lam_s2 = g.curvature * s_lambda(x, g) ** 2

    def c(a, b):
        return cosines[..., edge(a, b)]

    adj = [r[..., edge(i, j), edge(i, k)] - r[..., edge(i, j), edge(k, l)] * c(i, l)
           for i, j, k, l in _ADJ]
    out["adjacent"] = np.abs(np.stack(adj, axis=-1))
    diag = []
    for n, (i, j) in enumerate(EDGES):
        w = _w_length_numerator(c, i, j) / lam_s2[..., n]
        diag.append(r[..., n, n] - r[..., n, OPPOSITE[n]] * w)
    out["diagonal"] = np.abs(np.stack(diag, axis=-1))
    return {name: out[name] for name in ANGLE_IDENTITIES}


def _w_angle_numerator(c, i, j):
    k, l = others(i, j)
    return (c(i, j) * c(j, k) * c(k, i) + c(i, j) * c(j, l) * c(l, i)
            + c(i, k) * c(j, l) + c(i, l) * c(j, k))


def _w_length_numerator(c, i, j):
    k, l = others(i, j)
    return (-c(i, j) * c(i, k) * c(i, l) - c(j, i) * c(j, k) * c(j, l)
            + c(i, k) * c(j, l) + c(i, l) * c(j, k))


def _scaled(terms, m):
    scale = np.maximum(1.0, np.abs(m).max(axis=(-1, -2)))[..., None]
    return {name: vals / scale for name, vals in terms.items()}


def batch_residuals(x, g, family):
    """Worst residual per identity for each configuration in a batch.

    Returns ``{name: (values, term_index)}`` where both arrays have the batch
    shape of ``x`` without its last axis.
    """
    g = Geometry.coerce(g)
    x = np.asarray(x, dtype=float)
    frame = _kernel.Frame(x, g)
    jac = _kernel.jacobian_direct(frame)
    if family == "angles":
        p = jac / (frame.sin_a[..., :, None] * frame.sin_a[..., None, :])
        terms = _scaled(angle_residuals(p, frame.cos_a), p)
    elif family == "lengths":
        if g is Geometry.EUCLIDEAN:
            raise WrongGeometry("length-side identities hold only in curved geometry")
        inverse = np.linalg.inv(jac)
        s = s_lambda(x, g)
        r = g.curvature * inverse / (s[..., :, None] * s[..., None, :])
        terms = _scaled(length_residuals(r, x, g), r)
        eye = np.eye(6)
        terms["inverse"] = np.abs(jac @ inverse - eye).max(axis=(-1, -2))[..., None]
    else:
        raise ValueError(f"unknown identity family {family!r}")
    return {name: (vals.max(axis=-1), vals.argmax(axis=-1)) for name, vals in terms.items()}


@dataclass(frozen=True)
class Residual:
    value: float
    where: str
    tolerance: float

    @property
    def passed(self):
        return self.value <= self.tolerance

    def to_json(self):
        return {"max_scaled": self.value, "where": self.where,
                "tolerance": self.tolerance, "pass": self.passed}


@dataclass(frozen=True)
class IdentityReport:
    """Worst residual of every identity in one family, plus sample metadata."""

    family: str
    geometry: Geometry
    residuals: dict
    metadata: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(r.passed for r in self.residuals.values())

    @property
    def max_residual(self):
        return max(r.value for r in self.residuals.values())

    def to_json(self):
        return {
            "family": self.family,
            "geometry": self.geometry.name.lower(),
            "pass": self.passed,
            "residuals": {name: r.to_json() for name, r in self.residuals.items()},
            "metadata": self.metadata,
        }

    def table(self):
        lines = [f"{self.family} identities, {self.geometry.name.lower()}",
                 f"{'identity':<12} {'max residual':>13} {'tolerance':>10}  status  worst term"]
        for name, r in self.residuals.items():
            status = "pass" if r.passed else "FAIL"
            lines.append(f"{name:<12} {r.value:13.3e} {r.tolerance:10.1e}  {status:<6}  {r.where}")
        return "\n".join(lines)


def _single_report(x, family, tol):
    report = is_valid(x.values, x.geometry, tol)
    if not report:
        raise InvalidTetrahedron(f"{report.stage}: {report.reason}")
    frame = _kernel.Frame(x.array, x.geometry)
    if float(frame.min_invariant()) < tol.min_invariant:
        raise NearDegenerate("tetrahedron too close to degenerate for the identity checks")
    worst = batch_residuals(x.array, x.geometry, family)
    residuals = {}
    for name, (value, term) in worst.items():
        limit = tol.inverse if name == "inverse" else (
            tol.identity_p if family == "angles" else tol.identity_r)
        residuals[name] = Residual(float(value), _LABELS[name][int(term)], limit)
    return IdentityReport(family, x.geometry, residuals, {"lengths": x.to_dict()})


def verify_angle_identities(x, tol=DEFAULT_TOLERANCES):
    """Residuals of the five P-matrix identities at one tetrahedron (any geometry)."""
    return _single_report(x, "angles", tol)


def verify_length_identities(x, tol=DEFAULT_TOLERANCES):
    """Residuals of the five R-matrix identities and of ``J J^-1 = I``.

    Raises
    ------
    WrongGeometry
        For Euclidean input: the length-side statements need curvature +-1.
    """
    if x.geometry is Geometry.EUCLIDEAN:
        raise WrongGeometry("length-side identities hold only in spherical and hyperbolic geometry")
    return _single_report(x, "lengths", tol)


def one_form_loop_residual(x0, radius, plane=("12", "34"), n_steps=256, tol=DEFAULT_TOLERANCES):
    """``|sum x_ij da_ij|`` around a small circle in length space.

    The circle is centred at ``x0`` in the coordinate plane spanned by the two
    edges in ``plane``. The integral is approximated by
    ``sum 0.5 (x_n + x_{n+1}) . (a_{n+1} - a_n)`` over ``n_steps`` equally
    spaced points. The form is closed, so the exact value is zero; on a
    smooth periodic loop the equispaced sum converges faster than any power
    of ``1 / n_steps`` and in practice the residual is round-off. A form that
    failed to be closed would leave a term proportional to ``radius**2``.

    Raises
    ------
    InvalidTetrahedron
        If some point of the loop is not a valid tetrahedron.
    """
    p, q = (edge_index(e) for e in plane)
    if p == q:
        raise ValueError("the loop plane needs two different edges")
    if n_steps < 3:
        raise ValueError("n_steps must be at least 3")
    theta = 2.0 * np.pi * np.arange(n_steps) / n_steps
    pts = np.repeat(x0.array[None, :], n_steps, axis=0)
    pts[:, p] += radius * np.cos(theta)
    pts[:, q] += radius * np.sin(theta)
    for n in range(n_steps):
        report = is_valid(pts[n], x0.geometry, tol)
        if not report:
            raise InvalidTetrahedron(f"loop point {n} invalid: {report.stage}: {report.reason}")
    a = _kernel.angles(pts, x0.geometry)
    nxt = np.roll(np.arange(n_steps), -1)
    terms = 0.5 * (pts + pts[nxt]) * (a[nxt] - a)
    return abs(math.fsum(terms.ravel()))
