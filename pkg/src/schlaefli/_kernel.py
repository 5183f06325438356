"""Batched tetrahedron kernels.

Lengths arrive as arrays of shape ``(..., 6)`` in canonical edge order and all
work is broadcast over the leading axes, so a whole sweep or a whole quadrature
grid costs a few hundred numpy calls. No validation happens here; the public
wrappers in :mod:`schlaefli.tetra` and :mod:`schlaefli.jacobian` do that.

Notation: vertices are 1..4, ``b[v, p, q]`` is the face angle at ``v`` in the
face ``{v, p, q}`` and ``link[v, p]`` is the dihedral angle along edge ``vp``
read off the spherical link of ``v``.
"""

import itertools

import numpy as np

from .triangle import Geometry, angle_opposite, s_lambda

VERTICES = (1, 2, 3, 4)
EDGES = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
EDGE_KEYS = tuple(f"{i}{j}" for i, j in EDGES)
_EDGE_INDEX = {}
for _n, (_i, _j) in enumerate(EDGES):
    _EDGE_INDEX[_i, _j] = _EDGE_INDEX[_j, _i] = _n
OPPOSITE = tuple(_EDGE_INDEX[tuple(v for v in VERTICES if v not in e)] for e in EDGES)


def edge(i, j):
    """Row/column index of edge ``{i, j}`` in canonical order."""
    try:
        return _EDGE_INDEX[i, j]
    except KeyError:
        raise ValueError(f"{(i, j)} is not an edge of the tetrahedron") from None


def others(*vs):
    return tuple(v for v in VERTICES if v not in vs)


class Frame:
    """Face angles, link angles and the per-vertex derivative blocks of one batch."""

    def __init__(self, x, g):
        self.g = Geometry.coerce(g)
        self.x = x = np.asarray(x, dtype=float)
        self.s = s_lambda(x, self.g)

        def length(p, q):
            return x[..., _EDGE_INDEX[p, q]]

        b = {}
        for v in VERTICES:
            for p, q in itertools.combinations(others(v), 2):
                b[v, p, q] = b[v, q, p] = angle_opposite(length(p, q), length(v, p),
                                                         length(v, q), self.g)
        self.b = b
        self.cos_b = {key: np.cos(val) for key, val in b.items()}
        self.sin_b = {key: np.sin(val) for key, val in b.items()}

        link = {}
        for v in VERTICES:
            for p in others(v):
                q, r = others(v, p)
                link[v, p] = angle_opposite(b[v, q, r], b[v, p, q], b[v, p, r], Geometry.SPHERICAL)
        self.link = link

        self.angles = np.stack([link[i, j] for i, j in EDGES], axis=-1)
        self.angles_alt = np.stack([link[j, i] for i, j in EDGES], axis=-1)
        self.cos_a = np.cos(self.angles)
        self.sin_a = np.sin(self.angles)

    def face_invariant(self, v, p, q):
        """A-invariant of face ``{v, p, q}`` computed with the angle at ``v``."""
        return (self.sin_b[v, p, q] * self.s[..., _EDGE_INDEX[v, p]]
                * self.s[..., _EDGE_INDEX[v, q]])

    def link_invariant(self, v):
        """A-invariant of the spherical link of ``v``."""
        p, q, r = others(v)
        return np.sin(self.link[v, p]) * self.sin_b[v, p, q] * self.sin_b[v, p, r]

    def cos_angle(self, p, q):
        return self.cos_a[..., _EDGE_INDEX[p, q]]

    def sin_angle(self, p, q):
        return self.sin_a[..., _EDGE_INDEX[p, q]]

    def min_invariant(self):
        """Smallest face or link A-invariant in each configuration."""
        values = [self.face_invariant(*face) for face in itertools.combinations(VERTICES, 3)]
        values += [self.link_invariant(v) for v in VERTICES]
        return np.min(np.stack(values, axis=-1), axis=-1)

    def face_gradient(self, v, p, q):
        """Gradient of ``b[v, p, q]`` with respect to the six lengths, shape ``(..., 6)``."""
        grad = np.zeros(self.x.shape, dtype=float)
        diag = self.s[..., _EDGE_INDEX[p, q]] / self.face_invariant(v, p, q)
        grad[..., _EDGE_INDEX[p, q]] = diag
        grad[..., _EDGE_INDEX[v, p]] = -diag * self.cos_b[p, v, q]
        grad[..., _EDGE_INDEX[v, q]] = -diag * self.cos_b[q, v, p]
        return grad

    def link_partials(self, v, p):
        """Partials of ``link[v, p]`` with respect to the link sides.

        Returns a dict keyed by the face ``(v, m, n)`` whose angle at ``v`` is
        the side being varied.
        """
        q, r = others(v, p)
        diag = self.sin_b[v, q, r] / self.link_invariant(v)
        return {
            (v, q, r): diag,
            (v, p, q): -diag * self.cos_angle(v, q),
            (v, p, r): -diag * self.cos_angle(v, r),
        }

    def link_row(self, v, p):
        """Full chain-rule gradient of the dihedral angle at ``vp`` through Lk(v)."""
        row = 0.0
        for face, partial in self.link_partials(v, p).items():
            row = row + partial[..., None] * self.face_gradient(*face)
        return row


def angles(x, g):
    """Dihedral angles for lengths of shape ``(..., 6)``."""
    return Frame(x, g).angles


def jacobian_direct(frame):
    """Every entry by its own chain rule.

    For an entry ``d a_ij / d x_rs`` the link used is that of the endpoint of
    ``ij`` not on ``rs`` when the edges share one vertex (so a single link side
    moves), and ``Lk(v_i)`` otherwise.
    """
    rows = {}
    for i, j in EDGES:
        rows[i, j] = frame.link_row(i, j)
        rows[j, i] = frame.link_row(j, i)
    jac = np.empty(frame.x.shape + (6,), dtype=float)
    for n, (i, j) in enumerate(EDGES):
        for m, (r, s) in enumerate(EDGES):
            shared = {i, j} & {r, s}
            v = i
            if len(shared) == 1:
                v = j if i in shared else i
            w = j if v == i else i
            jac[..., n, m] = rows[v, w][..., m]
    return jac


def jacobian_minimal(frame):
    """Opposite entries by the chain rule; the rest from the adjacency and diagonal identities."""
    jac = np.empty(frame.x.shape + (6,), dtype=float)
    for n, (i, j) in enumerate(EDGES):
        k, l = others(i, j)
        opp = _EDGE_INDEX[k, l]
        through_link = frame.link_partials(i, j)[i, k, l]
        jac[..., n, opp] = (through_link * frame.s[..., opp]
                            / frame.face_invariant(i, k, l))
    for n, (i, j) in enumerate(EDGES):
        k, l = others(i, j)
        opp = _EDGE_INDEX[k, l]
        for shared, far in ((i, j), (j, i)):
            for near in (k, l):
                last = l if near == k else k
                jac[..., n, _EDGE_INDEX[shared, near]] = (
                    -jac[..., n, _EDGE_INDEX[near, last]] * frame.cos_angle(far, near)
                    * frame.sin_angle(shared, near) / frame.sin_angle(near, last))
        c = frame.cos_angle
        numerator = (c(i, j) * c(j, k) * c(k, i) + c(i, j) * c(j, l) * c(l, i)
                     + c(i, k) * c(j, l) + c(i, l) * c(j, k))
        jac[..., n, n] = (jac[..., n, opp] * numerator
                          / (frame.sin_angle(i, j) * frame.sin_angle(k, l)))
    return jac


def jacobian(x, g, mode="direct"):
    frame = Frame(x, g)
    if mode == "direct":
        return jacobian_direct(frame)
    if mode == "minimal":
        return jacobian_minimal(frame)
    raise ValueError(f"unknown Jacobian mode {mode!r}; expected 'direct' or 'minimal'")


def jacobian_fd(x, g, h):
    """Central differences of :func:`angles`, column ``m`` = derivative along edge ``m``."""
    x = np.asarray(x, dtype=float)
    eye = np.eye(6) * h
    plus = angles(x[..., None, :] + eye, g)
    minus = angles(x[..., None, :] - eye, g)
    return np.swapaxes((plus - minus) / (2.0 * h), -1, -2)
