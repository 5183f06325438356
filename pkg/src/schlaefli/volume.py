"""Volumes of spherical and hyperbolic tetrahedra from the Schlaefli form.

On a space of curvature ``lam = +-1`` the volume satisfies
``dV = (lam / 2) sum_ij x_ij da_ij``. Integrating along the ray
``x(t) = t x`` from the collapsed tetrahedron (``V = 0``) gives

    V(x) = int_0^1 (lam / 2) t x^T J(t x) x dt

The integrand is smooth on ``[0, 1]`` and vanishes like ``t**2`` at the origin
(the Euclidean Jacobian annihilates ``x``), so a composite midpoint rule, which
never evaluates ``t = 0``, converges at second order.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernel
from .config import DEFAULT_TOLERANCES
from .errors import InvalidTetrahedron, WrongGeometry
from .tetra import TetraLengths, is_valid
from .triangle import Geometry


@dataclass(frozen=True)
class VolumeResult:
    """Midpoint-rule volume with a Richardson error estimate.

    ``value`` uses ``n_steps`` panels; ``error_estimate`` is
    ``|V_n - V_{n/2}| / 3`` and ``extrapolated`` is ``V_n + (V_n - V_{n/2}) / 3``.
    """

    value: float
    n_steps: int
    error_estimate: float
    extrapolated: float

    def to_json(self):
        return {"volume": self.value, "n_steps": self.n_steps,
                "error_estimate": self.error_estimate, "extrapolated": self.extrapolated}


def _require_curved(g):
    if Geometry.coerce(g) is Geometry.EUCLIDEAN:
        raise WrongGeometry("the Schlaefli form carries no volume in Euclidean space; "
                            "use euclidean_volume_cm")


def _midpoint_sum(values):
    return math.fsum(values) / len(values)


def _ray_integrand(xs, g, t):
    """``(lam/2) t x^T J(t x) x`` for every row of ``xs`` (B, 6) and node ``t`` (n,)."""
    pts = t[None, :, None] * xs[:, None, :]
    jac = _kernel.jacobian_direct(_kernel.Frame(pts, g))
    da_dt = np.einsum("bnij,bj->bni", jac, xs)
    return 0.5 * Geometry.coerce(g).curvature * t[None, :] * np.einsum("bi,bni->bn", xs, da_dt)


def _ray_volumes(xs, g, n_steps):
    """Midpoint volumes for ``n_steps`` and ``n_steps // 2`` panels, one pair per row."""
    coarse_n = n_steps // 2
    fine = _ray_integrand(xs, g, (np.arange(n_steps) + 0.5) / n_steps)
    coarse = _ray_integrand(xs, g, (np.arange(coarse_n) + 0.5) / coarse_n)
    return ([_midpoint_sum(row) for row in fine], [_midpoint_sum(row) for row in coarse])


def _check_ray(x, tol):
    for t in (0.125, 0.25, 0.5, 0.75, 1.0):
        report = is_valid(x.array * t, x.geometry, tol)
        if not report:
            raise InvalidTetrahedron(f"scaling path leaves the valid region at t={t}: "
                                     f"{report.stage}: {report.reason}")


def _result(fine, coarse, n_steps):
    return VolumeResult(fine, n_steps, abs(fine - coarse) / 3.0, fine + (fine - coarse) / 3.0)


def volume_schlaefli(x, n_steps=4096, tol=DEFAULT_TOLERANCES):
    """Volume of a spherical or hyperbolic tetrahedron.

    Parameters
    ----------
    x : TetraLengths
    n_steps : int
        Number of midpoint panels on ``(0, 1]``; must be even and at least 2.

    Raises
    ------
    WrongGeometry
        For Euclidean input.
    InvalidTetrahedron
        If ``x`` or a spot-checked point ``t x`` of the path is invalid.
    """
    _require_curved(x.geometry)
    if n_steps < 2 or n_steps % 2:
        raise ValueError("n_steps must be an even integer >= 2")
    _check_ray(x, tol)
    fine, coarse = _ray_volumes(x.array[None, :], x.geometry, n_steps)
    return _result(fine[0], coarse[0], n_steps)


def segment_integral(start, end, g, n_steps=4096):
    """``int (lam/2) sum x_ij da_ij`` along the straight segment ``start -> end``."""
    start = np.asarray(start, dtype=float)
    direction = np.asarray(end, dtype=float) - start
    t = (np.arange(n_steps) + 0.5) / n_steps
    pts = start[None, :] + t[:, None] * direction[None, :]
    jac = _kernel.jacobian_direct(_kernel.Frame(pts, g))
    integrand = np.einsum("ni,nij,j->n", pts, jac, direction)
    return 0.5 * Geometry.coerce(g).curvature * _midpoint_sum(integrand)


def volume_two_segment(x, via, n_steps=4096, tol=DEFAULT_TOLERANCES):
    """Volume integrated along a different path: the ray to ``via``, then the segment to ``x``.

    Agreement with :func:`volume_schlaefli` is a check that the integrated
    form is closed on the region the two paths bound.
    """
    _require_curved(x.geometry)
    via = via if isinstance(via, TetraLengths) else TetraLengths(via, x.geometry)
    for s in np.linspace(0.0, 1.0, 9):
        report = is_valid((1 - s) * via.array + s * x.array, x.geometry, tol)
        if not report:
            raise InvalidTetrahedron(f"segment leaves the valid region at s={s}: {report.reason}")
    first = volume_schlaefli(via, n_steps, tol).value
    return first + segment_integral(via.array, x.array, x.geometry, n_steps)


@dataclass(frozen=True)
class GradientCheck:
    """Outcome of :func:`volume_gradient_check`.

    ``residuals[m]`` is ``dV - (lam/2) sum x_ij da_ij`` after moving edge ``m``
    by ``h``; to second order it equals ``predicted[m] = (lam/4) h**2 J[m, m]``.
    """

    h: float
    residuals: tuple
    predicted: tuple
    volume_changes: tuple

    @property
    def max_residual(self):
        return max(abs(r) for r in self.residuals)

    @property
    def normalized(self):
        return self.max_residual / self.h ** 2

    def passed(self, rel=0.05, atol=1e-12):
        """Every residual matches its predicted quadratic term.

        The mismatch is third order in ``h``, so it is measured against the
        largest predicted term rather than each one separately: a single
        small ``J[m, m]`` would otherwise demand more than second order.
        """
        scale = max(abs(p) for p in self.predicted)
        return all(abs(r - p) <= rel * scale + atol
                   for r, p in zip(self.residuals, self.predicted))

    def to_json(self):
        return {"h": self.h, "max_residual": self.max_residual,
                "normalized": self.normalized, "pass": self.passed(),
                "residuals": list(self.residuals), "predicted": list(self.predicted)}


def volume_gradient_check(x, h=1e-4, n_steps=512, tol=DEFAULT_TOLERANCES):
    """Finite-difference check of ``dV/da_ij = (lam/2) x_ij``.

    Each length is moved forward by ``h``; the volume change (Richardson
    extrapolated quadrature, so quadrature error is far below ``h**2``) is
    compared with ``(lam/2) sum x_ij da_ij``. The mismatch is second order in
    ``h``.
    """
    _require_curved(x.geometry)
    _check_ray(x, tol)
    base = x.array
    configs = np.repeat(base[None, :], 7, axis=0)
    configs[1:] += h * np.eye(6)
    for row in configs[1:]:
        _check_ray(TetraLengths(row, x.geometry), tol)
    fine, coarse = _ray_volumes(configs, x.geometry, n_steps)
    volumes = [f + (f - c) / 3.0 for f, c in zip(fine, coarse)]
    frame = _kernel.Frame(configs, x.geometry)
    lam = x.geometry.curvature
    jac = _kernel.jacobian_direct(_kernel.Frame(base, x.geometry))
    residuals, predicted, changes = [], [], []
    for m in range(6):
        dv = volumes[m + 1] - volumes[0]
        da = frame.angles[m + 1] - frame.angles[0]
        residuals.append(dv - 0.5 * lam * math.fsum(base * da))
        predicted.append(0.25 * lam * h * h * jac[m, m])
        changes.append(dv)
    return GradientCheck(h, tuple(residuals), tuple(predicted), tuple(changes))


def euclidean_volume_cm(x):
    """Euclidean volume from the Cayley-Menger determinant, ``288 V**2 = det CM``."""
    if x.geometry is not Geometry.EUCLIDEAN:
        raise WrongGeometry("the Cayley-Menger volume is for Euclidean tetrahedra")
    sq = x.array ** 2
    cm = np.ones((5, 5))
    cm[0, 0] = 0.0
    for n, (i, j) in enumerate(_kernel.EDGES):
        cm[i, j] = cm[j, i] = sq[n]
    for v in range(1, 5):
        cm[v, v] = 0.0
    det = float(np.linalg.det(cm))
    scale = float(sq.max()) ** 3
    if det <= 1e-14 * scale:
        raise InvalidTetrahedron(f"Cayley-Menger determinant {det:.3e} is not positive")
    return math.sqrt(det / 288.0)
