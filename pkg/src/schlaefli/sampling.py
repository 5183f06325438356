"""Reproducible random tetrahedra and identity sweeps over them.

Samples are drawn edge-length-first: six lengths uniform on ``[lo, hi]``,
kept only if :func:`~schlaefli.tetra.is_valid` accepts them and every face
angle and every dihedral angle lies in ``[min_angle, pi - min_angle]``.
Dihedral angles are the angles of the vertex links, so this is the same
non-degeneracy margin applied to all eight triangles involved. The generator is
``numpy.random.default_rng(seed)`` and candidates are drawn one six-vector at
a time, so the accepted sequence depends only on the seed and the filters.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernel
from .config import DEFAULT_TOLERANCES
from .identities import ANGLE_IDENTITIES, LENGTH_IDENTITIES, IdentityReport, Residual, \
    batch_residuals, _LABELS
from .tetra import TetraLengths, is_valid
from .triangle import Geometry

DEFAULT_SEED = 20240601
DEFAULT_RANGE = (0.3, 1.2)
MIN_ANGLE = 0.05
# sweep work is split into fixed-size chunks so results never depend on worker count
CHUNK = 64


@dataclass(frozen=True)
class SweepConfig:
    geometry: Geometry
    samples: int = 1000
    lo: float = DEFAULT_RANGE[0]
    hi: float = DEFAULT_RANGE[1]
    seed: int = DEFAULT_SEED
    min_angle: float = MIN_ANGLE
    tolerances: object = DEFAULT_TOLERANCES

    def __post_init__(self):
        object.__setattr__(self, "geometry", Geometry.coerce(self.geometry))
        if not self.lo > 0:
            raise ValueError(f"length range lower bound must be positive, got {self.lo}")
        if not self.hi > self.lo:
            raise ValueError(f"length range must satisfy hi > lo, got [{self.lo}, {self.hi}]")
        if self.geometry is Geometry.SPHERICAL and not self.hi < math.pi:
            raise ValueError(f"spherical lengths must stay below pi, got hi={self.hi}")
        if self.samples < 1:
            raise ValueError("sample count must be at least 1")


def angle_margin(values, g):
    """Distance of the closest face or dihedral angle to 0 or pi."""
    frame = _kernel.Frame(np.asarray(values, dtype=float), g)
    every = np.concatenate([np.array(list(frame.b.values())), frame.angles])
    return float(min(every.min(), math.pi - every.max()))


def random_tetrahedra(g, n, lo=DEFAULT_RANGE[0], hi=DEFAULT_RANGE[1], seed=DEFAULT_SEED,
                      min_angle=MIN_ANGLE, tol=DEFAULT_TOLERANCES, max_draws=None):
    """Return an ``(n, 6)`` array of valid edge-length vectors.

    Raises ``RuntimeError`` if ``max_draws`` candidates (default ``1000 * n``)
    are exhausted first.
    """
    g = Geometry.coerce(g)
    rng = np.random.default_rng(seed)
    limit = max_draws if max_draws is not None else 1000 * n
    accepted = []
    for _ in range(limit):
        candidate = rng.uniform(lo, hi, 6)
        if not is_valid(candidate, g, tol):
            continue
        if angle_margin(candidate, g) < min_angle:
            continue
        accepted.append(candidate)
        if len(accepted) == n:
            return np.array(accepted)
    raise RuntimeError(f"only {len(accepted)} of {n} valid samples after {limit} draws")


def random_tetrahedron(g, seed=DEFAULT_SEED, **kwargs):
    """One random valid tetrahedron as :class:`TetraLengths`."""
    return TetraLengths(random_tetrahedra(g, 1, seed=seed, **kwargs)[0], g)


def _chunk_worst(args):
    x, g, family = args
    return batch_residuals(x, g, family)


def sweep(config, family="angles", workers=1):
    """Run one identity family over ``config.samples`` random tetrahedra.

    The returned report holds, for every identity, the largest residual over
    all samples, the term where it occurred and the index and lengths of the
    worst sample. Ties go to the lowest sample index.
    """
    g = config.geometry
    xs = random_tetrahedra(g, config.samples, config.lo, config.hi, config.seed,
                           config.min_angle, config.tolerances)
    chunks = [(xs[s:s + CHUNK], g, family) for s in range(0, len(xs), CHUNK)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_chunk_worst, chunks))
    else:
        results = [_chunk_worst(c) for c in chunks]

    names = ANGLE_IDENTITIES if family == "angles" else LENGTH_IDENTITIES
    tol = config.tolerances
    residuals = {}
    worst_samples = {}
    for name in names:
        values = np.concatenate([r[name][0] for r in results])
        terms = np.concatenate([r[name][1] for r in results])
        idx = int(np.argmax(values))
        limit = tol.inverse if name == "inverse" else (
            tol.identity_p if family == "angles" else tol.identity_r)
        residuals[name] = Residual(float(values[idx]), _LABELS[name][int(terms[idx])], limit)
        worst_samples[name] = {"index": idx,
                               "lengths": TetraLengths(xs[idx], g).to_dict()}
    metadata = {
        "samples": config.samples,
        "seed": config.seed,
        "range": [config.lo, config.hi],
        "min_angle": config.min_angle,
        "worst_samples": worst_samples,
    }
    return IdentityReport(family, g, residuals, metadata)


def default_workers():
    return max(1, min(4, os.cpu_count() or 1))
