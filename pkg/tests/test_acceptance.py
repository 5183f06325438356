"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` to see the lines; they are printed
with capture disabled so they show up without ``-s``.
"""

import json
import math
import time

import numpy as np
import pytest

from schlaefli import (DEFAULT_TOLERANCES, Geometry, SweepConfig, TetraLengths, curvature_map,
                       dual, euclidean_volume_cm, is_valid, jacobian_analytic, jacobian_fd,
                       one_form_loop_residual, random_tetrahedra, sweep, volume_gradient_check,
                       volume_schlaefli, volume_two_segment)
from schlaefli import _kernel
from schlaefli.cli import main
from schlaefli.sampling import DEFAULT_SEED


@pytest.fixture
def report(capsys):
    def emit(number, title, checks):
        ok = all(passed for passed, _ in checks.values())
        details = "; ".join(f"{name}={text}{'' if passed else ' (FAIL)'}"
                            for name, (passed, text) in checks.items())
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {details}")
        failed = [name for name, (passed, _) in checks.items() if not passed]
        assert not failed, f"criterion {number} failed checks: {failed}"
    return emit


def test_angle_identity_sweep(report):
    checks = {}
    start = time.perf_counter()
    for g in Geometry:
        result = sweep(SweepConfig(g, samples=1000, seed=DEFAULT_SEED), "angles")
        value = result.max_residual
        checks[g.name.lower()] = (value <= 1e-9, f"{value:.2e}")
    elapsed = time.perf_counter() - start
    checks["runtime"] = (elapsed <= 10.0, f"{elapsed:.1f}s")
    report(1, "P-matrix identities, 1000 samples per geometry, tol 1e-9", checks)


def test_length_identity_sweep(report):
    checks = {}
    start = time.perf_counter()
    for g in (Geometry.SPHERICAL, Geometry.HYPERBOLIC):
        result = sweep(SweepConfig(g, samples=1000, seed=DEFAULT_SEED), "lengths")
        identities = max(r.value for name, r in result.residuals.items() if name != "inverse")
        inverse = result.residuals["inverse"].value
        checks[g.name.lower()] = (identities <= 1e-8, f"{identities:.2e}")
        checks[f"{g.name.lower()}_inverse"] = (inverse <= 1e-8, f"{inverse:.2e}")
    elapsed = time.perf_counter() - start
    checks["runtime"] = (elapsed <= 10.0, f"{elapsed:.1f}s")
    report(2, "R-matrix identities and J J^-1 = I, 1000 samples, tol 1e-8", checks)


def test_analytic_vs_fd_jacobian(report):
    checks = {}
    for g in Geometry:
        xs = random_tetrahedra(g, 1000, seed=DEFAULT_SEED)
        analytic = _kernel.jacobian_direct(_kernel.Frame(xs, g))
        scale = np.maximum(1.0, np.abs(analytic).max(axis=(1, 2)))

        def worst(h):
            fd = _kernel.jacobian_fd(xs, g, h)
            return float((np.abs(analytic - fd).max(axis=(1, 2)) / scale).max())

        at_h, at_half = worst(1e-5), worst(5e-6)
        ratio = at_h / at_half
        name = g.name.lower()
        checks[f"{name}_rel_err"] = (at_h <= 1e-6, f"{at_h:.2e}")
        checks[f"{name}_halving"] = (3.5 <= ratio <= 4.5, f"{ratio:.2f}")
    report(3, "analytic vs central-difference Jacobian at h=1e-5, 1000 samples", checks)


def test_golden_cases(report):
    regular = TetraLengths(np.ones(6), Geometry.EUCLIDEAN)
    orthant = TetraLengths(np.full(6, math.pi / 2), Geometry.SPHERICAL)
    angle_err = np.abs(curvature_map(regular).array - math.acos(1 / 3)).max()
    entry = jacobian_analytic(regular)["12", "34"]
    fd_entry = jacobian_fd(regular, 1e-5)["12", "34"]
    orthant_err = np.abs(curvature_map(orthant).array - math.pi / 2).max()
    diagonal = np.abs(np.diag(jacobian_analytic(orthant).matrix)).max()
    checks = {
        "regular_angles": (angle_err <= 1e-12, f"{angle_err:.1e}"),
        "da12_dx34": (abs(entry - math.sqrt(2)) <= 1e-9, f"{entry:.12f}"),
        "da12_dx34_fd": (abs(fd_entry - math.sqrt(2)) <= 1e-8, f"{fd_entry:.10f}"),
        "orthant_angles": (orthant_err <= 1e-12, f"{orthant_err:.1e}"),
        "orthant_diagonal": (diagonal <= 1e-12, f"{diagonal:.1e}"),
    }
    report(4, "exact symmetric cases", checks)


def _shrinkable(g, n, seed):
    rows = random_tetrahedra(g, 2 * n, seed=seed)
    keep = [row for row in rows
            if all(is_valid(row * t, g) for t in (1e-3, 0.125, 0.25, 0.5, 0.75))]
    return np.array(keep[:n])


def test_volume(report):
    orthant = TetraLengths(np.full(6, math.pi / 2), Geometry.SPHERICAL)
    orthant_err = abs(volume_schlaefli(orthant, 4096).value - math.pi ** 2 / 8)
    checks = {"orthant": (orthant_err <= 1e-6, f"{orthant_err:.1e}")}

    for g in (Geometry.SPHERICAL, Geometry.HYPERBOLIC):
        rows = _shrinkable(g, 100, DEFAULT_SEED)
        passed = sum(volume_gradient_check(TetraLengths(row, g), 1e-4, 256).passed()
                     for row in rows)
        x = TetraLengths(rows[0], g)
        ratio = (volume_gradient_check(x, 2e-4).max_residual
                 / volume_gradient_check(x, 1e-4).max_residual)
        checks[f"{g.name.lower()}_gradient"] = (len(rows) == 100 and passed == len(rows),
                                                f"{passed}/{len(rows)}")
        checks[f"{g.name.lower()}_h_ratio"] = (3.5 <= ratio <= 4.5, f"{ratio:.2f}")

    errors = []
    for eps in (0.1, 0.05):
        flat = euclidean_volume_cm(TetraLengths(np.full(6, eps), Geometry.EUCLIDEAN))
        curved = volume_schlaefli(TetraLengths(np.full(6, eps), Geometry.HYPERBOLIC)).value
        errors.append(abs(curved - flat) / flat)
    improvement = errors[0] / errors[1]
    checks["flat_limit"] = (errors[0] <= 0.01, f"{errors[0]:.3%}")
    checks["flat_limit_order"] = (3.5 <= improvement <= 4.5, f"{improvement:.2f}")
    report(5, "volume by integrating the Schlaefli form", checks)


def test_closed_form(report):
    checks = {}
    for g in Geometry:
        x0 = TetraLengths(random_tetrahedra(g, 1, seed=DEFAULT_SEED)[0], g)
        big = one_form_loop_residual(x0, 1e-2, ("12", "34"), 256)
        small = one_form_loop_residual(x0, 5e-3, ("12", "34"), 256)
        ratio = big / small if small > 0 else math.inf
        name = g.name.lower()
        checks[f"{name}_loop"] = (big <= 1e-7, f"{big:.1e}")
        checks[f"{name}_halving"] = (6.0 <= ratio <= 10.0, f"{ratio:.2f}")
    for g in (Geometry.SPHERICAL, Geometry.HYPERBOLIC):
        row = _shrinkable(g, 1, DEFAULT_SEED)[0]
        via = row * np.array([1.1, 0.9, 1.0, 1.05, 0.95, 1.0])
        x = TetraLengths(row, g)
        gap = abs(volume_schlaefli(x).extrapolated - volume_two_segment(x, via))
        checks[f"{g.name.lower()}_paths"] = (gap <= 1e-6, f"{gap:.1e}")
    report(6, "closed 1-form: loop residual and path independence", checks)


def test_duality(report):
    worst_map = worst_involution = 0.0
    for row in random_tetrahedra(Geometry.SPHERICAL, 200, seed=DEFAULT_SEED):
        x = TetraLengths(row, Geometry.SPHERICAL)
        a = curvature_map(x)
        dx, da = dual(x, a)
        worst_map = max(worst_map, np.abs(curvature_map(dx).array - da.array).max())
        ddx, dda = dual(dx, da)
        worst_involution = max(worst_involution, np.abs(ddx.array - x.array).max(),
                               np.abs(dda.array - a.array).max())
    checks = {"dual_angles": (worst_map <= 1e-9, f"{worst_map:.1e}"),
              "involution": (worst_involution <= 1e-10, f"{worst_involution:.1e}")}
    report(7, "spherical duality, 200 samples", checks)


def test_determinism(report, tmp_path, capsys):
    outputs = []
    for n, workers in enumerate((1, 1, 4)):
        path = tmp_path / f"run{n}.json"
        code = main(["verify", "--geometry", "hyperbolic", "--samples", "300", "--seed", "42",
                     "--workers", str(workers), "--output", str(path), "--quiet"])
        outputs.append((code, path.read_bytes()))
    capsys.readouterr()
    same_runs = outputs[0] == outputs[1]
    same_workers = outputs[0] == outputs[2]
    parsed = json.loads(outputs[0][1])
    checks = {"repeat": (same_runs, str(same_runs)),
              "workers_1_vs_4": (same_workers, str(same_workers)),
              "exit_code": (outputs[0][0] == 0 and parsed["pass"], str(outputs[0][0]))}
    report(8, "verify sweep output is byte-identical", checks)
