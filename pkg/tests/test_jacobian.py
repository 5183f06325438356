import csv
import io
import json
import math

import numpy as np
import pytest

from schlaefli import (Geometry, InvalidTetrahedron, NearDegenerate, SingularJacobian,
                       TetraAngles, TetraLengths, WrongGeometry, curvature_map, jacobian_analytic,
                       jacobian_fd, p_matrix, r_matrix, random_tetrahedra, w_angle, w_length)
from schlaefli import _kernel
from schlaefli.tetra import EDGE_KEYS, complement

import oracles

SQRT2 = math.sqrt(2)


def rel_error(analytic, fd):
    return np.abs(analytic - fd).max() / max(1.0, np.abs(analytic).max())


def test_regular_opposite_entry(regular_euclidean):
    jac = jacobian_analytic(regular_euclidean)
    assert jac["12", "34"] == pytest.approx(SQRT2, abs=1e-12)
    # every opposite pair is the same by symmetry
    for e in EDGE_KEYS:
        assert jac[e, "".join(map(str, complement(e)))] == pytest.approx(SQRT2, abs=1e-12)


def test_regular_opposite_entry_by_fd(regular_euclidean):
    fd = jacobian_fd(regular_euclidean, h=1e-5)
    assert fd["12", "34"] == pytest.approx(1.4142136, abs=1e-7)
    assert abs(fd["12", "34"] - SQRT2) <= 1e-8


def test_regular_against_gram_oracle(regular_euclidean):
    fd = oracles.fd_gradient(lambda v: oracles.dihedral_angles(v, 0), np.ones(6), 1e-5)
    assert rel_error(jacobian_analytic(regular_euclidean).matrix, fd) <= 1e-8


def test_orthant_diagonal_vanishes(orthant):
    jac = jacobian_analytic(orthant)
    assert np.abs(np.diag(jac.matrix)).max() <= 1e-12


def _batch_errors(xs, g, analytic, h):
    fd = _kernel.jacobian_fd(xs, g, h)
    scale = np.maximum(1.0, np.abs(analytic).max(axis=(1, 2)))
    return np.abs(analytic - fd).max(axis=(1, 2)) / scale


@pytest.mark.parametrize("mode", ["direct", "minimal"])
@pytest.mark.parametrize("g", [1, 0, -1])
def test_analytic_matches_fd(g, mode):
    xs = random_tetrahedra(g, 1000, seed=21)
    frame = _kernel.Frame(xs, g)
    analytic = _kernel.jacobian_direct(frame) if mode == "direct" else \
        _kernel.jacobian_minimal(frame)
    assert _batch_errors(xs, g, analytic, 1e-6).max() <= 1e-6


@pytest.mark.parametrize("g", [1, 0, -1])
def test_fd_mismatch_is_truncation(g):
    # near-flat samples have large third derivatives; the stencil error there
    # must still shrink like h**2, which pins the remainder on the oracle
    xs = random_tetrahedra(g, 1000, seed=21)
    analytic = _kernel.jacobian_direct(_kernel.Frame(xs, g))
    coarse = _batch_errors(xs, g, analytic, 1e-5)
    fine = _batch_errors(xs, g, analytic, 1e-6)
    worst = coarse.argmax()
    assert coarse[worst] / fine[worst] == pytest.approx(100.0, rel=0.05)


@pytest.mark.parametrize("g", [1, 0, -1])
def test_public_fd_check(g):
    x = TetraLengths(random_tetrahedra(g, 1, seed=22)[0], g)
    assert rel_error(jacobian_analytic(x).matrix, jacobian_fd(x).matrix) <= 1e-6
    assert rel_error(jacobian_analytic(x, mode="minimal").matrix,
                     jacobian_analytic(x).matrix) <= 1e-10


@pytest.mark.parametrize("g", [1, 0, -1])
def test_fd_error_is_second_order(g):
    x = TetraLengths(random_tetrahedra(g, 1, seed=23)[0], g)
    analytic = jacobian_analytic(x).matrix
    errors = [np.abs(jacobian_fd(x, h).matrix - analytic).max() for h in (2e-3, 1e-3)]
    assert 3.5 <= errors[0] / errors[1] <= 4.5


def test_euclidean_jacobian_annihilates_lengths():
    for row in random_tetrahedra(0, 50, seed=24):
        x = TetraLengths(row, 0)
        jac = jacobian_analytic(x).matrix
        norm = np.linalg.norm(jac, 2)
        assert np.linalg.norm(jac @ row) <= 1e-12 * norm * np.linalg.norm(row)
        assert np.linalg.svd(jac, compute_uv=False)[-1] <= 1e-9 * norm
    fd = jacobian_fd(x).matrix
    assert np.linalg.norm(fd @ row) <= 1e-7


def test_jacobian_rejects_bad_input():
    with pytest.raises(InvalidTetrahedron):
        jacobian_analytic(TetraLengths([1, 1, 1, 1, 1, 10], 0))
    with pytest.raises(ValueError):
        jacobian_analytic(TetraLengths(np.ones(6), 0), mode="fast")
    # the step pushes x_34 past the hinge limit sqrt(3)
    near = TetraLengths([1, 1, 1, 1, 1, math.sqrt(3) - 1e-3], 0)
    with pytest.raises(InvalidTetrahedron, match="perturbation"):
        jacobian_fd(near, h=0.01)


def test_near_degenerate_jacobian():
    nearly_flat = TetraLengths([1, 1, 1, 1, 1, math.sqrt(3) * (1 - 1e-6)], 0)
    jacobian_analytic(nearly_flat)
    with pytest.raises(NearDegenerate, match="A-invariant"):
        jacobian_analytic(nearly_flat, tol=x_tol(min_invariant=1e-2))


def test_p_matrix_regular(regular_euclidean):
    p = p_matrix(regular_euclidean)
    assert p["12", "34"] == pytest.approx(9 * SQRT2 / 8, abs=1e-12)
    assert p["12", "34"] == pytest.approx(1.5909903, abs=1e-7)


@pytest.mark.parametrize("g", [1, 0, -1])
def test_p_matrix_symmetric(g):
    for row in random_tetrahedra(g, 20, seed=25):
        p = p_matrix(TetraLengths(row, g)).matrix
        assert np.abs(p - p.T).max() <= 1e-9 * max(1.0, np.abs(p).max())


def test_w_angle_values(regular_euclidean, orthant):
    assert w_angle(curvature_map(regular_euclidean), "12") == pytest.approx(1 / 3, abs=1e-14)
    assert w_angle(curvature_map(orthant), (2, 4)) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(NearDegenerate):
        w_angle(TetraAngles([0.0, 1, 1, 1, 1, 1]), "12")


@pytest.mark.parametrize("g", [1, 0, -1])
def test_diagonal_identity_with_w_angle(g):
    x = TetraLengths(random_tetrahedra(g, 1, seed=26)[0], g)
    p = p_matrix(x)
    a = curvature_map(x)
    for e in EDGE_KEYS:
        opposite = "".join(map(str, complement(e)))
        assert p[e, e] == pytest.approx(p[e, opposite] * w_angle(a, e), abs=1e-9)


def test_r_matrix_orthant(orthant):
    r = r_matrix(orthant)
    assert np.abs(np.diag(r.matrix)).max() <= 1e-12
    assert np.abs(r.matrix - r.matrix.T).max() <= 1e-12
    assert w_length(orthant, "12") == pytest.approx(0.0, abs=1e-15)
    # the orthant Jacobian is the anti-diagonal of ones (up to sign), so R is too
    np.testing.assert_allclose(np.abs(r.matrix), np.fliplr(np.eye(6)), atol=1e-12)


@pytest.mark.parametrize("g", [1, -1])
def test_inverse_relation(g):
    for row in random_tetrahedra(g, 50, seed=27):
        x = TetraLengths(row, g)
        jac = jacobian_analytic(x).matrix
        inverse = np.linalg.inv(jac)
        assert np.abs(jac @ inverse - np.eye(6)).max() <= 1e-8
        assert np.isfinite(r_matrix(x).condition)


def test_hyperbolic_adjacency_uses_length_cosines():
    x = TetraLengths(random_tetrahedra(-1, 1, seed=28)[0], -1)
    r = r_matrix(x)
    # R[ij, ik] = R[ij, kl] cosh x_il with (i, j, k, l) = (1, 2, 3, 4)
    assert r["12", "13"] == pytest.approx(r["12", "34"] * math.cosh(x["14"]), abs=1e-8)


def test_w_length_matches_inverse_ratio(regular_hyperbolic):
    r = r_matrix(regular_hyperbolic)
    for e in EDGE_KEYS:
        opposite = "".join(map(str, complement(e)))
        assert w_length(regular_hyperbolic, e) == pytest.approx(r[e, e] / r[e, opposite],
                                                                rel=1e-10)


def test_w_length_spherical_diagonal():
    x = TetraLengths(random_tetrahedra(1, 1, seed=29)[0], 1)
    r = r_matrix(x)
    assert r["23", "23"] == pytest.approx(r["23", "14"] * w_length(x, "23"), abs=1e-8)


def test_curved_only_operations(regular_euclidean):
    with pytest.raises(WrongGeometry, match="R-matrix requires curved geometry"):
        r_matrix(regular_euclidean)
    with pytest.raises(WrongGeometry):
        w_length(regular_euclidean, "12")


def test_singular_jacobian_reported():
    x = TetraLengths(np.full(6, math.pi / 2), 1)
    with pytest.raises(SingularJacobian) as info:
        r_matrix(x, tol=x_tol(max_condition=0.5))
    assert info.value.condition >= 1.0


def x_tol(**changes):
    from schlaefli import DEFAULT_TOLERANCES
    return DEFAULT_TOLERANCES.with_(**changes)


def test_serialization(regular_euclidean):
    jac = jacobian_analytic(regular_euclidean)
    data = json.loads(json.dumps(jac.to_json()))
    assert data["edges"] == list(EDGE_KEYS)
    assert np.array(data["matrix"]).tolist() == jac.matrix.tolist()
    rows = list(csv.reader(io.StringIO(jac.to_csv())))
    assert rows[0] == [""] + list(EDGE_KEYS)
    parsed = np.array([[float(v) for v in row[1:]] for row in rows[1:]])
    assert parsed.tolist() == jac.matrix.tolist()
    assert [row[0] for row in rows[1:]] == list(EDGE_KEYS)


def test_r_matrix_json_has_condition():
    r = r_matrix(TetraLengths(np.ones(6), Geometry.HYPERBOLIC))
    assert r.to_json()["condition"] == r.condition
