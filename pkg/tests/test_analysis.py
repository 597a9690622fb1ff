import numpy as np
import pytest

from tmdg.analysis import (
    convergence_study,
    diagonal_midpoint_density,
    error_norms,
    extract_diagonal,
    max_entropy_increase,
    observed_orders,
    transpose_symmetry_defect,
)
from tmdg.cases import exact_smooth
from tmdg.model import to_conserved
from tmdg.runner import run_case
from tmdg.sbp import sbp_operators
from tmdg.solver1d import Mesh1D
from tmdg.solver2d import Mesh2D


@pytest.mark.parametrize("norm", ["nodal", "quadrature"])
def test_error_of_exact_field_is_zero(norm):
    ops = sbp_operators(2)
    mesh = Mesh1D.uniform(-0.5, 0.5, 8)
    u = to_conserved(exact_smooth(mesh.nodes(ops), 0.2))
    assert error_norms(u, exact_smooth, mesh, ops, 0.2, l1=norm) == (0.0, 0.0)


def test_error_norm_conventions():
    ops = sbp_operators(1)
    mesh = Mesh1D.uniform(0.0, 1.0, 4)
    x = mesh.nodes(ops)
    u = to_conserved(exact_smooth(x, 0.0))
    u[..., 0] += 1e-3
    u[..., 1] += 1e-3  # keep vx = 1
    l1_nodal, linf = error_norms(u, exact_smooth, mesh, ops, 0.0)
    l1_quad, _ = error_norms(u, exact_smooth, mesh, ops, 0.0, l1="quadrature")
    assert linf == pytest.approx(1e-3)
    # nodal sums dx |e| over the k + 1 nodes, quadrature integrates |e| once
    assert l1_nodal == pytest.approx(2e-3)
    assert l1_quad == pytest.approx(1e-3)
    with pytest.raises(ValueError):
        error_norms(u, exact_smooth, mesh, ops, 0.0, l1="l2")


def test_observed_orders():
    o = observed_orders([32, 64, 128], [1.0, 0.25, 0.0625])
    assert np.isnan(o[0])
    assert np.allclose(o[1:], 2.0)


def test_convergence_study_short():
    rep = convergence_study("smooth", 2, [8, 16], t_end=0.05)
    assert rep.grids == [8, 16]
    assert rep.l1[1] < rep.l1[0]
    rows = list(rep.rows())
    assert len(rows) == 2 and np.isnan(rows[0][2])
    with pytest.raises(ValueError):
        convergence_study("smooth", 2, [8])
    with pytest.raises(ValueError):
        convergence_study("sod", 2, [8, 16])


def test_max_entropy_increase():
    assert max_entropy_increase([[0.0, 2.0], [1.0, 1.0], [2.0, 0.5]]) < 0
    assert max_entropy_increase([[0.0, 1.0], [1.0, 1.1]]) == pytest.approx(0.1 / 1.1)
    # initial entropy zero does not blow up the scale
    assert max_entropy_increase([[0.0, 0.0], [1.0, -0.1], [2.0, -0.2]]) == pytest.approx(-0.5)
    assert max_entropy_increase([[0.0, 3.0]]) == 0.0


def test_constant_state_entropy_series_is_flat():
    res = run_case("smooth", order=2, n=8, t_end=0.05)
    s = res.entropy_array()
    assert s.shape[1] == 2 and s[0, 0] == 0.0 and s[-1, 0] == pytest.approx(0.05)


def test_diagonal_of_uniform_field():
    ops = sbp_operators(2)
    mesh = Mesh2D.uniform((0, 4), (0, 4), 6, 6)
    u = np.broadcast_to(to_conserved(np.array([0.1, 0, 0, 9, 7, 9])), (6, 6, 3, 3, 6)).copy()
    arc, prim = extract_diagonal(u, mesh, ops)
    assert np.allclose(prim, [0.1, 0, 0, 9, 7, 9])
    assert arc[0] == 0.0 and arc[-1] == pytest.approx(4 * np.sqrt(2))
    assert diagonal_midpoint_density(u, mesh, ops) == pytest.approx(0.1)
    assert transpose_symmetry_defect(u) == 0.0


def test_diagonal_points_lie_on_anti_diagonal():
    ops = sbp_operators(1)
    mesh = Mesh2D.uniform((0, 1), (0, 1), 5, 5)
    X, Y = mesh.nodes(ops)
    u = to_conserved(np.stack([1 + X + 2 * Y, 0 * X, 0 * X, 1 + 0 * X, 0 * X, 1 + 0 * X], axis=-1))
    arc, prim = extract_diagonal(u, mesh, ops)
    x = arc / np.sqrt(2)
    assert np.allclose(prim[:, 0], 1 + x + 2 * (1 - x))


def test_diagonal_needs_square_domain():
    ops = sbp_operators(1)
    mesh = Mesh2D.uniform((0, 1), (0, 2), 2, 2)
    with pytest.raises(ValueError):
        extract_diagonal(np.ones((2, 2, 2, 2, 6)), mesh, ops)
