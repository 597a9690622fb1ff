import numpy as np
import pytest

from tmdg.cases import CASES, available_cases, exact_smooth, exact_smooth_source, get_case
from tmdg.model import is_admissible, to_primitive
from tmdg.runner import build_mesh, initial_field, run_case
from tmdg.sbp import sbp_operators

REGISTRY = {
    "smooth", "smooth_source", "sod", "two_shocks", "two_rarefactions", "near_vacuum",
    "gaussian_source_1d", "shu_osher", "near_vacuum_2d", "uniform_plasma_2d", "realistic_2d",
}


def test_registry_names():
    assert set(available_cases()) == REGISTRY


def test_unknown_case_lists_registry():
    with pytest.raises(KeyError) as exc:
        get_case("blast")
    assert "sod" in str(exc.value) and "realistic_2d" in str(exc.value)


@pytest.mark.parametrize(
    "name, side, state",
    [
        ("sod", "left", (1, 0, 0, 2, 0.05, 0.6)),
        ("sod", "right", (0.125, 0, 0, 0.2, 0.1, 0.2)),
        ("two_shocks", "left", (1, 1, 1, 1, 0, 1)),
        ("two_shocks", "right", (1, -1, -1, 1, 0, 1)),
        ("two_rarefactions", "left", (2, -0.5, -0.5, 1.5, 0.5, 1.5)),
        ("two_rarefactions", "right", (1, 1, 1, 1, 0, 1)),
        ("near_vacuum", "left", (1, -5, 0, 2, 0, 2)),
        ("near_vacuum", "right", (1, 5, 0, 2, 0, 2)),
        ("gaussian_source_1d", "left", (1, -4, 0, 9, 7, 9)),
        ("gaussian_source_1d", "right", (1, 4, 0, 9, 7, 9)),
        ("shu_osher", "left", (3.857143, 2.699369, 0, 10.33333, 0, 10.33333)),
    ],
)
def test_riemann_states(name, side, state):
    assert np.allclose(getattr(get_case(name), side), state)


@pytest.mark.parametrize(
    "name, xlim, t_end",
    [
        ("sod", (-0.5, 0.5), 0.125),
        ("two_shocks", (-0.5, 0.5), 0.125),
        ("two_rarefactions", (-0.5, 0.5), 0.15),
        ("near_vacuum", (-0.5, 0.5), 0.05),
        ("gaussian_source_1d", (0.0, 4.0), 0.1),
        ("shu_osher", (-5.0, 5.0), 1.8),
        ("near_vacuum_2d", (-2.0, 2.0), 0.05),
        ("uniform_plasma_2d", (0.0, 4.0), 0.1),
        ("realistic_2d", (0.0, 100.0), 0.5),
    ],
)
def test_domains_and_times(name, xlim, t_end):
    case = get_case(name)
    assert case.xlim == xlim and case.t_end == t_end


def test_potentials():
    assert get_case("uniform_plasma_2d").W(2.0, 2.0, 0.0) == pytest.approx(25.0)
    assert get_case("gaussian_source_1d").W(2.0, 0.0) == pytest.approx(25.0)
    assert get_case("realistic_2d").W(50.0, 50.0, 0.0) == pytest.approx(1.0)
    assert get_case("realistic_2d").dW_dy is None


@pytest.mark.parametrize("name", sorted(n for n, c in CASES.items() if c.W is not None))
def test_gradients_match_potential(name):
    case = get_case(name)
    rng = np.random.default_rng(2)
    h = 1e-6
    if case.dim == 1:
        x = rng.uniform(*case.xlim, 20)
        fd = (case.W(x + h, 0.1) - case.W(x - h, 0.1)) / (2 * h)
        assert np.allclose(case.dW_dx(x, 0.1), fd, rtol=1e-6, atol=1e-6)
        return
    x = rng.uniform(*case.xlim, 20)
    y = rng.uniform(*case.ylim, 20)
    fd = (case.W(x + h, y, 0.1) - case.W(x - h, y, 0.1)) / (2 * h)
    assert np.allclose(case.dW_dx(x, y, 0.1), fd, rtol=1e-6, atol=1e-6)
    if case.dW_dy is not None:
        fd = (case.W(x, y + h, 0.1) - case.W(x, y - h, 0.1)) / (2 * h)
        assert np.allclose(case.dW_dy(x, y, 0.1), fd, rtol=1e-6, atol=1e-6)


def test_exact_solutions():
    assert exact_smooth(0.25, 0.0)[0] == pytest.approx(3.0)
    x = np.linspace(-0.5, 0.5, 11)
    assert np.allclose(exact_smooth(x, 0.3), exact_smooth(x - 0.3, 0.0))
    assert exact_smooth_source(0.0, 0.0)[3] == pytest.approx(1.625)
    assert np.allclose(exact_smooth_source(x, 0.3), exact_smooth_source(x - 0.3, 0.0))


@pytest.mark.parametrize("name", sorted(REGISTRY))
@pytest.mark.parametrize("k", [1, 2])
def test_initial_states_admissible(name, k):
    case = get_case(name)
    ops = sbp_operators(k)
    mesh = build_mesh(case, 20 if case.dim == 2 else None)
    assert np.all(is_admissible(initial_field(case, mesh, ops)))


def test_jump_resolved_per_element():
    case = get_case("sod")
    ops = sbp_operators(1)
    mesh = build_mesh(case)
    q = to_primitive(initial_field(case, mesh, ops))
    # the jump sits on the interface between elements 49 and 50
    assert np.allclose(q[49, :, 0], 1.0) and np.allclose(q[50, :, 0], 0.125)


def test_shu_osher_sampled_at_nodes():
    case = get_case("shu_osher")
    ops = sbp_operators(2)
    mesh = build_mesh(case)
    x = mesh.nodes(ops)
    q = to_primitive(initial_field(case, mesh, ops))
    right = x > -4.0
    assert np.allclose(q[right][:, 0], 1.0 + 0.2 * np.sin(5.0 * x[right]), rtol=1e-14)


def test_near_vacuum_2d_origin_regularized():
    case = get_case("near_vacuum_2d")
    X, Y = np.zeros(1), np.zeros(1)
    q = case.initial(X, Y)
    assert np.allclose(q[0, 1:3], 0.0)
    q = case.initial(np.array([0.3]), np.array([0.4]))
    assert np.allclose(q[0, 1:3], [8 * 0.6, 8 * 0.8])


@pytest.mark.parametrize("name", ["two_shocks", "near_vacuum"])
def test_mirror_symmetric_riemann_density(name):
    # x -> -x with v -> -v maps the left state onto the right one
    res = run_case(name, order=2, n=50, t_end=0.02)
    rho = to_primitive(res.u)[..., 0]
    assert np.max(np.abs(rho - rho[::-1, ::-1])) < 1e-10
