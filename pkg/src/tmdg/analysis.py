"""Error norms, convergence studies, entropy histories and diagonal cuts."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cases import get_case
from .limiters import LimiterConfig
from .model import RHO, to_primitive
from .runner import RunResult, run_case
from .solver1d import quadrature_weights
from .solver2d import transpose_field


L1_NORMS = ("nodal", "quadrature")


def error_norms(u, exact, mesh, ops, t, component=RHO, l1="nodal"):
    """L1 and max-norm errors of one primitive component at the nodes.

    ``exact(x, t)`` returns primitive states at the node coordinates.
    ``l1="nodal"`` sums ``dx_i * |e_ij|`` over every node (the convention of
    the published accuracy tables); ``l1="quadrature"`` weights the nodal
    errors with the Gauss-Lobatto rule, ``(dx_i / 2) w_j |e_ij|``.
    """
    if l1 not in L1_NORMS:
        raise ValueError(f"l1 must be one of {L1_NORMS}")
    x = mesh.nodes(ops)
    err = np.abs(to_primitive(u)[..., component] - np.asarray(exact(x, t))[..., component])
    if l1 == "nodal":
        l1_err = np.sum(mesh.dx[:, None] * err)
    else:
        l1_err = np.sum(quadrature_weights(mesh, ops) * err)
    return float(l1_err), float(np.max(err))


def observed_orders(ns, errors):
    """``log(e_i / e_{i+1}) / log(N_{i+1} / N_i)``; NaN for the first grid."""
    ns = np.asarray(ns, dtype=float)
    e = np.asarray(errors, dtype=float)
    out = np.full(e.shape, np.nan)
    out[1:] = np.log(e[:-1] / e[1:]) / np.log(ns[1:] / ns[:-1])
    return out


@dataclass
class ErrorReport:
    case: str
    order: int
    grids: list
    l1: list
    linf: list

    @property
    def l1_orders(self):
        return observed_orders(self.grids, self.l1)

    @property
    def linf_orders(self):
        return observed_orders(self.grids, self.linf)

    def rows(self):
        for row in zip(self.grids, self.l1, self.l1_orders, self.linf, self.linf_orders):
            yield row


def convergence_study(case, order, grids, component=RHO, l1="nodal", **run_kw) -> ErrorReport:
    """Run ``case`` on each grid and compare with its exact solution at
    ``t_end``. Limiters default to off."""
    if isinstance(case, str):
        case = get_case(case)
    if case.exact is None:
        raise ValueError(f"case {case.name!r} has no exact solution")
    grids = [int(g) for g in grids]
    if len(grids) < 2:
        raise ValueError("a convergence study needs at least two grids")
    run_kw.setdefault("limiters", LimiterConfig())
    l1_errors, linf_errors = [], []
    for n in grids:
        res = run_case(case, order=order, n=n, **run_kw)
        a, b = error_norms(res.u, case.exact, res.mesh, res.ops, res.t, component, l1)
        l1_errors.append(a)
        linf_errors.append(b)
    return ErrorReport(case.name, order, grids, l1_errors, linf_errors)


def entropy_series(run: RunResult) -> np.ndarray:
    """``(t, total_entropy)`` rows as recorded during the run."""
    return run.entropy_array()


def max_entropy_increase(series) -> float:
    """Largest step-to-step increase of total entropy, relative to the largest
    ``|S(t)|`` in the series (``|S(0)|`` alone vanishes for states with
    ``det p = rho**4``)."""
    s = np.asarray(series, dtype=float)
    if len(s) < 2:
        return 0.0
    scale = float(np.max(np.abs(s[:, 1])))
    scale = scale if scale > 0 else 1.0
    return float(np.max(np.diff(s[:, 1])) / scale)


def extract_diagonal(u, mesh, ops):
    """Nodal values along the anti-diagonal ``x + y = x0 + x1`` of a square
    domain, ordered by x.

    Returns ``(arc, prim)``: arc length measured from the corner ``(x0, y1)``
    and the primitive states, shape ``(n, 6)``.
    """
    (x0, x1), (y0, y1) = (mesh.x.interfaces[[0, -1]], mesh.y.interfaces[[0, -1]])
    if not (np.isclose(x0, y0) and np.isclose(x1, y1)):
        raise ValueError("extract_diagonal needs a square domain")
    nx, ny = mesh.shape
    K = ops.degree + 1
    X, Y = mesh.nodes(ops)
    xs = X[:, 0, :, 0].ravel()
    target = x0 + x1 - xs
    mirrored = nx == ny and np.allclose(mesh.y.interfaces, (x0 + x1) - mesh.x.interfaces[::-1])
    if mirrored:
        ii, pp = np.divmod(np.arange(nx * K), K)
        jj, qq = nx - 1 - ii, K - 1 - pp
    else:
        ys = Y[0, :, 0, :].ravel()
        flat = np.argmin(np.abs(ys[None, :] - target[:, None]), axis=1)
        ii, pp = np.divmod(np.arange(nx * K), K)
        jj, qq = np.divmod(flat, K)
    prim = to_primitive(u[ii, jj, pp, qq])
    arc = np.sqrt(2.0) * (xs - x0)
    return arc, prim


def diagonal_midpoint_density(u, mesh, ops) -> float:
    """Density at the centre of the diagonal cut (mean of the nearest nodes)."""
    arc, prim = extract_diagonal(u, mesh, ops)
    mid = 0.5 * (arc[0] + arc[-1])
    d = np.abs(arc - mid)
    near = d <= d.min() + 1e-12 * max(1.0, abs(mid))
    return float(np.mean(prim[near, RHO]))


def transpose_symmetry_defect(u) -> float:
    """Max difference between a 2D field and its mirror across ``x = y``."""
    if u.shape[0] != u.shape[1]:
        raise ValueError("the mirror across x = y needs Nx == Ny")
    return float(np.max(np.abs(u - transpose_field(u))))
