"""Drive a registry case from its initial data to the final time."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cases import CaseSpec, get_case
from .limiters import LimiterConfig, apply_limiters
from .model import check_admissible, to_conserved
from .sbp import SbpOperators, sbp_operators
from .solver1d import Mesh1D, residual_1d, total_conserved, total_entropy
from .solver2d import Mesh2D, residual_2d, total_conserved_2d, total_entropy_2d
from .timestepping import TimeConfig, compute_dt_1d, compute_dt_2d, integrate

log = logging.getLogger(__name__)


@dataclass
class RunResult:
    case: CaseSpec
    order: int
    mesh: object
    ops: SbpOperators
    u: np.ndarray
    t: float
    steps: int
    limiters: LimiterConfig
    # rows (t, total_entropy)
    entropy: list = field(default_factory=list)
    # rows (t, dt, 6 conserved totals)
    diagnostics: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.case.dim

    def entropy_array(self) -> np.ndarray:
        return np.array(self.entropy, dtype=float).reshape(-1, 2)

    def nodes(self):
        return self.mesh.nodes(self.ops)


def build_mesh(case: CaseSpec, n=None, ny=None):
    """Uniform mesh of ``case``; in 2D an explicit ``n`` without ``ny`` gives
    an ``n`` by ``n`` mesh."""
    if ny is None:
        ny = case.ny if n is None else n
    n = case.n if n is None else int(n)
    if case.dim == 1:
        return Mesh1D.uniform(*case.xlim, n)
    ny = int(ny or n)
    return Mesh2D.uniform(case.xlim, case.ylim, n, ny)


def initial_field(case: CaseSpec, mesh, ops: SbpOperators) -> np.ndarray:
    if case.dim == 1:
        x = mesh.nodes(ops)
        q = case.initial(x, mesh.centers[:, None])
    else:
        X, Y = mesh.nodes(ops)
        q = case.initial(X, Y)
    u = to_conserved(np.asarray(q, dtype=float))
    check_admissible(u, "initial state")
    return u


# margin below the cell-mean bound: dt is set from u^n, while wave speeds of
# the intermediate RK stages can be larger near vacuum
POSITIVITY_SAFETY = 0.9


def positivity_cfl(ops: SbpOperators) -> float:
    """CFL cap for bound-preserving runs. Cell means of a forward-Euler stage
    stay admissible for CFL up to half the Gauss-Lobatto end weight,
    ``1 / (k (k + 1))``; the cap keeps a 10% margin below that bound."""
    return POSITIVITY_SAFETY * 0.5 * float(ops.weights[0])


def default_limiters(case: CaseSpec) -> LimiterConfig:
    return LimiterConfig(tvb=case.tvb and case.dim == 1, tvb_M=case.tvb_M, bp=case.bp)


def make_rate(case: CaseSpec, mesh, ops, v_T=None):
    if case.dim == 1:
        def rate(u, t):
            return residual_1d(u, mesh, ops, case.bc_x, case.dW_dx, t)
        return rate

    v_T = case.v_T if v_T is None else v_T
    extra = case.extra_source(v_T) if case.extra_source is not None else None

    def rate(u, t):
        return residual_2d(u, mesh, ops, case.bc_x, case.bc_y, case.dW_dx, case.dW_dy, t, extra)

    return rate


def run_case(
    case,
    order: int = 2,
    n: Optional[int] = None,
    ny: Optional[int] = None,
    cfl: float = 0.2,
    t_end: Optional[float] = None,
    limiters: Optional[LimiterConfig] = None,
    v_T: Optional[float] = None,
    stride: int = 1,
    dt_safety: float = 1.0,
    callback=None,
) -> RunResult:
    """Run ``case`` (a :class:`CaseSpec` or registry name) with ESDG of the
    given order: degree ``order - 1`` elements with SSP-RK of the same order.

    Total entropy and conserved totals are recorded every ``stride`` steps,
    and always at the initial and final time. With the bound-preserving
    limiter active the CFL number is capped at :func:`positivity_cfl`.
    """
    if isinstance(case, str):
        case = get_case(case)
    if order not in (2, 3):
        raise ValueError(f"order must be 2 or 3, got {order}")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    ops = sbp_operators(order - 1)
    limiters = default_limiters(case) if limiters is None else limiters
    if limiters.bp and cfl > positivity_cfl(ops):
        # the bound-preserving limiter relies on admissible cell means
        log.info("cfl %g capped at %g for bound-preserving limiting", cfl, positivity_cfl(ops))
        cfl = positivity_cfl(ops)
    tc = TimeConfig(t_end=case.t_end if t_end is None else t_end, order=order, cfl=cfl, dt_safety_factor=dt_safety)
    mesh = build_mesh(case, n, ny)
    u = initial_field(case, mesh, ops)
    if limiters.active:
        u = _limit(u, limiters, ops, mesh, case)

    if case.dim == 1:
        totals = lambda w: total_conserved(w, mesh, ops)  # noqa: E731
        ent = lambda w: total_entropy(w, mesh, ops)  # noqa: E731
        dt_fn = lambda w: compute_dt_1d(w, mesh, tc.cfl, tc.dt_safety_factor)  # noqa: E731
    else:
        totals = lambda w: total_conserved_2d(w, mesh, ops)  # noqa: E731
        ent = lambda w: total_entropy_2d(w, mesh, ops)  # noqa: E731
        dt_fn = lambda w: compute_dt_2d(w, mesh, tc.cfl, tc.dt_safety_factor)  # noqa: E731

    result = RunResult(case, order, mesh, ops, u, 0.0, 0, limiters)
    result.entropy.append((0.0, ent(u)))
    result.diagnostics.append((0.0, 0.0, *totals(u)))

    def record(step, t, dt, w):
        if step % stride == 0 or t >= tc.t_end:
            result.entropy.append((t, ent(w)))
            result.diagnostics.append((t, dt, *totals(w)))
        if callback is not None:
            callback(step, t, dt, w)

    limiter = (lambda w: _limit(w, limiters, ops, mesh, case)) if limiters.active else None
    rate = make_rate(case, mesh, ops, v_T)
    u, t, steps = integrate(u, rate, dt_fn, tc.t_end, order=order, limiter=limiter, callback=record)
    check_admissible(u, "final state")
    log.info("%s: order %d, %d steps to t=%g", case.name, order, steps, t)
    result.u, result.t, result.steps = u, t, steps
    return result


def _limit(u, limiters, ops, mesh, case):
    if case.dim == 1:
        return apply_limiters(u, limiters, ops, mesh, case.bc_x)
    return apply_limiters(u, limiters, ops)
