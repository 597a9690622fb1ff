"""SSP Runge-Kutta integrators (Shu-Osher form) and CFL step control."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import max_abs_speed_x, swap_xy, to_primitive

# Shu-Osher coefficients: u^(i) = a_i u^n + b_i (u^(i-1) + dt L(u^(i-1)))
# together with the stage time offset c_i (fraction of dt) of L's argument.
SSP_TABLEAUS = {
    2: ((0.0, 1.0, 0.0), (0.5, 0.5, 1.0)),
    3: ((0.0, 1.0, 0.0), (0.75, 0.25, 1.0), (1.0 / 3.0, 2.0 / 3.0, 0.5)),
}


@dataclass(frozen=True)
class TimeConfig:
    t_end: float
    order: int = 2
    cfl: float = 0.2
    dt_safety_factor: float = 1.0

    def __post_init__(self):
        if self.order not in SSP_TABLEAUS:
            raise ValueError(f"SSP-RK order must be one of {sorted(SSP_TABLEAUS)}, got {self.order}")
        if not self.cfl > 0:
            raise ValueError("cfl must be positive")
        if not self.dt_safety_factor > 0:
            raise ValueError("dt_safety_factor must be positive")
        if not self.t_end >= 0:
            raise ValueError("t_end must be non-negative")


def ssp_rk_step(u, rate, dt, t=0.0, order=2, limiter=None):
    """Advance ``u`` by one SSP-RK step.

    ``rate(u, t)`` is the semi-discrete right-hand side and ``limiter(u)``,
    when given, is applied after every stage.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    stage = u
    for a, b, c in SSP_TABLEAUS[order]:
        euler = stage + dt * rate(stage, t + c * dt)
        stage = euler if a == 0.0 else a * u + b * euler
        if limiter is not None:
            stage = limiter(stage)
    return stage


def compute_dt_1d(u, mesh, cfl=0.2, safety=1.0):
    """``safety * cfl * min(dx) / max(|vx| + sqrt(3 pxx / rho))``."""
    lam = float(np.max(max_abs_speed_x(to_primitive(u))))
    return safety * cfl * float(np.min(mesh.dx)) / lam


def compute_dt_2d(u, mesh, cfl=0.2, safety=1.0):
    """``safety * cfl / max over nodes of (lambda_x / dx + lambda_y / dy)``."""
    q = to_primitive(u)
    lam_x = max_abs_speed_x(q) / mesh.dx[:, None, None, None]
    lam_y = max_abs_speed_x(swap_xy(q)) / mesh.dy[None, :, None, None]
    return safety * cfl / float(np.max(lam_x + lam_y))


def integrate(u, rate, dt_fn, t_end, order=2, t0=0.0, limiter=None, callback=None, max_steps=10**7):
    """Step from ``t0`` to ``t_end``; the last step is clamped to land on it.

    ``dt_fn(u)`` is evaluated before every step. ``callback(step, t, dt, u)``
    is called after each step. Returns ``(u, t, steps)``.
    """
    t = t0
    steps = 0
    while t < t_end:
        if steps >= max_steps:
            raise RuntimeError(f"exceeded {max_steps} steps before t_end={t_end}")
        dt = dt_fn(u)
        if not np.isfinite(dt) or dt <= 0:
            raise FloatingPointError(f"invalid time step {dt} at t={t}")
        last = t + dt >= t_end
        if last:
            dt = t_end - t
        u = ssp_rk_step(u, rate, dt, t, order, limiter)
        t = t_end if last else t + dt
        steps += 1
        if callback is not None:
            callback(steps, t, dt, u)
    return u, t, steps
