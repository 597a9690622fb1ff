"""Ten-moment Gaussian closure physics in two space dimensions.

States are numpy arrays whose last axis has length 6. The conserved
ordering is ``(rho, rho*vx, rho*vy, Exx, Exy, Eyy)`` and the primitive
ordering is ``(rho, vx, vy, pxx, pxy, pyy)``. All functions broadcast over
leading axes and preserve the floating dtype of their input, so they can be
evaluated in ``np.longdouble`` as well as ``float64``.

Entropy framework
-----------------
With ``s = ln(det(p) / rho**4)`` the entropy pair is

    U = -rho s,    F = -rho vx s,    G = -rho vy s.

Note the sign of ``F`` and ``G``: only this choice satisfies ``F' = U' f'``.
The entropy variables are the exact gradient ``v = dU/du``; in primitive
variables

    v1 = 4 - s - rho (pyy vx^2 + pxx vy^2 - 2 pxy vx vy) / det
    v2 = 2 rho (pyy vx - pxy vy) / det
    v3 = 2 rho (pxx vy - pxy vx) / det
    v4 = -rho pyy / det,  v5 = 2 rho pxy / det,  v6 = -rho pxx / det
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NVARS = 6
RHO, MX, MY, EXX, EXY, EYY = range(NVARS)
VX, VY, PXX, PXY, PYY = MX, MY, EXX, EXY, EYY

# x <-> y exchange of a state vector (an involution)
SWAP_XY = np.array([RHO, MY, MX, EYY, EXY, EXX])


class InadmissibleStateError(ValueError):
    """Raised when a state leaves the admissible set (rho > 0, p SPD)."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


def _as_state(u):
    u = np.asarray(u)
    if not np.issubdtype(u.dtype, np.floating):
        u = u.astype(float)
    if u.shape[-1] != NVARS:
        raise ValueError(f"state arrays need a trailing axis of length {NVARS}, got {u.shape}")
    return u


def swap_xy(u):
    """Exchange the roles of x and y in a conserved or primitive state."""
    return np.asarray(u)[..., SWAP_XY]


def to_primitive(u):
    u = _as_state(u)
    rho = u[..., RHO]
    if np.any(rho == 0):
        raise InadmissibleStateError("zero density: conserved state is not invertible")
    vx = u[..., MX] / rho
    vy = u[..., MY] / rho
    return np.stack(
        [
            rho,
            vx,
            vy,
            u[..., EXX] - rho * vx * vx,
            u[..., EXY] - rho * vx * vy,
            u[..., EYY] - rho * vy * vy,
        ],
        axis=-1,
    )


def to_conserved(q):
    q = _as_state(q)
    rho, vx, vy = q[..., RHO], q[..., VX], q[..., VY]
    return np.stack(
        [
            rho,
            rho * vx,
            rho * vy,
            q[..., PXX] + rho * vx * vx,
            q[..., PXY] + rho * vx * vy,
            q[..., PYY] + rho * vy * vy,
        ],
        axis=-1,
    )


def _flux_x_prim(q):
    rho, vx, vy, pxx, pxy, pyy = np.moveaxis(q, -1, 0)
    mass = rho * vx
    return np.stack(
        [
            mass,
            mass * vx + pxx,
            mass * vy + pxy,
            mass * vx * vx + 3.0 * vx * pxx,
            mass * vx * vy + 2.0 * vx * pxy + vy * pxx,
            mass * vy * vy + vx * pyy + 2.0 * vy * pxy,
        ],
        axis=-1,
    )


def flux_x(u):
    """Physical flux ``f(u)`` in the x direction."""
    return _flux_x_prim(to_primitive(u))


def flux_y(u):
    """Physical flux ``g(u)``; computed as the x flux of the exchanged state."""
    return swap_xy(flux_x(swap_xy(u)))


def pressure_det(q):
    return q[..., PXX] * q[..., PYY] - q[..., PXY] ** 2


def is_admissible(u):
    """Elementwise test for ``rho > 0``, ``pxx > 0`` and ``det(p) > 0``."""
    u = _as_state(u)
    rho = u[..., RHO]
    ok = rho > 0
    safe_rho = np.where(ok, rho, 1.0)
    q = to_primitive(np.concatenate([safe_rho[..., None], u[..., 1:]], axis=-1))
    with np.errstate(invalid="ignore"):
        ok = ok & (q[..., PXX] > 0) & (pressure_det(q) > 0)
        ok &= np.all(np.isfinite(u), axis=-1)
    return ok


def check_admissible(u, what="state"):
    ok = is_admissible(u)
    if not np.all(ok):
        bad = np.argwhere(~np.asarray(ok))
        loc = tuple(int(i) for i in bad[0]) if bad.size else ()
        raise InadmissibleStateError(
            f"inadmissible {what} at index {loc} ({int((~ok).sum())} bad nodes)", location=loc
        )


def wave_speeds(u, n=(1.0, 0.0)):
    """The five characteristic speeds along the unit vector ``n``.

    Ordered ``(vn - c3, vn - c1, vn, vn + c1, vn + c3)`` with
    ``c1 = sqrt(pnn / rho)`` and ``c3 = sqrt(3) c1``.
    """
    u = _as_state(u)
    check_admissible(u)
    q = to_primitive(u)
    nx, ny = n
    if not np.isclose(nx * nx + ny * ny, 1.0):
        raise ValueError("direction must be a unit vector")
    vn = q[..., VX] * nx + q[..., VY] * ny
    pnn = q[..., PXX] * nx * nx + 2.0 * q[..., PXY] * nx * ny + q[..., PYY] * ny * ny
    c1 = np.sqrt(pnn / q[..., RHO])
    c3 = np.sqrt(3.0 * pnn / q[..., RHO])
    return np.stack([vn - c3, vn - c1, vn, vn + c1, vn + c3], axis=-1)


def max_abs_speed_x(q):
    """``|vx| + sqrt(3 pxx / rho)`` from primitive states (no checking)."""
    return np.abs(q[..., VX]) + np.sqrt(3.0 * q[..., PXX] / q[..., RHO])


def max_abs_speed(u, n=(1.0, 0.0)):
    s = wave_speeds(u, n)
    return np.abs(s[..., 2]) + (s[..., 4] - s[..., 2])


def specific_entropy(q):
    return np.log(pressure_det(q) / q[..., RHO] ** 4)


def entropy(u):
    q = to_primitive(u)
    return -q[..., RHO] * specific_entropy(q)


def entropy_flux_x(u):
    q = to_primitive(u)
    return -q[..., RHO] * q[..., VX] * specific_entropy(q)


def entropy_flux_y(u):
    q = to_primitive(u)
    return -q[..., RHO] * q[..., VY] * specific_entropy(q)


def _entropy_variables_prim(q):
    rho, vx, vy, pxx, pxy, pyy = np.moveaxis(q, -1, 0)
    det = pxx * pyy - pxy * pxy
    s = np.log(det / rho**4)
    r = rho / det
    return np.stack(
        [
            4.0 - s - r * (pyy * vx * vx + pxx * vy * vy - 2.0 * pxy * vx * vy),
            2.0 * r * (pyy * vx - pxy * vy),
            2.0 * r * (pxx * vy - pxy * vx),
            -r * pyy,
            2.0 * r * pxy,
            -r * pxx,
        ],
        axis=-1,
    )


def entropy_variables(u):
    return _entropy_variables_prim(to_primitive(u))


def entropy_potential_x(u):
    """``psi_x = v . f(u) - F(u)``."""
    q = to_primitive(u)
    v = _entropy_variables_prim(q)
    F = -q[..., RHO] * q[..., VX] * specific_entropy(q)
    return np.sum(v * _flux_x_prim(q), axis=-1) - F


def entropy_potential_y(u):
    return entropy_potential_x(swap_xy(u))


@dataclass(frozen=True)
class EntropyQuantities:
    entropy: np.ndarray
    entropy_flux_x: np.ndarray
    entropy_flux_y: np.ndarray
    entropy_variables: np.ndarray
    potential_x: np.ndarray
    potential_y: np.ndarray


def entropy_quantities(u) -> EntropyQuantities:
    u = _as_state(u)
    check_admissible(u)
    q = to_primitive(u)
    s = specific_entropy(q)
    rho = q[..., RHO]
    v = _entropy_variables_prim(q)
    F = -rho * q[..., VX] * s
    G = -rho * q[..., VY] * s
    g = swap_xy(_flux_x_prim(swap_xy(q)))
    return EntropyQuantities(
        entropy=-rho * s,
        entropy_flux_x=F,
        entropy_flux_y=G,
        entropy_variables=v,
        potential_x=np.sum(v * _flux_x_prim(q), axis=-1) - F,
        potential_y=np.sum(v * g, axis=-1) - G,
    )


def source_x(u, dW_dx):
    """Laser-plasma source along x for a potential with x-gradient ``dW_dx``."""
    u = _as_state(u)
    dW = np.asarray(dW_dx, dtype=u.dtype)
    rho = u[..., RHO]
    zero = np.zeros(np.broadcast_shapes(rho.shape, dW.shape), dtype=u.dtype)
    return np.stack(
        [
            zero,
            -0.5 * rho * dW + zero,
            zero,
            -u[..., MX] * dW + zero,
            -0.5 * u[..., MY] * dW + zero,
            zero,
        ],
        axis=-1,
    )


def source_y(u, dW_dy):
    return swap_xy(source_x(swap_xy(u), dW_dy))
