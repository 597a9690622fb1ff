"""Two-point numerical fluxes.

``ec_flux_x``/``ec_flux_y`` are the entropy conservative fluxes used inside
elements (flux differencing); ``lax_friedrichs_x``/``lax_friedrichs_y`` are
the entropy stable interface fluxes.

For repeated evaluation on the same nodes (the volume terms of the DG
residual) the per-node quantities entering the EC flux are precomputed once
with :func:`node_quantities` and paired with :func:`ec_flux_x_nodes`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    PXX,
    PXY,
    PYY,
    RHO,
    VX,
    VY,
    _flux_x_prim,
    check_admissible,
    max_abs_speed_x,
    swap_xy,
    to_primitive,
)

LOG_MEAN_SERIES_THRESHOLD = 1e-4


def log_mean(a, b):
    """Logarithmic mean ``(b - a) / (ln b - ln a)`` of positive arguments.

    Written as ``(a + b) / 2 * z / artanh(z)`` with ``z = (b - a) / (a + b)``;
    for ``|z| < 1e-4`` the ratio is replaced by its series through ``z**6``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if np.any(a <= 0) or np.any(b <= 0):
        raise ValueError("log_mean requires positive arguments")
    return _log_mean(a, b)


def _log_mean(a, b):
    total = a + b
    z = (b - a) / total
    z2 = z * z
    small = np.abs(z) < LOG_MEAN_SERIES_THRESHOLD
    # artanh(z)/z = 1 + z^2/3 + z^4/5 + z^6/7 + ...
    series = 1.0 + z2 * (1.0 / 3.0 + z2 * (1.0 / 5.0 + z2 / 7.0))
    safe_z = np.where(small, 0.5, z)
    ratio = np.where(small, series, np.arctanh(safe_z) / safe_z)
    return 0.5 * total / ratio


@dataclass(frozen=True)
class BetaQuantities:
    """``D = det(p)/rho``, ``beta = p / D`` and ``D_beta = det(beta)``."""

    D: np.ndarray
    beta_xx: np.ndarray
    beta_xy: np.ndarray
    beta_yy: np.ndarray
    D_beta: np.ndarray


def beta_quantities(q) -> BetaQuantities:
    """Beta quantities from a primitive state."""
    q = np.asarray(q)
    D = (q[..., PXX] * q[..., PYY] - q[..., PXY] ** 2) / q[..., RHO]
    bxx, bxy, byy = q[..., PXX] / D, q[..., PXY] / D, q[..., PYY] / D
    return BetaQuantities(D, bxx, bxy, byy, bxx * byy - bxy * bxy)


# layout of the node-quantity vector used by the EC flux
_NQ_RHO, _NQ_VX, _NQ_VY, _NQ_BXX, _NQ_BXY, _NQ_BYY, _NQ_DB, _NQ_VXX, _NQ_VXY, _NQ_VYY = range(10)


def node_quantities(q):
    """Per-node inputs of the EC flux, stacked on a trailing axis of length 10."""
    b = beta_quantities(q)
    vx, vy = q[..., VX], q[..., VY]
    return np.stack(
        [q[..., RHO], vx, vy, b.beta_xx, b.beta_xy, b.beta_yy, b.D_beta, vx * vx, vx * vy, vy * vy],
        axis=-1,
    )


def ec_flux_x_nodes(aL, aR):
    """EC x-flux between node-quantity arrays ``aL`` and ``aR`` (broadcasting)."""
    mean = 0.5 * (aL + aR)
    rho_ln = _log_mean(aL[..., _NQ_RHO], aR[..., _NQ_RHO])
    db_ln = _log_mean(aL[..., _NQ_DB], aR[..., _NQ_DB])
    rho = mean[..., _NQ_RHO]
    vx, vy = mean[..., _NQ_VX], mean[..., _NQ_VY]
    bxx, bxy, byy = mean[..., _NQ_BXX], mean[..., _NQ_BXY], mean[..., _NQ_BYY]
    p_scale = rho / (bxx * byy - bxy * bxy)

    f1 = rho_ln * vx
    f2 = f1 * vx + p_scale * bxx
    f3 = f1 * vy + p_scale * bxy
    f4 = (bxx / db_ln - mean[..., _NQ_VXX]) * f1 + 2.0 * vx * f2
    f5 = (bxy / db_ln - mean[..., _NQ_VXY]) * f1 + vx * f3 + vy * f2
    f6 = (byy / db_ln - mean[..., _NQ_VYY]) * f1 + 2.0 * vy * f3
    return np.stack([f1, f2, f3, f4, f5, f6], axis=-1)


def ec_flux_x(uL, uR):
    """Entropy conservative flux in x between conserved states ``uL``, ``uR``."""
    check_admissible(uL, "left state")
    check_admissible(uR, "right state")
    return ec_flux_x_nodes(node_quantities(to_primitive(uL)), node_quantities(to_primitive(uR)))


def ec_flux_y(uL, uR):
    """Entropy conservative flux in y.

    Equal to the x flux of the x/y-exchanged states with its output
    exchanged back; componentwise this is the usual closed form for g*.
    """
    return swap_xy(ec_flux_x(swap_xy(uL), swap_xy(uR)))


def lax_friedrichs_x_prim(uL, uR, qL, qR):
    lam = np.maximum(max_abs_speed_x(qL), max_abs_speed_x(qR))
    return 0.5 * (_flux_x_prim(qL) + _flux_x_prim(qR)) - 0.5 * lam[..., None] * (uR - uL)


def lax_friedrichs_x(uL, uR):
    """Local Lax-Friedrichs (Rusanov) flux using the larger of the two
    directional ``|vx| + sqrt(3 pxx / rho)`` as the dissipation speed."""
    uL = np.asarray(uL)
    uR = np.asarray(uR)
    check_admissible(uL, "left state")
    check_admissible(uR, "right state")
    return lax_friedrichs_x_prim(uL, uR, to_primitive(uL), to_primitive(uR))


def lax_friedrichs_y(uL, uR):
    return swap_xy(lax_friedrichs_x(swap_xy(uL), swap_xy(uR)))
