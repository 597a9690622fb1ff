"""Post-stage limiters.

``tvb_limit_1d`` is the TVB-modified minmod slope limiter, applied
componentwise to the conserved variables. ``bound_preserving_limit`` scales
each element toward its cell mean until every node is admissible; it works
on 1D ``(N, K, 6)`` and 2D ``(Nx, Ny, K, K, 6)`` fields.
Neither limiter changes cell means.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import PXX, PXY, PYY, RHO, InadmissibleStateError, is_admissible, to_primitive
from .sbp import SbpOperators
from .solver1d import Mesh1D, cell_means, validate_bc

BISECTION_STEPS = 30


@dataclass(frozen=True)
class LimiterConfig:
    tvb: bool = False
    tvb_M: float = 10.0
    bp: bool = False
    bp_epsilon: float = 1e-10

    def __post_init__(self):
        if self.tvb_M < 0:
            raise ValueError("TVB constant M must be non-negative")
        if not self.bp_epsilon > 0:
            raise ValueError("bound-preserving epsilon must be positive")

    @property
    def active(self) -> bool:
        return self.tvb or self.bp


def minmod(a, b, c):
    s = np.sign(a)
    same = (s == np.sign(b)) & (s == np.sign(c))
    return np.where(same, s * np.minimum(np.abs(a), np.minimum(np.abs(b), np.abs(c))), 0.0)


def tvb_minmod(a, b, c, threshold):
    """``a`` itself when ``|a| <= threshold``, else ``minmod(a, b, c)``."""
    return np.where(np.abs(a) <= threshold, a, minmod(a, b, c))


def tvb_limit_1d(u, mesh: Mesh1D, ops: SbpOperators, M=10.0, bc="periodic"):
    """TVB slope limiter on a 1D field of shape ``(N, K, 6)``.

    Components whose end-point deviations from the cell mean are modified
    by the TVB minmod are replaced by the linear polynomial through the mean
    with the limited slope; all other components are returned untouched.
    """
    validate_bc(bc)
    if np.isinf(M):
        return u.copy()
    mean = cell_means(u, ops)
    if bc == "periodic":
        ext = np.concatenate([mean[-1:], mean, mean[:1]])
    else:
        ext = np.concatenate([mean[:1], mean, mean[-1:]])
    forward = ext[2:] - ext[1:-1]
    backward = ext[1:-1] - ext[:-2]
    threshold = (M * mesh.dx**2)[:, None]

    dev_right = u[:, -1, :] - mean
    dev_left = mean - u[:, 0, :]
    lim_right = tvb_minmod(dev_right, forward, backward, threshold)
    lim_left = tvb_minmod(dev_left, forward, backward, threshold)
    altered = (lim_right != dev_right) | (lim_left != dev_left)
    if not np.any(altered):
        return u.copy()

    slope = minmod(0.5 * (dev_right + dev_left), forward, backward)
    linear = mean[:, None, :] + slope[:, None, :] * ops.nodes[None, :, None]
    return np.where(altered[:, None, :], linear, u)


def _node_weights(ops: SbpOperators, dim: int):
    w = 0.5 * ops.weights
    if dim == 1:
        return w
    return np.outer(w, w).ravel()


def _margin_ok(u, eps):
    """Admissibility with margin: ``rho >= eps`` and ``p - eps*I`` PSD."""
    rho = u[..., RHO]
    ok = (rho >= eps) & np.all(np.isfinite(u), axis=-1)
    safe = u.copy()
    safe[..., RHO] = np.where(ok, rho, 1.0)
    q = to_primitive(safe)
    a = q[..., PXX] - eps
    b = q[..., PYY] - eps
    return ok & (a >= 0) & (b >= 0) & (a * b - q[..., PXY] ** 2 >= 0)


def bound_preserving_limit(u, ops: SbpOperators, epsilon=1e-10, return_theta=False):
    """Scale nodal deviations from the cell mean by the largest feasible
    ``theta`` in ``[0, 1]`` (found by bisection) per element."""
    u = np.asarray(u)
    dim = {3: 1, 5: 2}.get(u.ndim)
    if dim is None:
        raise ValueError(f"expected a 1D (N, K, 6) or 2D (Nx, Ny, K, K, 6) field, got {u.shape}")
    elem_shape = u.shape[:dim]
    flat = u.reshape(int(np.prod(elem_shape)), -1, 6)
    w = _node_weights(ops, dim)
    mean = np.einsum("n,enc->ec", w, flat)

    mean_ok = is_admissible(mean)
    if not np.all(mean_ok):
        bad = int(np.argmin(mean_ok))
        raise InadmissibleStateError(
            f"inadmissible cell mean in element {np.unravel_index(bad, elem_shape)}",
            location=tuple(int(i) for i in np.unravel_index(bad, elem_shape)),
        )

    theta = np.ones(flat.shape[0])
    need = ~np.all(_margin_ok(flat, epsilon), axis=1)
    if np.any(need):
        idx = np.nonzero(need)[0]
        m = mean[idx][:, None, :]
        d = flat[idx] - m
        # mean lacking the epsilon margin (but admissible) is flattened
        lo = np.zeros(idx.size)
        hi = np.ones(idx.size)
        mean_margin = _margin_ok(mean[idx], epsilon)
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            ok = np.all(_margin_ok(m + mid[:, None, None] * d, epsilon), axis=1)
            lo = np.where(ok, mid, lo)
            hi = np.where(ok, hi, mid)
        theta[idx] = np.where(mean_margin, lo, 0.0)

    out = mean[:, None, :] + theta[:, None, None] * (flat - mean[:, None, :])
    keep = theta == 1.0
    out[keep] = flat[keep]
    out = out.reshape(u.shape)
    if return_theta:
        return out, theta.reshape(elem_shape)
    return out


def apply_limiters(u, config: LimiterConfig, ops: SbpOperators, mesh=None, bc="periodic"):
    """TVB first (1D only), bound preserving last."""
    if config.tvb and u.ndim == 3:
        u = tvb_limit_1d(u, mesh, ops, config.tvb_M, bc)
    if config.bp:
        u = bound_preserving_limit(u, ops, config.bp_epsilon)
    return u
