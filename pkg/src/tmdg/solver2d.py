"""Tensor-product entropy stable DG residual on rectangular meshes.

A 2D field has shape ``(Nx, Ny, k + 1, k + 1, 6)`` indexed ``[i, j, p, q]``:
node ``(p, q)`` of element ``(i, j)`` sits at ``(x_i(xi_p), y_j(xi_q))``.
The x-direction term applies the 1D line operator along every row ``q``;
the y-direction term is the same operator applied to the transposed,
x/y-exchanged field, so the scheme commutes exactly with the exchange.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import check_admissible, entropy, source_x, source_y, swap_xy, to_primitive
from .sbp import SbpOperators
from .solver1d import Mesh1D, line_flux_divergence, validate_bc

# (i, j, p, q, c) -> (j, q, i, p, c): lines along x
_TO_X_LINES = (1, 3, 0, 2, 4)
_FROM_X_LINES = (2, 0, 3, 1, 4)
# (i, j, p, q, c) -> (i, p, j, q, c): lines along y (self-inverse)
_Y_LINES = (0, 2, 1, 3, 4)


@dataclass(frozen=True)
class Mesh2D:
    x: Mesh1D
    y: Mesh1D

    @classmethod
    def uniform(cls, xlim, ylim, nx, ny):
        return cls(Mesh1D.uniform(*xlim, nx), Mesh1D.uniform(*ylim, ny))

    @property
    def shape(self):
        return self.x.n_elements, self.y.n_elements

    @property
    def dx(self):
        return self.x.dx

    @property
    def dy(self):
        return self.y.dx

    def nodes(self, ops: SbpOperators):
        """Node coordinate arrays ``X, Y`` of shape ``(Nx, Ny, k + 1, k + 1)``."""
        xn = self.x.nodes(ops)
        yn = self.y.nodes(ops)
        X = np.broadcast_to(xn[:, None, :, None], (xn.shape[0], yn.shape[0], xn.shape[1], yn.shape[1]))
        Y = np.broadcast_to(yn[None, :, None, :], X.shape)
        return X, Y


def project_2d(func, mesh: Mesh2D, ops: SbpOperators):
    X, Y = mesh.nodes(ops)
    return np.asarray(func(X, Y), dtype=float)


def transpose_field(u):
    """Mirror a field across ``x = y``: transpose elements/nodes and exchange
    the x/y components. Only meaningful when ``Nx == Ny``."""
    return swap_xy(np.transpose(u, (1, 0, 3, 2, 4)))


def residual_2d(
    u,
    mesh: Mesh2D,
    ops: SbpOperators,
    bc_x="periodic",
    bc_y="periodic",
    dW_dx=None,
    dW_dy=None,
    t=0.0,
    extra_source=None,
):
    """Time derivative of a 2D nodal field.

    ``dW_dx(X, Y, t)`` / ``dW_dy(X, Y, t)`` are analytic gradients of the
    laser potential. ``extra_source(u, X, Y, t)`` returns an additional
    ``(..., 6)`` rate, e.g. an energy absorption term.
    """
    validate_bc(bc_x)
    validate_bc(bc_y)
    check_admissible(u, "nodal state (i, j, p, q)")
    q = to_primitive(u)

    ux = np.transpose(u, _TO_X_LINES)
    rate_x = line_flux_divergence(ux, mesh.dx, ops, bc_x, q=np.transpose(q, _TO_X_LINES))
    rate_x = np.transpose(rate_x, _FROM_X_LINES)

    uy = swap_xy(np.transpose(u, _Y_LINES))
    qy = swap_xy(np.transpose(q, _Y_LINES))
    rate_y = line_flux_divergence(uy, mesh.dy, ops, bc_y, q=qy)
    rate_y = np.transpose(swap_xy(rate_y), _Y_LINES)

    rate = rate_x + rate_y
    if dW_dx is None and dW_dy is None and extra_source is None:
        return rate
    X, Y = mesh.nodes(ops)
    src = np.zeros_like(u)
    if dW_dx is not None:
        src = source_x(u, dW_dx(X, Y, t))
    if dW_dy is not None:
        src = src + source_y(u, dW_dy(X, Y, t))
    if extra_source is not None:
        src = src + extra_source(u, X, Y, t)
    return rate + src


def quadrature_weights_2d(mesh: Mesh2D, ops: SbpOperators):
    wx = 0.5 * mesh.dx[:, None] * ops.weights[None, :]
    wy = 0.5 * mesh.dy[:, None] * ops.weights[None, :]
    return wx[:, None, :, None] * wy[None, :, None, :]


def total_entropy_2d(u, mesh: Mesh2D, ops: SbpOperators) -> float:
    return float(np.sum(quadrature_weights_2d(mesh, ops) * entropy(u)))


def total_conserved_2d(u, mesh: Mesh2D, ops: SbpOperators):
    return np.einsum("ijpq,ijpqc->c", quadrature_weights_2d(mesh, ops), u)
