"""Semi-discrete entropy stable nodal DG residual in one space dimension.

A field is an array of shape ``(N, k + 1, 6)``: element, Gauss-Lobatto node,
conserved component. For node ``j`` of an element of width ``dx``

    du_j/dt = -(4/dx) sum_l D_jl f*(u_j, u_l)
              + (2/dx) (tau_j / w_j) (f(u_j) - fhat_j) + s_x(u_j)

with ``f*`` the entropy conservative flux and ``fhat`` the interface flux at
the element ends (zero for interior nodes).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fluxes import ec_flux_x_nodes, lax_friedrichs_x_prim, node_quantities
from .model import _flux_x_prim, check_admissible, entropy, source_x, to_primitive
from .sbp import SbpOperators

BOUNDARY_KINDS = ("periodic", "outflow")


def validate_bc(bc):
    if bc not in BOUNDARY_KINDS:
        raise ValueError(f"unknown boundary condition {bc!r}; expected one of {BOUNDARY_KINDS}")
    return bc


@dataclass(frozen=True)
class Mesh1D:
    """Elements ``[x_{i-1/2}, x_{i+1/2}]`` given by their interface coordinates."""

    interfaces: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.interfaces, dtype=float)
        if x.ndim != 1 or x.size < 2:
            raise ValueError("need at least two interface coordinates")
        if np.any(np.diff(x) <= 0):
            raise ValueError("interface coordinates must be strictly increasing")
        object.__setattr__(self, "interfaces", x)

    @classmethod
    def uniform(cls, a, b, n):
        return cls(np.linspace(a, b, n + 1))

    @property
    def n_elements(self) -> int:
        return self.interfaces.size - 1

    @property
    def dx(self) -> np.ndarray:
        return np.diff(self.interfaces)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.interfaces[1:] + self.interfaces[:-1])

    @property
    def length(self) -> float:
        return float(self.interfaces[-1] - self.interfaces[0])

    def nodes(self, ops: SbpOperators) -> np.ndarray:
        """Physical node coordinates, shape ``(N, k + 1)``; end nodes coincide
        exactly with the interface coordinates."""
        xi = ops.nodes[None, :]
        return 0.5 * (1.0 - xi) * self.interfaces[:-1, None] + 0.5 * (1.0 + xi) * self.interfaces[1:, None]


def project(func, mesh: Mesh1D, ops: SbpOperators):
    """Nodal interpolation of ``func(x) -> (..., 6)`` conserved states."""
    return np.asarray(func(mesh.nodes(ops)), dtype=float)


def interface_states(u, bc):
    """Left and right states at all ``N + 1`` interfaces of a line of elements.

    ``u`` has shape ``(..., N, K, 6)``; returns two arrays ``(..., N + 1, 6)``.
    Outflow uses the adjacent boundary node itself as the exterior state.
    """
    right_trace = u[..., :, -1, :]
    left_trace = u[..., :, 0, :]
    if bc == "periodic":
        ghost_left = right_trace[..., -1:, :]
        ghost_right = left_trace[..., :1, :]
    elif bc == "outflow":
        ghost_left = left_trace[..., :1, :]
        ghost_right = right_trace[..., -1:, :]
    else:
        validate_bc(bc)
    uL = np.concatenate([ghost_left, right_trace], axis=-2)
    uR = np.concatenate([left_trace, ghost_right], axis=-2)
    return uL, uR


def line_flux_divergence(u, dx, ops: SbpOperators, bc, interface_flux=None, q=None):
    """Flux part of the rate for lines of elements laid out as ``(..., N, K, 6)``.

    ``dx`` has shape ``(N,)``. ``interface_flux(uL, uR)`` defaults to the local
    Lax-Friedrichs flux.
    """
    if q is None:
        q = to_primitive(u)
    a = node_quantities(q)
    pair = ec_flux_x_nodes(a[..., :, :, None, :], a[..., :, None, :, :])
    volume = np.einsum("jl,...njlc->...njc", ops.D, pair)
    dx = np.asarray(dx, dtype=u.dtype)
    rate = -(4.0 / dx)[:, None, None] * volume

    uL, uR = interface_states(u, bc)
    if interface_flux is None:
        qL, qR = interface_states(q, bc)
        fhat = lax_friedrichs_x_prim(uL, uR, qL, qR)
    else:
        fhat = interface_flux(uL, uR)
    f_ends = _flux_x_prim(q[..., :, [0, -1], :])
    w = ops.weights
    scale = (2.0 / dx)[:, None]
    rate[..., :, 0, :] -= scale / w[0] * (f_ends[..., :, 0, :] - fhat[..., :-1, :])
    rate[..., :, -1, :] += scale / w[-1] * (f_ends[..., :, 1, :] - fhat[..., 1:, :])
    return rate


def residual_1d(u, mesh: Mesh1D, ops: SbpOperators, bc="periodic", dW_dx=None, t=0.0, interface_flux=None):
    """Time derivative of the nodal field ``u`` (shape ``(N, k + 1, 6)``).

    ``dW_dx(x, t)`` is the analytic x-derivative of the laser potential; omit
    it for source-free problems.
    """
    validate_bc(bc)
    check_admissible(u, "nodal state (element, node)")
    q = to_primitive(u)
    rate = line_flux_divergence(u, mesh.dx, ops, bc, interface_flux, q=q)
    if dW_dx is not None:
        rate += source_x(u, dW_dx(mesh.nodes(ops), t))
    return rate


def interface_fluxes(u, ops, bc, interface_flux=None):
    """The ``N + 1`` interface fluxes used by :func:`residual_1d`."""
    uL, uR = interface_states(u, bc)
    if interface_flux is None:
        return lax_friedrichs_x_prim(uL, uR, to_primitive(uL), to_primitive(uR))
    return interface_flux(uL, uR)


def quadrature_weights(mesh: Mesh1D, ops: SbpOperators) -> np.ndarray:
    """``(dx_i / 2) w_j`` for every node, shape ``(N, k + 1)``."""
    return 0.5 * mesh.dx[:, None] * ops.weights[None, :]


def total_entropy(u, mesh: Mesh1D, ops: SbpOperators) -> float:
    return float(np.sum(quadrature_weights(mesh, ops) * entropy(u)))


def total_conserved(u, mesh: Mesh1D, ops: SbpOperators) -> np.ndarray:
    return np.einsum("nj,njc->c", quadrature_weights(mesh, ops), u)


def cell_means(u, ops: SbpOperators) -> np.ndarray:
    return 0.5 * np.einsum("j,...jc->...c", ops.weights, u)
