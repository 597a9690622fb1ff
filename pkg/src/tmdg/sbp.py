"""Gauss-Lobatto quadrature and summation-by-parts (SBP) operators.

The nodal basis is the Lagrange basis on the Gauss-Lobatto points of
``[-1, 1]``. With ``D`` the nodal differentiation matrix, ``M`` the diagonal
mass matrix of quadrature weights and ``B = diag(-1, 0, ..., 0, 1)`` the
operators satisfy ``M D + D^T M = B``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_DEGREE = 8


def _legendre(k, x):
    """Return ``(P_k(x), P_k'(x))`` via the three-term recurrences."""
    x = np.asarray(x, dtype=float)
    p_prev, p = np.ones_like(x), x.copy()
    dp_prev, dp = np.zeros_like(x), np.ones_like(x)
    if k == 0:
        return p_prev, dp_prev
    for n in range(2, k + 1):
        p_prev, p = p, ((2 * n - 1) * x * p - (n - 1) * p_prev) / n
        # P_n' = P_{n-2}' + (2n - 1) P_{n-1}
        dp_prev, dp = dp, dp_prev + (2 * n - 1) * p_prev
    return p, dp


def _dlegendre_and_second(k, x):
    p, dp = _legendre(k, x)
    ddp = (2.0 * x * dp - k * (k + 1) * p) / (1.0 - x * x)
    return dp, ddp


def _interior_nodes(k):
    """Roots of ``P_k'`` on (-1, 1): scan-bracketed, Newton refined with a
    bisection fallback whenever a Newton iterate leaves its bracket."""
    if k == 1:
        return np.empty(0)
    # even point count keeps 0 (a root for even k) off the grid
    grid = np.linspace(-1.0, 1.0, 200 * k + 2)[1:-1]
    vals, _ = _dlegendre_and_second(k, grid)
    sign_change = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
    roots = []
    for i in sign_change:
        a, b = grid[i], grid[i + 1]
        fa = _dlegendre_and_second(k, np.array(a))[0]
        x = 0.5 * (a + b)
        for _ in range(100):
            fx, dfx = _dlegendre_and_second(k, np.array(x))
            if fx == 0.0:
                break
            if np.sign(fx) == np.sign(fa):
                a, fa = x, fx
            else:
                b = x
            step = fx / dfx if dfx != 0.0 else np.inf
            x_new = x - step
            if not (a < x_new < b):
                x_new = 0.5 * (a + b)
            if abs(x_new - x) <= 4e-16 * max(1.0, abs(x)):
                x = x_new
                break
            x = x_new
        roots.append(float(x))
    if len(roots) != k - 1:
        raise RuntimeError(f"found {len(roots)} interior Gauss-Lobatto nodes for k={k}")
    return np.array(roots)


@dataclass(frozen=True)
class QuadratureRule:
    """Degree-``k`` Gauss-Lobatto rule: ``k + 1`` nodes including both ends."""

    degree: int
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def npoints(self) -> int:
        return self.degree + 1


def gauss_lobatto(k: int) -> QuadratureRule:
    """Return the Gauss-Lobatto rule with ``k + 1`` points on ``[-1, 1]``.

    The rule is exact for polynomials of degree ``2k - 1``.
    """
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise TypeError(f"degree must be an integer, got {k!r}")
    if not 1 <= k <= MAX_DEGREE:
        raise ValueError(f"Gauss-Lobatto degree must be in [1, {MAX_DEGREE}], got {k}")
    k = int(k)
    inner = _interior_nodes(k)
    # enforce exact symmetry; the scan/Newton result is symmetric to rounding
    inner = 0.5 * (inner - inner[::-1])
    nodes = np.concatenate(([-1.0], inner, [1.0]))
    pk, _ = _legendre(k, nodes)
    weights = 2.0 / (k * (k + 1) * pk**2)
    weights = 0.5 * (weights + weights[::-1])
    for arr in (nodes, weights):
        arr.setflags(write=False)
    return QuadratureRule(k, nodes, weights)


def barycentric_weights(nodes):
    nodes = np.asarray(nodes, dtype=float)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    return 1.0 / np.prod(diff, axis=1)


def lagrange_basis(nodes, x):
    """Evaluate every Lagrange basis polynomial of ``nodes`` at points ``x``.

    Returns an array of shape ``(len(x), len(nodes))``.
    """
    nodes = np.asarray(nodes, dtype=float)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    lam = barycentric_weights(nodes)
    diff = x[:, None] - nodes[None, :]
    exact = diff == 0.0
    diff = np.where(exact, 1.0, diff)
    terms = lam[None, :] / diff
    out = terms / terms.sum(axis=1, keepdims=True)
    hit = exact.any(axis=1)
    out[hit] = exact[hit].astype(float)
    return out


def differentiation_matrix(nodes):
    """``D[j, l] = L_l'(nodes[j])`` with the negative-sum trick on the diagonal."""
    nodes = np.asarray(nodes, dtype=float)
    lam = barycentric_weights(nodes)
    n = nodes.size
    D = np.zeros((n, n))
    for j in range(n):
        for l in range(n):
            if j != l:
                D[j, l] = (lam[l] / lam[j]) / (nodes[j] - nodes[l])
        D[j, j] = -np.sum(D[j, np.arange(n) != j])
    return D


@dataclass(frozen=True)
class SbpOperators:
    rule: QuadratureRule
    D: np.ndarray
    M: np.ndarray
    S: np.ndarray
    B: np.ndarray
    tau: np.ndarray = field(repr=False)

    @property
    def degree(self) -> int:
        return self.rule.degree

    @property
    def nodes(self) -> np.ndarray:
        return self.rule.nodes

    @property
    def weights(self) -> np.ndarray:
        return self.rule.weights

    def basis(self, x):
        """Lagrange basis values at reference points ``x`` in ``[-1, 1]``."""
        return lagrange_basis(self.rule.nodes, x)


def build_sbp(rule: QuadratureRule) -> SbpOperators:
    D = differentiation_matrix(rule.nodes)
    M = np.diag(rule.weights)
    S = M @ D
    tau = np.zeros(rule.npoints)
    tau[0], tau[-1] = -1.0, 1.0
    B = np.diag(tau)
    for arr in (D, M, S, B, tau):
        arr.setflags(write=False)
    return SbpOperators(rule, D, M, S, B, tau)


def sbp_operators(k: int) -> SbpOperators:
    """Shortcut for ``build_sbp(gauss_lobatto(k))``."""
    return build_sbp(gauss_lobatto(k))
