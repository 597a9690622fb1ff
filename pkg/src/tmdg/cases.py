"""Registry of benchmark problems.

Every case supplies its initial data in primitive variables. One-dimensional
initial functions take ``(x, center)`` where ``center`` is the centre of the
element owning each node: a Riemann jump that falls on an element interface
is then resolved per element, so neither neighbour starts with an internal
discontinuity. Two-dimensional initial functions take ``(X, Y)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .model import EXX, RHO

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class CaseSpec:
    name: str
    dim: int
    xlim: tuple
    t_end: float
    initial: Callable
    n: int = 100
    ylim: Optional[tuple] = None
    ny: Optional[int] = None
    bc_x: str = "outflow"
    bc_y: str = "outflow"
    W: Optional[Callable] = None
    dW_dx: Optional[Callable] = None
    dW_dy: Optional[Callable] = None
    exact: Optional[Callable] = None
    tvb: bool = False
    tvb_M: float = 10.0
    bp: bool = False
    v_T: float = 0.0
    # factory v_T -> extra_source(u, X, Y, t), 2D only
    extra_source: Optional[Callable] = None
    description: str = ""
    states: dict = field(default_factory=dict)

    @property
    def left(self):
        return self.states.get("left")

    @property
    def right(self):
        return self.states.get("right")

    @property
    def has_source(self) -> bool:
        return self.dW_dx is not None or self.dW_dy is not None


def _prim(rho, vx, vy, pxx, pxy, pyy):
    arrays = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (rho, vx, vy, pxx, pxy, pyy)))
    return np.stack(arrays, axis=-1)


def riemann_initial(left, right, x0):
    left = np.asarray(left, dtype=float)
    right = np.asarray(right, dtype=float)

    def init(x, center=None):
        x = np.asarray(x, dtype=float)
        c = x if center is None else np.broadcast_to(center, x.shape)
        is_left = (x < x0) | ((x == x0) & (c < x0))
        return np.where(is_left[..., None], left, right)

    return init


# --- smooth accuracy problems ------------------------------------------------

def exact_smooth(x, t):
    """Density wave advected with unit speed; uniform velocity and pressure."""
    x = np.asarray(x, dtype=float)
    return _prim(2.0 + np.sin(TWO_PI * (x - t)), 1.0, 0.0, 1.0, 0.0, 1.0)


def exact_smooth_source(x, t):
    """Travelling wave balanced by the potential ``W = sin(2 pi (x - t))``."""
    x = np.asarray(x, dtype=float)
    xi = x - t
    pxx = 1.5 + 0.125 * (np.cos(2.0 * TWO_PI * xi) - 8.0 * np.sin(TWO_PI * xi))
    return _prim(2.0 + np.sin(TWO_PI * xi), 1.0, 0.0, pxx, 0.0, 1.0)


def _smooth_source_W(x, t):
    return np.sin(TWO_PI * (np.asarray(x) - t))


def _smooth_source_dW(x, t):
    return TWO_PI * np.cos(TWO_PI * (np.asarray(x) - t))


# --- Gaussian laser potentials -------------------------------------------------

def _gauss_1d_W(x, t):
    return 25.0 * np.exp(-200.0 * (np.asarray(x) - 2.0) ** 2)


def _gauss_1d_dW(x, t):
    x = np.asarray(x)
    return -400.0 * (x - 2.0) * _gauss_1d_W(x, t)


def _gauss_2d_W(x, y, t):
    return 25.0 * np.exp(-200.0 * ((np.asarray(x) - 2.0) ** 2 + (np.asarray(y) - 2.0) ** 2))


def _gauss_2d_dWdx(x, y, t):
    return -400.0 * (np.asarray(x) - 2.0) * _gauss_2d_W(x, y, t)


def _gauss_2d_dWdy(x, y, t):
    return -400.0 * (np.asarray(y) - 2.0) * _gauss_2d_W(x, y, t)


def _laser_W(x, y, t):
    return np.exp(-(((np.asarray(x) - 50.0) / 10.0) ** 2) - ((np.asarray(y) - 50.0) / 10.0) ** 2)


def _laser_dWdx(x, y, t):
    return -0.02 * (np.asarray(x) - 50.0) * _laser_W(x, y, t)


def laser_absorption(v_T):
    """Energy absorption ``2 v_T rho W`` acting on the ``Exx`` equation."""

    def extra(u, X, Y, t):
        out = np.zeros_like(u)
        if v_T != 0.0:
            out[..., EXX] = 2.0 * v_T * u[..., RHO] * _laser_W(X, Y, t)
        return out

    return extra


# --- 2D initial data -----------------------------------------------------------

def _near_vacuum_2d(X, Y):
    r = np.hypot(X, Y)
    safe = np.where(r > 0, r, 1.0)
    vx = np.where(r > 0, 8.0 * X / safe, 0.0)
    vy = np.where(r > 0, 8.0 * Y / safe, 0.0)
    return _prim(1.0, vx, vy, 2.0, 0.0, 2.0)


def _uniform(rho, pxx, pxy, pyy):
    def init(X, Y):
        return _prim(rho + 0 * np.asarray(X), 0.0, 0.0, pxx, pxy, pyy)

    return init


SOD_L = (1.0, 0.0, 0.0, 2.0, 0.05, 0.6)
SOD_R = (0.125, 0.0, 0.0, 0.2, 0.1, 0.2)
TWO_SHOCK_L = (1.0, 1.0, 1.0, 1.0, 0.0, 1.0)
TWO_SHOCK_R = (1.0, -1.0, -1.0, 1.0, 0.0, 1.0)
TWO_RARE_L = (2.0, -0.5, -0.5, 1.5, 0.5, 1.5)
TWO_RARE_R = (1.0, 1.0, 1.0, 1.0, 0.0, 1.0)
NEAR_VAC_L = (1.0, -5.0, 0.0, 2.0, 0.0, 2.0)
NEAR_VAC_R = (1.0, 5.0, 0.0, 2.0, 0.0, 2.0)
GAUSS_L = (1.0, -4.0, 0.0, 9.0, 7.0, 9.0)
GAUSS_R = (1.0, 4.0, 0.0, 9.0, 7.0, 9.0)
SHU_OSHER_L = (3.857143, 2.699369, 0.0, 10.33333, 0.0, 10.33333)


def _shu_osher(x, center=None):
    x = np.asarray(x, dtype=float)
    c = x if center is None else np.broadcast_to(center, x.shape)
    is_left = (x < -4.0) | ((x == -4.0) & (c < -4.0))
    right = _prim(1.0 + 0.2 * np.sin(5.0 * x), 0.0, 0.0, 1.0, 0.0, 1.0)
    return np.where(is_left[..., None], np.asarray(SHU_OSHER_L), right)


def _smooth_initial(x, center=None):
    return exact_smooth(x, 0.0)


def _smooth_source_initial(x, center=None):
    return exact_smooth_source(x, 0.0)


def _riemann_case(name, left, right, t_end, description, xlim=(-0.5, 0.5), x0=0.0, **kw):
    return CaseSpec(
        name=name,
        dim=1,
        xlim=xlim,
        t_end=t_end,
        initial=riemann_initial(left, right, x0),
        n=100,
        bc_x="outflow",
        tvb=True,
        bp=True,
        description=description,
        states={"left": tuple(left), "right": tuple(right), "jump": x0},
        **kw,
    )


CASES = {
    "smooth": CaseSpec(
        name="smooth",
        dim=1,
        xlim=(-0.5, 0.5),
        t_end=0.5,
        initial=_smooth_initial,
        n=32,
        bc_x="periodic",
        exact=exact_smooth,
        description="advected density wave, no source (accuracy test)",
    ),
    "smooth_source": CaseSpec(
        name="smooth_source",
        dim=1,
        xlim=(-0.5, 0.5),
        t_end=0.5,
        initial=_smooth_source_initial,
        n=32,
        bc_x="periodic",
        W=_smooth_source_W,
        dW_dx=_smooth_source_dW,
        exact=exact_smooth_source,
        description="travelling wave with potential sin(2 pi (x - t)) (accuracy test)",
    ),
    "sod": _riemann_case("sod", SOD_L, SOD_R, 0.125, "Sod shock tube"),
    "two_shocks": _riemann_case("two_shocks", TWO_SHOCK_L, TWO_SHOCK_R, 0.125, "two colliding shocks"),
    "two_rarefactions": _riemann_case(
        "two_rarefactions", TWO_RARE_L, TWO_RARE_R, 0.15, "two rarefaction waves"
    ),
    "near_vacuum": _riemann_case("near_vacuum", NEAR_VAC_L, NEAR_VAC_R, 0.05, "near vacuum state"),
    "gaussian_source_1d": _riemann_case(
        "gaussian_source_1d",
        GAUSS_L,
        GAUSS_R,
        0.1,
        "two rarefactions with a Gaussian laser source",
        xlim=(0.0, 4.0),
        x0=2.0,
        W=_gauss_1d_W,
        dW_dx=_gauss_1d_dW,
    ),
    "shu_osher": CaseSpec(
        name="shu_osher",
        dim=1,
        xlim=(-5.0, 5.0),
        t_end=1.8,
        initial=_shu_osher,
        n=200,
        bc_x="outflow",
        tvb=True,
        bp=True,
        description="shock interacting with a density sine wave",
        states={"left": SHU_OSHER_L, "jump": -4.0},
    ),
    "near_vacuum_2d": CaseSpec(
        name="near_vacuum_2d",
        dim=2,
        xlim=(-2.0, 2.0),
        ylim=(-2.0, 2.0),
        t_end=0.05,
        initial=_near_vacuum_2d,
        n=100,
        ny=100,
        bp=True,
        description="radially expanding flow creating a near vacuum",
    ),
    "uniform_plasma_2d": CaseSpec(
        name="uniform_plasma_2d",
        dim=2,
        xlim=(0.0, 4.0),
        ylim=(0.0, 4.0),
        t_end=0.1,
        initial=_uniform(0.1, 9.0, 7.0, 9.0),
        n=100,
        ny=100,
        W=_gauss_2d_W,
        dW_dx=_gauss_2d_dWdx,
        dW_dy=_gauss_2d_dWdy,
        description="uniform anisotropic plasma driven by a Gaussian potential",
    ),
    "realistic_2d": CaseSpec(
        name="realistic_2d",
        dim=2,
        xlim=(0.0, 100.0),
        ylim=(0.0, 100.0),
        t_end=0.5,
        initial=_uniform(0.109885, 1.0, 0.0, 1.0),
        n=100,
        ny=100,
        W=_laser_W,
        dW_dx=_laser_dWdx,
        extra_source=laser_absorption,
        description="laser heated plasma, x-directed ponderomotive force plus absorption",
    ),
}


def available_cases():
    return sorted(CASES)


def get_case(name: str) -> CaseSpec:
    try:
        return CASES[name]
    except KeyError:
        raise KeyError(f"unknown case {name!r}; available cases: {', '.join(available_cases())}") from None
