"""Randomized property checks of the two-point fluxes.

Pairs of admissible states are drawn with every primitive component
``(rho, vx, vy, pxx, pxy, pyy)`` uniform in ``[lo, hi]``; draws with an
indefinite pressure tensor are rejected and redrawn.

The entropy identities are evaluated in ``np.longdouble`` by default. Both
sides of the EC identity are of the size of ``|v| |f*|``, which grows like
``1 / det(p)`` as the pressure tensor approaches singularity, so in double
precision the cancellation alone leaves defects far above the flux's actual
(zero) conservation error.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .fluxes import ec_flux_x, ec_flux_y, lax_friedrichs_x, lax_friedrichs_y
from .model import (
    entropy_potential_x,
    entropy_potential_y,
    entropy_variables,
    flux_x,
    flux_y,
    to_conserved,
)

THRESHOLDS = {"ec": 1e-10, "es": 1e-12, "consistency": 1e-12, "symmetry": 1e-12}
PRECISIONS = {"extended": np.longdouble, "double": np.float64}


def sample_admissible_primitive(rng, n, lo, hi):
    """``n`` primitive states with components uniform in ``[lo, hi]``."""
    out = np.empty((0, 6))
    while out.shape[0] < n:
        q = rng.uniform(lo, hi, size=(2 * (n - out.shape[0]) + 8, 6))
        q = q[q[:, 3] * q[:, 5] - q[:, 4] ** 2 > 0]
        out = np.concatenate([out, q])
    return out[:n]


def sample_pairs(samples, seed=0, lo=0.1, hi=10.0, gap=None):
    """Conserved left/right states. With ``gap`` the right state is the left
    one perturbed by a relative amount ``gap`` in every primitive component."""
    rng = np.random.default_rng(seed)
    qL = sample_admissible_primitive(rng, samples, lo, hi)
    if gap is None:
        qR = sample_admissible_primitive(rng, samples, lo, hi)
    else:
        qR = qL * (1.0 + gap * rng.uniform(-1.0, 1.0, size=qL.shape))
        bad = qR[:, 3] * qR[:, 5] - qR[:, 4] ** 2 <= 0
        qR[bad] = qL[bad]
    return qL, qR


@dataclass
class FluxReport:
    samples: int
    seed: int
    low: float
    high: float
    gap: float
    precision: str
    ec_defect_x: float
    ec_defect_y: float
    es_defect_x: float
    es_defect_y: float
    consistency_defect: float
    symmetry_defect: float
    nonfinite: int

    @property
    def ec_defect(self):
        return max(self.ec_defect_x, self.ec_defect_y)

    @property
    def es_defect(self):
        return max(self.es_defect_x, self.es_defect_y)

    def failures(self, thresholds=THRESHOLDS):
        fails = []
        if self.nonfinite:
            fails.append("nonfinite")
        if not self.ec_defect < thresholds["ec"]:
            fails.append("ec")
        if not self.es_defect <= thresholds["es"]:
            fails.append("es")
        if not self.consistency_defect < thresholds["consistency"]:
            fails.append("consistency")
        if not self.symmetry_defect <= thresholds["symmetry"]:
            fails.append("symmetry")
        return fails

    @property
    def passed(self):
        return not self.failures()

    def lines(self):
        d = asdict(self)
        yield "quantity,value"
        for key, val in d.items():
            yield f"{key},{val:.17g}" if isinstance(val, float) else f"{key},{val}"
        yield f"status,{'pass' if self.passed else 'fail: ' + ' '.join(self.failures())}"


def _entropy_jump_defect(flux, v, psi, uL, uR):
    vL, vR = v(uL), v(uR)
    return np.sum((vR - vL) * flux(uL, uR), axis=-1) - (psi(uR) - psi(uL))


def check_fluxes(samples=10_000, seed=0, lo=0.1, hi=10.0, gap=None, precision="extended") -> FluxReport:
    """Maximum defects of the EC identity, the ES inequality, consistency
    ``f*(u, u) = f(u)`` (relative) and symmetry over random pairs."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not 0 < lo < hi:
        raise ValueError("need 0 < lo < hi")
    dtype = PRECISIONS[precision]
    qL, qR = sample_pairs(samples, seed, lo, hi, gap)
    uL = to_conserved(qL.astype(dtype))
    uR = to_conserved(qR.astype(dtype))

    ec_x = _entropy_jump_defect(ec_flux_x, entropy_variables, entropy_potential_x, uL, uR)
    ec_y = _entropy_jump_defect(ec_flux_y, entropy_variables, entropy_potential_y, uL, uR)
    es_x = _entropy_jump_defect(lax_friedrichs_x, entropy_variables, entropy_potential_x, uL, uR)
    es_y = _entropy_jump_defect(lax_friedrichs_y, entropy_variables, entropy_potential_y, uL, uR)

    consistency = 0.0
    for num, phys in ((ec_flux_x, flux_x), (ec_flux_y, flux_y), (lax_friedrichs_x, flux_x), (lax_friedrichs_y, flux_y)):
        for u in (uL, uR):
            f = phys(u)
            rel = np.abs(num(u, u) - f) / np.maximum(np.abs(f), 1.0)
            consistency = max(consistency, float(np.max(rel)))
    symmetry = max(
        float(np.max(np.abs(ec_flux_x(uL, uR) - ec_flux_x(uR, uL)))),
        float(np.max(np.abs(ec_flux_y(uL, uR) - ec_flux_y(uR, uL)))),
    )
    values = (ec_x, ec_y, es_x, es_y)
    nonfinite = int(sum(np.count_nonzero(~np.isfinite(a)) for a in values))
    return FluxReport(
        samples=samples,
        seed=seed,
        low=float(lo),
        high=float(hi),
        gap=float(gap) if gap is not None else 0.0,
        precision=precision,
        ec_defect_x=float(np.max(np.abs(ec_x))),
        ec_defect_y=float(np.max(np.abs(ec_y))),
        es_defect_x=float(np.max(es_x)),
        es_defect_y=float(np.max(es_y)),
        consistency_defect=consistency,
        symmetry_defect=symmetry,
        nonfinite=nonfinite,
    )
