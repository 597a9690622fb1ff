import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmdg.fluxcheck import check_fluxes, sample_pairs
from tmdg.fluxes import (
    LOG_MEAN_SERIES_THRESHOLD,
    beta_quantities,
    ec_flux_x,
    ec_flux_y,
    lax_friedrichs_x,
    lax_friedrichs_y,
    log_mean,
)
from tmdg.model import (
    entropy_potential_x,
    entropy_potential_y,
    entropy_variables,
    flux_x,
    flux_y,
    to_conserved,
)

mpmath.mp.dps = 50


def mp_ec_pair(qL, qR, direction):
    """Reference EC flux and entropy-jump defect in 50-digit arithmetic,
    written out component by component for either direction."""
    mp = mpmath.mpf

    def parts(q):
        rho, vx, vy, pxx, pxy, pyy = (mp(float(c)) for c in q)
        det = pxx * pyy - pxy**2
        D = det / rho
        bxx, bxy, byy = pxx / D, pxy / D, pyy / D
        s = mpmath.log(det / rho**4)
        r = rho / det
        v = [
            4 - s - r * (pyy * vx**2 + pxx * vy**2 - 2 * pxy * vx * vy),
            2 * r * (pyy * vx - pxy * vy),
            2 * r * (pxx * vy - pxy * vx),
            -r * pyy,
            2 * r * pxy,
            -r * pxx,
        ]
        return dict(rho=rho, vx=vx, vy=vy, bxx=bxx, bxy=bxy, byy=byy, Db=bxx * byy - bxy**2, v=v)

    L, R = parts(qL), parts(qR)

    def avg(k):
        return (L[k] + R[k]) / 2

    def lnmean(k):
        a, b = L[k], R[k]
        return a if a == b else (b - a) / (mpmath.log(b) - mpmath.log(a))

    rho_ln, db_ln = lnmean("rho"), lnmean("Db")
    vx, vy, bxx, bxy, byy = avg("vx"), avg("vy"), avg("bxx"), avg("bxy"), avg("byy")
    vxx = (L["vx"] ** 2 + R["vx"] ** 2) / 2
    vxy = (L["vx"] * L["vy"] + R["vx"] * R["vy"]) / 2
    vyy = (L["vy"] ** 2 + R["vy"] ** 2) / 2
    den = bxx * byy - bxy**2
    rho = avg("rho")
    if direction == "x":
        f1 = rho_ln * vx
        f2 = f1 * vx + rho * bxx / den
        f3 = f1 * vy + rho * bxy / den
        psi = lambda P: 2 * P["rho"] * P["vx"]  # noqa: E731
    else:
        f1 = rho_ln * vy
        f2 = f1 * vx + rho * bxy / den
        f3 = f1 * vy + rho * byy / den
        psi = lambda P: 2 * P["rho"] * P["vy"]  # noqa: E731
    f4 = (bxx / db_ln - vxx) * f1 + 2 * vx * f2
    f5 = (bxy / db_ln - vxy) * f1 + vx * f3 + vy * f2
    f6 = (byy / db_ln - vyy) * f1 + 2 * vy * f3
    flux = [f1, f2, f3, f4, f5, f6]
    defect = sum((R["v"][c] - L["v"][c]) * flux[c] for c in range(6)) - (psi(R) - psi(L))
    return np.array([float(f) for f in flux]), float(defect)


@pytest.fixture(scope="module")
def pairs():
    return sample_pairs(64, seed=3)


@pytest.mark.parametrize("direction", ["x", "y"])
def test_ec_flux_matches_closed_form(pairs, direction):
    qL, qR = pairs
    num = (ec_flux_x if direction == "x" else ec_flux_y)(to_conserved(qL), to_conserved(qR))
    for i in range(8):
        ref, defect = mp_ec_pair(qL[i], qR[i], direction)
        assert abs(defect) < 1e-30
        assert np.allclose(num[i], ref, rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize(
    "flux, phys, psi",
    [(ec_flux_x, flux_x, entropy_potential_x), (ec_flux_y, flux_y, entropy_potential_y)],
)
def test_ec_identity_extended_precision(pairs, flux, phys, psi):
    qL, qR = (q.astype(np.longdouble) for q in pairs)
    uL, uR = to_conserved(qL), to_conserved(qR)
    lhs = np.sum((entropy_variables(uR) - entropy_variables(uL)) * flux(uL, uR), axis=-1)
    assert np.max(np.abs(lhs - (psi(uR) - psi(uL)))) < 1e-10


@pytest.mark.parametrize("flux, phys", [(ec_flux_x, flux_x), (ec_flux_y, flux_y), (lax_friedrichs_x, flux_x), (lax_friedrichs_y, flux_y)])
def test_consistency_and_symmetry(pairs, flux, phys):
    uL, uR = (to_conserved(q) for q in pairs)
    assert np.allclose(flux(uL, uL), phys(uL), rtol=1e-12, atol=1e-12)
    assert np.allclose(flux(uL, uR), flux(uR, uL) if flux in (ec_flux_x, ec_flux_y) else flux(uL, uR))
    if flux in (ec_flux_x, ec_flux_y):
        assert np.max(np.abs(flux(uL, uR) - flux(uR, uL))) < 1e-12


@pytest.mark.parametrize("flux, psi", [(lax_friedrichs_x, entropy_potential_x), (lax_friedrichs_y, entropy_potential_y)])
def test_lax_friedrichs_is_entropy_stable(flux, psi):
    qL, qR = sample_pairs(2000, seed=5, lo=0.5, hi=2.0)
    uL, uR = to_conserved(qL), to_conserved(qR)
    prod = np.sum((entropy_variables(uR) - entropy_variables(uL)) * flux(uL, uR), axis=-1) - (psi(uR) - psi(uL))
    assert np.max(prod) <= 1e-12


def test_log_mean_values():
    assert log_mean(2.0, 2.0) == 2.0
    assert log_mean(1.0, np.e) == pytest.approx(np.e - 1.0, rel=1e-15)
    with pytest.raises(ValueError):
        log_mean(0.0, 1.0)


@settings(max_examples=300, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(-8, 0))
def test_log_mean_against_mpmath(a, log_gap):
    # exercises both the series branch (tiny gaps) and the closed form
    b = a * (1.0 + 10.0**log_gap)
    ref = (mpmath.mpf(b) - a) / (mpmath.log(b) - mpmath.log(a)) if b != a else mpmath.mpf(a)
    assert float(log_mean(a, b)) == pytest.approx(float(ref), rel=2e-15)


def test_log_mean_continuous_across_threshold():
    z = LOG_MEAN_SERIES_THRESHOLD
    for factor in (1 - 1e-9, 1 + 1e-9):
        b = (1 + z) / (1 - z) * factor
        ref = (mpmath.mpf(b) - 1) / mpmath.log(b)
        assert float(log_mean(1.0, b)) == pytest.approx(float(ref), rel=1e-15)


def test_beta_quantities():
    q = np.array([2.0, 0.0, 0.0, 3.0, 1.0, 2.0])
    b = beta_quantities(q)
    assert b.D == pytest.approx(2.5)
    assert b.D_beta == pytest.approx(5.0 / 2.5**2)


def test_fluxcheck_passes_and_is_deterministic():
    a = check_fluxes(samples=500, seed=7)
    b = check_fluxes(samples=500, seed=7)
    assert a.passed, a.failures()
    assert list(a.lines()) == list(b.lines())


def test_fluxcheck_near_equal_pairs():
    rep = check_fluxes(samples=500, seed=1, gap=1e-8)
    assert rep.nonfinite == 0
    assert rep.consistency_defect < 1e-12
    assert rep.passed


def test_fluxcheck_argument_errors():
    with pytest.raises(ValueError):
        check_fluxes(samples=0)
    with pytest.raises(ValueError):
        check_fluxes(samples=1, lo=2.0, hi=1.0)
