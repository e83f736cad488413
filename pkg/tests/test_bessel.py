import math

import numpy as np
import pytest

from josephson import (DomainTooSmall, ForcingProfile, QuadratureStall,
                       bessel_asymptotic, bessel_eval, bessel_j,
                       bessel_j_integral, gen_bessel, gen_bessel_asymptotic)

FIRST_J0_ZERO = 2.404825557695773


def test_values_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    for k in (1, 2, 5, -3):
        assert bessel_j(k, 0.0) == 0.0
    assert bessel_j_integral(0, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_first_zero_of_j0_via_integral_route():
    # bisection on the defining-integral route, an independent oracle
    lo, hi = 2.0, 3.0
    flo = bessel_j_integral(0, lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = bessel_j_integral(0, mid)
        if (flo > 0) == (fm > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    assert root == pytest.approx(FIRST_J0_ZERO, abs=1e-10)
    assert abs(bessel_j(0, FIRST_J0_ZERO)) < 1e-10


def test_dual_route_agreement_grid():
    ks = range(10)
    zs = [-150.0, -50.0, -5.0, 0.5, 2.0, 10.0, 40.0, 80.0, 120.0, 200.0]
    for k in ks:
        for z in zs:
            assert abs(bessel_j(k, z) - bessel_j_integral(k, z)) <= 1e-10


def test_parity_identity_on_integral_route():
    rng = np.random.RandomState(6)
    for _ in range(10):
        k = int(rng.randint(0, 6))
        z = float(rng.uniform(0.5, 60.0))
        lhs = bessel_j_integral(-k, -z)
        rhs = (-1.0) ** k * bessel_j_integral(k, -z)
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_argument_cap():
    with pytest.raises(ValueError):
        bessel_j(0, 1.5e3)


def test_gen_bessel_reduces_to_classical(cosine):
    for k in (0, 1, 2, 3):
        for z in (0.5, 5.0, 25.0, 100.0):
            assert gen_bessel(k, z, cosine) == pytest.approx(
                bessel_j(k, -z), abs=1e-10)


def test_gen_bessel_trivia(cosine):
    g2 = ForcingProfile.from_fourier(cos=[0.0, 1.0])
    assert gen_bessel(0, 0.0, g2) == pytest.approx(1.0, abs=1e-12)
    # odd harmonic against the even phase of cos(2t) integrates to zero
    assert abs(gen_bessel(1, 17.3, g2)) <= 1e-12


def test_asymptotic_error_scaling():
    # |J_k(-z) - leading term| * z^{3/2} stays bounded; the bound tracks
    # the next-term amplitude sqrt(2/pi) |4k^2 - 1| / 8
    for k in (0, 1, 2, 3):
        cap = 1.5 * (math.sqrt(2 / math.pi) * max(abs(4 * k * k - 1), 1) / 8)
        for z in np.geomspace(10, 500, 25):
            err = abs(bessel_asymptotic(k, float(z)) - bessel_j(k, -float(z)))
            assert err * z ** 1.5 <= cap


def test_asymptotic_domain_guard():
    with pytest.raises(DomainTooSmall):
        bessel_asymptotic(0, 4.9)
    with pytest.raises(DomainTooSmall):
        gen_bessel_asymptotic(0, 2.0, ForcingProfile.cosine())


def test_stationary_phase_consolidates_to_classical(cosine):
    # two zeros of cos with slopes -+1 collapse to the classical formula
    for k in (0, 1, 2, 3):
        for z in (5.0, 17.0, 111.0):
            assert gen_bessel_asymptotic(k, z, cosine) == pytest.approx(
                bessel_asymptotic(k, z), abs=1e-12)


def test_gen_asymptotic_error_decays():
    g = ForcingProfile.from_fourier(cos=[1.0, 0.2])
    zs = np.geomspace(20, 200, 15)
    errs = [abs(gen_bessel_asymptotic(0, float(z), g)
                - gen_bessel(0, float(z), g)) for z in zs]
    assert np.median(errs[-5:]) < np.median(errs[:5])


def test_gen_asymptotic_tracks_sign_near_prediction_zero(cosine):
    # where the two-term prediction crosses zero, quadrature stays near zero
    # and shares the sign on both flanks
    z0 = 40.0
    # find a nearby zero of the asymptotic in z
    lo, hi = z0, z0 + math.pi
    flo = bessel_asymptotic(0, lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if (bessel_asymptotic(0, mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    zc = 0.5 * (lo + hi)
    assert abs(gen_bessel(0, zc, cosine)) < 2e-3
    for dz in (-0.3, 0.3):
        pred = gen_bessel_asymptotic(0, zc + dz, cosine)
        quadv = gen_bessel(0, zc + dz, cosine)
        assert math.copysign(1, pred) == math.copysign(1, quadv)


def test_quadrature_stall():
    with pytest.raises(QuadratureStall):
        bessel_j_integral(0, 900.0, abs_tol=1e-12, max_panels=32)


def test_bessel_eval_routes():
    ev = bessel_eval(2, 30.0, "series")
    ei = bessel_eval(2, 30.0, "integral")
    assert ev.value == pytest.approx(ei.value, abs=1e-10)
    ea = bessel_eval(2, 30.0, "asymptotic")
    # the asymptotic entry point approximates J_k(-z)
    assert ea.value == pytest.approx(bessel_j(2, -30.0), abs=ea.est_err * 2)
    with pytest.raises(ValueError):
        bessel_eval(0, 1.0, "nope")
