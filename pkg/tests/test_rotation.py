import math

import numpy as np
import pytest

from josephson import (Params, autonomous_rho, rotation_number,
                       rotation_number_iterated)


def test_trivially_locked_at_origin(cosine):
    rn = rotation_number(Params(a=0.0, b=0.0, mu=1.0), cosine)
    assert rn.locked and rn.value == 0.0 and rn.k == 0


def test_matches_autonomous_closed_form(cosine):
    rn = rotation_number(Params(a=math.sqrt(2.0), b=0.0, mu=1.0), cosine)
    assert rn.value == pytest.approx(autonomous_rho(math.sqrt(2.0), 1.0),
                                     abs=1e-10)


def test_locked_value_is_exact_integer(cosine):
    rn = rotation_number(Params(a=0.9, b=1.0, mu=0.5), cosine)
    if rn.locked:
        assert rn.value == float(rn.k)
        assert isinstance(rn.k, int)


def test_symmetries(cosine):
    # rho(-a, b) = -rho(a, b) and rho(a, -b) = rho(a, b)
    rng = np.random.RandomState(123)
    for _ in range(15):
        a = rng.uniform(-4, 4)
        b = rng.uniform(0.1, 12.0)
        mu = rng.uniform(0.3, 2.5)
        r = rotation_number(Params(a=a, b=b, mu=mu), cosine).value
        r_neg_a = rotation_number(Params(a=-a, b=b, mu=mu), cosine).value
        r_neg_b = rotation_number(Params(a=a, b=-b, mu=mu), cosine).value
        assert r_neg_a == pytest.approx(-r, abs=1e-10)
        assert r_neg_b == pytest.approx(r, abs=1e-10)


def test_iterated_agrees_with_moebius_within_lift_bound(cosine):
    rng = np.random.RandomState(77)
    n = 150
    for _ in range(8):
        p = Params(a=rng.uniform(-2.5, 2.5), b=rng.uniform(0.2, 8.0),
                   mu=rng.uniform(0.4, 2.0))
        r_m = rotation_number(p, cosine).value
        r_i = rotation_number_iterated(p, cosine, n).value
        assert abs(r_m - r_i) <= 2.0 / n


def test_iterated_trapped_case_converges_exactly(cosine):
    rn = rotation_number_iterated(Params(a=0.5, b=0.0, mu=1.0), cosine, 100)
    assert abs(rn.value) <= 1e-12
    assert rn.method == "iterated"


def test_iterated_monotone_in_a(cosine):
    # the drive is monotone in a, so rho estimates are non-decreasing
    b, mu, n = 2.0, 0.7, 60
    vals = [rotation_number_iterated(Params(a=a, b=b, mu=mu), cosine, n).value
            for a in np.linspace(-1.0, 3.0, 17)]
    assert all(v2 >= v1 - 1e-12 for v1, v2 in zip(vals, vals[1:]))


def test_moebius_monotone_in_a(cosine):
    b, mu = 2.0, 0.7
    vals = [rotation_number(Params(a=a, b=b, mu=mu), cosine).value
            for a in np.linspace(-1.0, 3.0, 41)]
    assert all(v2 >= v1 for v1, v2 in zip(vals, vals[1:]))


def test_iterated_requires_periods(cosine):
    with pytest.raises(ValueError):
        rotation_number_iterated(Params(a=1.0, b=1.0, mu=1.0), cosine, 0)
