import math

import numpy as np
import pytest

from josephson import (IntegratorConfig, Params, StepUnderflow,
                       autonomous_rho, integrate_flow, rhs_eval)

TWO_PI = 2.0 * math.pi


def test_rhs_eval_trivia(cosine):
    assert rhs_eval(Params(a=0, b=0, mu=1), cosine, math.pi / 2, 0.0) \
        == pytest.approx(0.0, abs=1e-16)
    assert rhs_eval(Params(a=2, b=0, mu=0.5, gamma=0.0), cosine, 1.234, 5.6) \
        == pytest.approx(4.0)
    assert rhs_eval(Params(a=1, b=1, mu=1), cosine, 0.0, 0.0) \
        == pytest.approx(3.0)


def test_params_validation():
    with pytest.raises(ValueError):
        Params(a=0, b=0, mu=0.0)
    with pytest.raises(ValueError):
        Params(a=0, b=0, mu=1.0, gamma=1.5)


def test_integrator_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        IntegratorConfig(min_step=1.0, max_step=0.5)
    with pytest.raises(ValueError):
        IntegratorConfig(order=8)


def test_gamma0_closed_form(cosine):
    # x(t) = x0 + (a t + b G(t)) / mu, exactly
    rng = np.random.RandomState(11)
    for _ in range(100):
        a = rng.uniform(-3, 3)
        b = rng.uniform(0, 20)
        mu = rng.uniform(0.2, 3.0)
        x0 = rng.uniform(-5, 5)
        t1 = rng.uniform(0.5, TWO_PI)
        arc = integrate_flow(Params(a=a, b=b, mu=mu, gamma=0.0), cosine,
                             x0, 0.0, t1)
        ref = x0 + (a * t1 + b * math.sin(t1)) / mu
        assert arc.x1 == pytest.approx(ref, abs=1e-9 * (1 + abs(ref)))


def test_gamma0_endpoint_after_full_period(cosine):
    arc = integrate_flow(Params(a=1.3, b=7.0, mu=0.7, gamma=0.0), cosine,
                         0.0, 0.0, TWO_PI)
    assert arc.x1 == pytest.approx(TWO_PI * 1.3 / 0.7, abs=1e-10)


def test_integral_identity(cosine):
    rng = np.random.RandomState(5)
    cfg = IntegratorConfig()
    for _ in range(30):
        p = Params(a=rng.uniform(-2, 2), b=rng.uniform(0, 10),
                   mu=rng.uniform(0.2, 2.0))
        x0 = rng.uniform(-3, 3)
        arc = integrate_flow(p, cosine, x0, 0.0, rng.uniform(1.0, TWO_PI),
                             cfg)
        tol = 10 * cfg.rel_tol * (1.0 + abs(arc.x1 - arc.x0))
        assert arc.identity_defect(p, cosine) <= tol


def test_reversibility(cosine):
    rng = np.random.RandomState(17)
    cfg = IntegratorConfig()
    for _ in range(20):
        p = Params(a=rng.uniform(-2, 2), b=rng.uniform(0, 8),
                   mu=rng.uniform(0.3, 2.0))
        x0 = rng.uniform(-3, 3)
        fwd = integrate_flow(p, cosine, x0, 0.0, TWO_PI, cfg)
        back = integrate_flow(p, cosine, fwd.x1, TWO_PI, 0.0, cfg)
        assert abs(back.x1 - x0) <= 1e2 * cfg.rel_tol * (1 + abs(x0))


def test_traversal_time_oracle(cosine):
    # for b = 0, |a| > 1 the circle is traversed in time 2 pi mu / sqrt(a^2-1);
    # at a = sqrt(2), mu = 1 that is exactly one forcing period
    from scipy.integrate import quad
    a = math.sqrt(2.0)
    period, _ = quad(lambda x: 1.0 / (math.cos(x) + a), 0.0, TWO_PI,
                     epsabs=1e-13, epsrel=1e-13, limit=400)
    assert period == pytest.approx(TWO_PI, abs=1e-10)
    arc = integrate_flow(Params(a=a, b=0.0, mu=1.0), cosine, 0.0, 0.0,
                         TWO_PI)
    assert arc.x1 == pytest.approx(TWO_PI, abs=1e-9)


def test_locked_flow_converges_to_stable_root(cosine):
    # a = 0.5: attracting equilibrium where cos x = -0.5, i.e. x = 2 pi / 3
    arc = integrate_flow(Params(a=0.5, b=0.0, mu=1.0), cosine, 0.0, 0.0,
                         60.0)
    assert arc.x1 == pytest.approx(2.0 * math.pi / 3.0, abs=1e-9)


def test_autonomous_rho_values():
    assert autonomous_rho(0.3, 2.0) == 0.0
    assert autonomous_rho(math.sqrt(2.0), 1.0) == pytest.approx(1.0)
    for k in (1, 2, 5):
        for mu in (0.4, 1.0, 2.5):
            a = math.sqrt(k * k * mu * mu + 1.0)
            assert autonomous_rho(a, mu) == pytest.approx(float(k))
            assert autonomous_rho(-a, mu) == pytest.approx(float(-k))


def test_autonomous_long_time_convergence(cosine):
    # rotation estimate over N periods converges to the closed form at O(1/N)
    p = Params(a=1.5, b=0.0, mu=1.0)
    rho = autonomous_rho(1.5, 1.0)
    for n in (8, 32, 128):
        arc = integrate_flow(p, cosine, 0.0, 0.0, TWO_PI * n)
        est = (arc.x1 - arc.x0) / (TWO_PI * n)
        assert abs(est - rho) <= 2.0 / n


def test_step_underflow_raised(cosine):
    cfg = IntegratorConfig(min_step=1e-3)
    with pytest.raises(StepUnderflow):
        integrate_flow(Params(a=0.0, b=500.0, mu=0.1), cosine, 0.0, 0.0,
                       TWO_PI, cfg)


def test_step_budget_raised(cosine):
    cfg = IntegratorConfig(max_steps=50)
    with pytest.raises(StepUnderflow):
        integrate_flow(Params(a=0.0, b=100.0, mu=0.2), cosine, 0.0, 0.0,
                       TWO_PI, cfg)


def test_determinism(cosine):
    p = Params(a=0.9, b=3.3, mu=0.45)
    a1 = integrate_flow(p, cosine, 0.1, 0.0, TWO_PI)
    a2 = integrate_flow(p, cosine, 0.1, 0.0, TWO_PI)
    assert a1 == a2
