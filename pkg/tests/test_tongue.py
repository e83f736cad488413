import math

import numpy as np
import pytest

from josephson import (BracketFailure, IntegratorConfig, Params, bessel_j,
                       boundary_at, classify, find_adjacencies, monodromy,
                       rotation_number, trace_boundary)
from josephson.tongue import _expand_bracket

MU = 0.4
TWO_PI = 2.0 * math.pi


def test_small_amplitude_collapses_to_closed_form_endpoint():
    pt = boundary_at(1, 0.005, MU)
    assert pt.closed_form
    want = math.sqrt(1.0 + MU * MU)
    assert pt.a0 == want and pt.api == want
    assert pt.width == 0.0


def test_small_amplitude_negative_k_endpoint():
    pt = boundary_at(-2, 0.005, MU)
    assert pt.a0 == -math.sqrt(4 * MU * MU + 1.0)


def test_zero_tongue_interval_tends_to_unit_segment():
    pt = boundary_at(0, 0.005, MU)
    assert (pt.a_minus, pt.a_plus) == (-1.0, 1.0)
    # and just above the degenerate band the interval is still close
    pt = boundary_at(0, 0.02, MU)
    assert pt.a_minus == pytest.approx(-1.0, abs=0.05)
    assert pt.a_plus == pytest.approx(1.0, abs=0.05)


def test_boundary_continuously_extends_endpoint():
    want = math.sqrt(1.0 + MU * MU)
    for b in (0.02, 0.05, 0.1):
        pt = boundary_at(1, b, MU)
        assert not pt.closed_form
        assert pt.a0 == pytest.approx(want, abs=0.2 * b + 0.05)
        assert pt.api == pytest.approx(want, abs=0.2 * b + 0.05)


def test_boundary_maps_are_parabolic_with_correct_fixed_phase(cosine):
    from josephson import fixed_points
    pt = boundary_at(1, 20.0, MU)
    M0 = monodromy(Params(a=pt.a0, b=20.0, mu=MU), cosine)
    Mp = monodromy(Params(a=pt.api, b=20.0, mu=MU), cosine)
    assert classify(M0) in ("parabolic", "identity")
    assert classify(Mp) in ("parabolic", "identity")
    d0 = min(min(q.x, TWO_PI - q.x) for q in fixed_points(M0).points)
    dp = min(abs(q.x - math.pi) for q in fixed_points(Mp).points)
    assert d0 <= 1e-6 and dp <= 1e-6


def test_interval_interior_is_locked(cosine):
    pt = boundary_at(1, 25.0, MU)
    rng = np.random.RandomState(8)
    inner = rng.uniform(pt.a_minus + 1e-6, pt.a_plus - 1e-6, 10)
    for a in inner:
        M = monodromy(Params(a=float(a), b=25.0, mu=MU), cosine)
        assert classify(M) != "elliptic"
        rn = rotation_number(Params(a=float(a), b=25.0, mu=MU), cosine)
        assert rn.locked and rn.k == 1
    # just outside the interval the lock is lost
    for a in (pt.a_minus - 1e-4, pt.a_plus + 1e-4):
        rn = rotation_number(Params(a=float(a), b=25.0, mu=MU), cosine)
        assert rn.value != 1.0


def test_boundary_objective_monotone_on_bracket(cosine):
    from josephson.tongue import _BoundaryFun
    cfg = IntegratorConfig()
    for target in (0.0, math.pi):
        f = _BoundaryFun(target, 1, 10.0, MU, cosine, cfg)
        vals = [f(a) for a in np.linspace(MU - 0.8, MU + 0.8, 5)]
        assert all(v2 > v1 for v1, v2 in zip(vals, vals[1:]))


def test_theorem2_fitted_log_envelope():
    # fit C at b = 20 (with headroom; the true constant is existential),
    # then demand C ln(b/mu)/b covers the residual for all larger b
    k = 1
    r20 = boundary_at(k, 20.0, MU).residual_0
    C = 3.0 * r20 * 20.0 / math.log(20.0 / MU)
    for b in (30.0, 45.0, 70.0, 100.0):
        r = boundary_at(k, b, MU).residual_0
        assert r <= C * math.log(b / MU) / b


def test_width_tracks_twice_bessel():
    k = 1
    for b in (20.0, 30.0, 40.0):
        pt = boundary_at(k, b, MU)
        pred = 2.0 * abs(bessel_j(k, -b / MU))
        slack = 2.0 * 3.0 * math.log(b / MU) / b * MU
        assert abs(pt.width - pred) <= slack


def test_trace_continuity_and_order():
    bs = np.linspace(20.0, 24.0, 17)
    trace = trace_boundary(1, bs, MU)
    assert not trace.failures
    assert [p.b for p in trace.points] == sorted(p.b for p in trace.points)
    db = bs[1] - bs[0]
    for p1, p2 in zip(trace.points, trace.points[1:]):
        slope_cap = math.sqrt(2.0 / (math.pi * p1.b * MU)) / MU + 2.0 / p1.b
        assert abs(p2.a0 - p1.a0) <= 5.0 * slope_cap * db
        assert abs(p2.api - p1.api) <= 5.0 * slope_cap * db


def test_reversal_symmetry_of_traces():
    bs = np.linspace(12.0, 14.0, 5)
    plus = trace_boundary(2, bs, MU).points
    minus = trace_boundary(-2, bs, MU).points
    for pp, pm in zip(plus, minus):
        # a -> -a mirrors the k-th tongue onto the (-k)-th; the even drive
        # swaps which end carries the 0 fixed point
        assert pm.a0 == pytest.approx(-pp.a0, abs=1e-9)
        assert pm.api == pytest.approx(-pp.api, abs=1e-9)
        assert pm.width == pytest.approx(pp.width, abs=1e-9)


def test_interval_labels_are_consistent():
    for b in (5.0, 20.0, 33.0):
        pt = boundary_at(0, b, MU)
        assert {pt.a0, pt.api} == {pt.a_minus, pt.a_plus}
        assert pt.width == pt.a_plus - pt.a_minus >= 0.0


def test_trace_records_failures_instead_of_raising():
    cfg = IntegratorConfig(max_steps=200)
    trace = trace_boundary(1, [20.0, 21.0], MU, cfg)
    assert trace.points == ()
    assert len(trace.failures) == 2


def test_bracket_failure_guard():
    with pytest.raises(BracketFailure):
        _expand_bracket(lambda a: math.exp(a), 0.0, 0.5, max_doublings=6)


def test_adjacencies_in_proven_regime(cosine):
    adj = find_adjacencies(0, (5.0, 9.0), 1.0)
    assert len(adj) == 2  # near the first two zeros of J_0
    for ap in adj:
        assert abs(ap.a_star) <= 1e-8
        assert ap.identity_defect <= 1e-7
        M = monodromy(Params(a=ap.a_star, b=ap.b_star, mu=1.0), cosine)
        assert classify(M) == "identity"


def test_adjacency_spacing_quick():
    adj = find_adjacencies(1, (20.0, 24.5), MU)
    assert len(adj) >= 3
    for a1, a2 in zip(adj, adj[1:]):
        assert (a2.b_star - a1.b_star) == pytest.approx(math.pi * MU,
                                                        rel=0.05)


def test_adjacency_scan_requires_positive_amplitudes():
    with pytest.raises(ValueError):
        find_adjacencies(1, (0.0, 5.0), MU)
