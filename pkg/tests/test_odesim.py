"""Adaptive Dormand-Prince simulation with turning-point events."""

import numpy as np
import pytest
import scipy.integrate

import oracle
from ssp import (
    InsufficientEvents,
    InvalidParameters,
    MaxStepsExceeded,
    Method,
    Oscillation,
    SimConfig,
    StringParams,
    Trajectory,
    acceleration,
    check_sandwich,
    exact_period,
    integrate,
    measure_period,
    rayleigh_period,
    simulate,
)


@pytest.fixture(scope="module")
def default_traj():
    osc = Oscillation(StringParams(l0=1.0, l=1.25, sigma=1.0, mass=1.0), 0.5)
    return osc, simulate(osc)


def test_release_from_rest_initial_sample(default_traj):
    osc, traj = default_traj
    assert traj.t[0] == 0.0
    assert traj.y[0] == osc.y0
    assert traj.v[0] == 0.0


def test_time_grid_strictly_increasing(default_traj):
    _, traj = default_traj
    assert np.all(np.diff(traj.t) > 0.0)
    assert np.all(np.diff(traj.events) > 0.0)
    assert traj.events[0] == 0.0


def test_event_count_matches_requested_periods(default_traj):
    _, traj = default_traj
    # Release from rest: one event seeds t=0, then two turnings per period.
    assert len(traj.events) == 2 * 10 + 1


def test_energy_drift_within_budget(default_traj):
    _, traj = default_traj
    drift = np.max(np.abs(traj.e - traj.e[0])) / abs(traj.e[0])
    assert drift < 1e-8
    assert drift < 100 * SimConfig().rel_tol


def test_measured_period_matches_quadrature(default_traj):
    osc, traj = default_traj
    est = measure_period(traj)
    assert est.method is Method.ODE_SIM
    exact = exact_period(osc).value
    np.testing.assert_allclose(est.value, exact, rtol=1e-8)
    np.testing.assert_allclose(est.value, oracle.P_REF, rtol=1e-8)


def test_gap_scatter_small(default_traj):
    osc, traj = default_traj
    est = measure_period(traj)
    # err_estimate carries the std over half-period gaps.
    assert est.err_estimate < 1e-7 * est.value
    gaps = np.diff(traj.events)
    assert np.max(gaps) / np.min(gaps) - 1.0 < 1e-6


def test_measured_period_sits_inside_bounds(default_traj):
    osc, traj = default_traj
    report = check_sandwich(osc, measure_period(traj), rel_slack=1e-6)
    assert report.passed


def test_half_period_reaches_mirror_point(default_traj):
    osc, traj = default_traj
    t_half = traj.events[1]
    out = integrate(osc, (0.0, t_half), (osc.y0, 0.0))
    assert abs(out.y[-1] + osc.y0) < 1e-8 * osc.y0


def test_full_period_return(default_traj):
    osc, _ = default_traj
    period = exact_period(osc).value
    out = integrate(osc, (0.0, period), (osc.y0, 0.0))
    assert out.t[-1] == period
    assert abs(out.y[-1] - osc.y0) < 1e-6 * osc.y0
    assert abs(out.v[-1]) < 1e-6


def test_time_reversal_symmetry(default_traj):
    osc, _ = default_traj
    period = exact_period(osc).value
    fwd = integrate(osc, (0.0, 0.5 * period), (osc.y0, 0.0))
    back = integrate(osc, (0.5 * period, 0.0), (fwd.y[-1], fwd.v[-1]))
    v_scale = np.max(np.abs(fwd.v))
    assert abs(back.y[-1] - osc.y0) < 1e-8 * osc.y0
    assert abs(back.v[-1]) < 1e-8 * v_scale


def test_linearized_force_recovers_harmonic_period(default_traj):
    osc, _ = default_traj
    k = osc.params.linear_stiffness
    traj = simulate(osc, SimConfig(rel_tol=1e-12), accel=lambda y: -k * y)
    est = measure_period(traj)
    np.testing.assert_allclose(est.value, rayleigh_period(osc.params), rtol=1e-9)


def test_against_scipy_rk45(default_traj):
    osc, _ = default_traj
    period = exact_period(osc).value

    def rhs(t, s):
        return [s[1], acceleration(osc.params, s[0])]

    sol = scipy.integrate.solve_ivp(
        rhs, (0.0, period), [osc.y0, 0.0], rtol=1e-10, atol=1e-12
    )
    mine = integrate(osc, (0.0, period), (osc.y0, 0.0))
    assert abs(mine.y[-1] - sol.y[0, -1]) < 1e-6 * osc.y0
    assert abs(mine.v[-1] - sol.y[1, -1]) < 1e-6


def test_sample_stride_thins_output(default_traj):
    osc, traj = default_traj
    thinned = simulate(osc, SimConfig(sample_stride=8))
    assert len(thinned.t) < len(traj.t)
    # Events are located from every accepted step regardless of stride.
    np.testing.assert_allclose(thinned.events, traj.events, rtol=1e-12)


def test_tighter_tolerance_takes_more_steps(default_traj):
    osc, _ = default_traj
    coarse = simulate(osc, SimConfig(rel_tol=1e-6, n_periods=2))
    fine = simulate(osc, SimConfig(rel_tol=1e-12, n_periods=2))
    assert fine.n_accepted > coarse.n_accepted
    assert coarse.n_rejected >= 0


def test_zero_amplitude_rejected(default_traj):
    osc, _ = default_traj
    with pytest.raises(InvalidParameters):
        simulate(Oscillation(osc.params, 0.0))


def test_step_budget_enforced(default_traj):
    osc, _ = default_traj
    with pytest.raises(MaxStepsExceeded):
        simulate(osc, SimConfig(max_steps=10))


def test_period_needs_three_events():
    traj = Trajectory(
        t=np.array([0.0, 1.0]),
        y=np.array([0.5, 0.4]),
        v=np.array([0.0, -0.1]),
        e=np.array([-2.44, -2.44]),
        events=np.array([0.0, 1.0]),
        n_accepted=2,
        n_rejected=0,
    )
    with pytest.raises(InsufficientEvents):
        measure_period(traj)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(rel_tol=0.0),
        dict(rel_tol=1e-1),
        dict(abs_tol=-1.0),
        dict(max_steps=0),
        dict(n_periods=0),
        dict(sample_stride=0),
    ],
)
def test_invalid_config_rejected(kwargs):
    with pytest.raises(InvalidParameters):
        SimConfig(**kwargs)
