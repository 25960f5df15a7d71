"""Period measurement by direct simulation of the equation of motion.

A Dormand-Prince 5(4) embedded pair (FSAL) integrates (y, v) with
proportional-integral step-size control. Turning points (v = 0) are located
inside accepted steps by cubic Hermite interpolation of v, using the stage
derivatives already available at both step ends, then polished by bisection.
Consecutive turning times are half periods; their mean gives the period and
their spread the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    InsufficientEvents,
    InvalidParameters,
    MaxStepsExceeded,
    StepFailure,
)
from .model import Oscillation, StringParams, acceleration, rayleigh_period
from .quadrature import Method, PeriodEstimate

__all__ = ["SimConfig", "Trajectory", "simulate", "integrate", "measure_period"]

# Dormand-Prince 5(4) coefficients (Dormand & Prince 1980). Stage 7 equals
# the fifth-order result, so its derivative is reused as stage 1 of the next
# step (FSAL).
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
)
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = (
    35.0 / 384.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
)
# fifth-order minus embedded fourth-order weights
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_PI_ALPHA = 0.7 / 5.0  # proportional exponent
_PI_BETA = 0.4 / 5.0  # integral exponent (previous error feedback)


@dataclass(frozen=True)
class SimConfig:
    """Step-controller and run-length settings.

    abs_tol None means 1e-12 * y0, resolved when the run starts (the velocity
    component gets the same floor scaled by the linear angular frequency).
    sample_stride thins the recorded trajectory; events are never thinned.
    """

    rel_tol: float = 1e-10
    abs_tol: float | None = None
    max_steps: int = 10_000_000
    n_periods: int = 10
    sample_stride: int = 1

    def __post_init__(self) -> None:
        if not (0.0 < self.rel_tol < 1e-2):
            raise InvalidParameters(f"rel_tol must be in (0, 1e-2), got {self.rel_tol!r}")
        if self.abs_tol is not None and self.abs_tol < 0.0:
            raise InvalidParameters(f"abs_tol must be >= 0, got {self.abs_tol!r}")
        if self.max_steps < 1:
            raise InvalidParameters(f"max_steps must be >= 1, got {self.max_steps!r}")
        if self.n_periods < 1:
            raise InvalidParameters(f"n_periods must be >= 1, got {self.n_periods!r}")
        if self.sample_stride < 1:
            raise InvalidParameters(
                f"sample_stride must be >= 1, got {self.sample_stride!r}"
            )


@dataclass(frozen=True)
class Trajectory:
    """Recorded samples of one integration run. Arrays are read-only views.

    t, y, v are the sample times, displacements, and velocities; e holds the
    conserved energy of the full nonlinear model at each sample (meaningful
    when the acceleration was not overridden). events are the turning times.
    """

    t: np.ndarray
    y: np.ndarray
    v: np.ndarray
    e: np.ndarray
    events: np.ndarray
    n_accepted: int
    n_rejected: int


def _hermite_v(s: float, h: float, v0: float, a0: float, v1: float, a1: float) -> float:
    """Cubic Hermite value of v at fraction s of a step of width h."""
    s2 = s * s
    s3 = s2 * s
    return (
        (2.0 * s3 - 3.0 * s2 + 1.0) * v0
        + (s3 - 2.0 * s2 + s) * h * a0
        + (-2.0 * s3 + 3.0 * s2) * v1
        + (s3 - s2) * h * a1
    )


def _locate_turning(
    t: float, h: float, v0: float, a0: float, v1: float, a1: float
) -> float:
    """Bisect the Hermite interpolant of v for its sign change in (0, 1)."""
    lo, hi = 0.0, 1.0
    flo = v0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = _hermite_v(mid, h, v0, a0, v1, a1)
        if fm == 0.0:
            lo = hi = mid
            break
        if (flo < 0.0) == (fm < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    return t + 0.5 * (lo + hi) * h


def _run(
    accel: Callable[[float], float],
    t0: float,
    y: float,
    v: float,
    t_end: float,
    rel_tol: float,
    abs_tol_y: float,
    abs_tol_v: float,
    max_steps: int,
    max_events: int | None,
    stride: int,
    h_scale: float,
) -> tuple[list[float], list[float], list[float], list[float], int, int]:
    """Core stepper. Returns (ts, ys, vs, events, n_accepted, n_rejected)."""
    direction = 1.0 if t_end >= t0 else -1.0
    span = abs(t_end - t0)
    if span == 0.0:
        return [t0], [y], [v], [0.0] if v == 0.0 else [], 0, 0

    t = t0
    h = direction * min(span, h_scale / 500.0)
    k1y, k1v = v, accel(y)

    ts, ys, vs = [t0], [y], [v]
    events: list[float] = [t0] if v == 0.0 else []
    err_prev = 1e-4
    n_acc = 0
    n_rej = 0
    just_rejected = False
    steps = 0

    while (t - t_end) * direction < 0.0:
        if max_events is not None and len(events) >= max_events:
            break
        steps += 1
        if steps > max_steps:
            raise MaxStepsExceeded(
                f"no result after {max_steps} steps (t = {t!r} of {t_end!r})"
            )
        if abs(h) < 32.0 * math.ulp(max(abs(t), abs(t_end))):
            raise StepFailure(f"step size underflowed at t = {t!r} (h = {h!r})")
        if (t + h - t_end) * direction > 0.0:
            h = t_end - t

        y2 = y + h * (_A21 * k1y)
        v2 = v + h * (_A21 * k1v)
        k2y, k2v = v2, accel(y2)
        y3 = y + h * (_A31 * k1y + _A32 * k2y)
        v3 = v + h * (_A31 * k1v + _A32 * k2v)
        k3y, k3v = v3, accel(y3)
        y4 = y + h * (_A41 * k1y + _A42 * k2y + _A43 * k3y)
        v4 = v + h * (_A41 * k1v + _A42 * k2v + _A43 * k3v)
        k4y, k4v = v4, accel(y4)
        y5 = y + h * (_A51 * k1y + _A52 * k2y + _A53 * k3y + _A54 * k4y)
        v5 = v + h * (_A51 * k1v + _A52 * k2v + _A53 * k3v + _A54 * k4v)
        k5y, k5v = v5, accel(y5)
        y6 = y + h * (_A61 * k1y + _A62 * k2y + _A63 * k3y + _A64 * k4y + _A65 * k5y)
        v6 = v + h * (_A61 * k1v + _A62 * k2v + _A63 * k3v + _A64 * k4v + _A65 * k5v)
        k6y, k6v = v6, accel(y6)
        y_new = y + h * (_B1 * k1y + _B3 * k3y + _B4 * k4y + _B5 * k5y + _B6 * k6y)
        v_new = v + h * (_B1 * k1v + _B3 * k3v + _B4 * k4v + _B5 * k5v + _B6 * k6v)
        k7y, k7v = v_new, accel(y_new)

        err_y = h * (
            _E1 * k1y + _E3 * k3y + _E4 * k4y + _E5 * k5y + _E6 * k6y + _E7 * k7y
        )
        err_v = h * (
            _E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v + _E7 * k7v
        )
        sc_y = abs_tol_y + rel_tol * max(abs(y), abs(y_new))
        sc_v = abs_tol_v + rel_tol * max(abs(v), abs(v_new))
        err = math.sqrt(0.5 * ((err_y / sc_y) ** 2 + (err_v / sc_v) ** 2))

        if err <= 1.0:
            t_new = t + h
            if (v < 0.0 and v_new > 0.0) or (v > 0.0 and v_new < 0.0):
                events.append(_locate_turning(t, h, v, k1v, v_new, k7v))
            elif v_new == 0.0:
                events.append(t_new)
            n_acc += 1
            t, y, v = t_new, y_new, v_new
            k1y, k1v = k7y, k7v
            if n_acc % stride == 0:
                ts.append(t)
                ys.append(y)
                vs.append(v)
            if err == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = _SAFETY * err ** (-_PI_ALPHA) * err_prev**_PI_BETA
            if just_rejected:
                factor = min(factor, 1.0)
            h *= min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
            err_prev = max(err, 1e-4)
            just_rejected = False
        else:
            n_rej += 1
            h *= min(1.0, max(0.1, _SAFETY * err**-0.2))
            just_rejected = True

    if ts[-1] != t:
        ts.append(t)
        ys.append(y)
        vs.append(v)
    return ts, ys, vs, events, n_acc, n_rej


def _finish(
    p: StringParams,
    ts: Sequence[float],
    ys: Sequence[float],
    vs: Sequence[float],
    events: Sequence[float],
    n_acc: int,
    n_rej: int,
) -> Trajectory:
    t = np.asarray(ts)
    y = np.asarray(ys)
    v = np.asarray(vs)
    e = 0.5 * v * v + (2.0 * p.sigma / p.mass) * (
        y * y / (2.0 * p.l0) - np.hypot(p.l, y)
    )
    ev = np.asarray(events)
    for a in (t, y, v, e, ev):
        a.flags.writeable = False
    return Trajectory(t, y, v, e, ev, n_acc, n_rej)


def _resolve_tols(
    osc: Oscillation, cfg: SimConfig, y_scale: float
) -> tuple[float, float]:
    abs_y = cfg.abs_tol if cfg.abs_tol is not None else 1e-12 * y_scale
    omega0 = math.sqrt(osc.params.linear_stiffness)
    return abs_y, abs_y * omega0


def simulate(
    osc: Oscillation,
    cfg: SimConfig = SimConfig(),
    accel: Callable[[float], float] | None = None,
) -> Trajectory:
    """Release from rest at y0 and integrate until n_periods have elapsed.

    Each period contributes two turning events; the run stops once
    2*n_periods events follow the initial one. The true period never exceeds
    the linear-limit period, so the time horizon (n_periods + 2) linear
    periods always suffices. `accel` overrides the force law (test hook for
    the linearized system); it must map y to d2y/dt2.
    """
    p = osc.params
    if osc.y0 == 0.0:
        raise InvalidParameters("simulation needs a nonzero release amplitude")
    acc = accel if accel is not None else (lambda y: acceleration(p, y))
    abs_y, abs_v = _resolve_tols(osc, cfg, osc.y0)
    horizon = (cfg.n_periods + 2) * rayleigh_period(p)
    want = 2 * cfg.n_periods + 1
    ts, ys, vs, events, n_acc, n_rej = _run(
        acc,
        0.0,
        osc.y0,
        0.0,
        horizon,
        cfg.rel_tol,
        abs_y,
        abs_v,
        cfg.max_steps,
        want,
        cfg.sample_stride,
        rayleigh_period(p),
    )
    if len(events) < want:
        raise ConvergenceFailure(
            f"expected {want} turning events within {horizon!r} time units, "
            f"found {len(events)}"
        )
    return _finish(p, ts, ys, vs, events, n_acc, n_rej)


def integrate(
    osc: Oscillation,
    t_span: tuple[float, float],
    state0: tuple[float, float],
    cfg: SimConfig = SimConfig(),
    accel: Callable[[float], float] | None = None,
) -> Trajectory:
    """Integrate an arbitrary initial state over t_span (backward allowed).

    Turning events are recorded but never stop the run; the trajectory always
    reaches t_span[1] exactly.
    """
    p = osc.params
    acc = accel if accel is not None else (lambda y: acceleration(p, y))
    y_scale = max(osc.y0, abs(state0[0]))
    if y_scale == 0.0:
        raise InvalidParameters("state and amplitude are both zero")
    abs_y, abs_v = _resolve_tols(osc, cfg, y_scale)
    ts, ys, vs, events, n_acc, n_rej = _run(
        acc,
        t_span[0],
        state0[0],
        state0[1],
        t_span[1],
        cfg.rel_tol,
        abs_y,
        abs_v,
        cfg.max_steps,
        None,
        cfg.sample_stride,
        rayleigh_period(p),
    )
    return _finish(p, ts, ys, vs, events, n_acc, n_rej)


def measure_period(traj: Trajectory) -> PeriodEstimate:
    """Period from turning events: twice the mean gap, spread as the error.

    Needs at least three events (two gaps) so the spread is defined.
    """
    if traj.events.size < 3:
        raise InsufficientEvents(
            f"need >= 3 turning events to estimate a period, got {traj.events.size}"
        )
    gaps = np.diff(traj.events)
    return PeriodEstimate(
        2.0 * float(np.mean(gaps)),
        Method.ODE_SIM,
        float(np.std(gaps, ddof=1)),
    )
