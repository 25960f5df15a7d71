"""Acceptance gate: every shipped guarantee exercised at its stated tolerance.

Each criterion is one test emitting one summary line, so `pytest -v`
doubles as the acceptance report.  Criterion 7's bound-coalescence clause
is known to be unattainable as stated (see the assertion message for the
arithmetic); it is kept faithful to the stated tolerance and left failing
rather than silently loosened.
"""

import itertools
import json
import math

import numpy as np
import pytest

import oracle
import ssp.cli
from ssp import (
    Oscillation,
    QuadratureConfig,
    SimConfig,
    StringParams,
    check_sandwich,
    compute_bounds,
    exact_period,
    measure_period,
    period_elliptic,
    quartic_coefficients,
    quartic_roots,
    rayleigh_period,
    relative_error_bounds,
    simulate,
    upper_bound,
)

REFERENCE = StringParams(l0=1.0, l=1.25, sigma=1.0, mass=1.0)


def _report(criterion, ok, detail):
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")


def _draw_oscillations(rng, n):
    oscs = []
    for _ in range(n):
        l0 = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
        l = l0 * math.exp(rng.uniform(math.log(1.01), math.log(10.0)))
        mass = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
        sigma = mass * math.exp(rng.uniform(math.log(1e-2), math.log(1e2)))
        amp = l * math.exp(rng.uniform(math.log(1e-4), math.log(3.0)))
        oscs.append(Oscillation(StringParams(l0, l, sigma, mass), amp))
    return oscs


def test_criterion_1_cross_method_grid():
    # Three independent routes to the period agree across a parameter grid:
    # quadrature vs closed form to 1e-9, quadrature vs simulation to 1e-7.
    sim_cfg = SimConfig(rel_tol=1e-9, n_periods=4)
    worst_qe = worst_qo = 0.0
    cells = 0
    for stretch, rel_amp, som in itertools.product(
        (1.05, 1.25, 1.5, 2.0, 4.0), (0.05, 0.2, 0.5, 1.0, 2.0), (0.1, 1.0, 10.0)
    ):
        osc = Oscillation(StringParams(1.0, stretch, som, 1.0), rel_amp * stretch)
        q = exact_period(osc).value
        e = period_elliptic(osc).value
        o = measure_period(simulate(osc, sim_cfg)).value
        worst_qe = max(worst_qe, abs(q - e) / q)
        worst_qo = max(worst_qo, abs(q - o) / q)
        cells += 1
    ok = worst_qe <= 1e-9 and worst_qo <= 1e-7
    _report(
        1,
        ok,
        f"{cells} cells, worst quad-vs-elliptic {worst_qe:.2e} (tol 1e-9), "
        f"worst quad-vs-ode {worst_qo:.2e} (tol 1e-7)",
    )
    assert ok


def test_criterion_2_randomized_sandwich():
    # 1000 random configurations: lower - slack <= P <= upper + slack with
    # relative slack 1e-9, and strictly P < upper whenever y0 > 0.
    rng = np.random.default_rng(0)
    failures = 0
    for osc in _draw_oscillations(rng, 1000):
        report = check_sandwich(osc, exact_period(osc), rel_slack=1e-9)
        if not (report.passed and report.value < report.upper):
            failures += 1
    ok = failures == 0
    _report(2, ok, f"1000 draws, {failures} sandwich violations")
    assert ok


def test_criterion_3_reference_cell_reproduced():
    # Bounds match their arbitrary-precision evaluations, and every engine
    # reproduces the independently computed period to 1e-10.
    osc = Oscillation(REFERENCE, 0.5)
    b = compute_bounds(osc)
    dev_upper = abs(b.upper - oracle.UPPER_REF) / oracle.UPPER_REF
    dev_lower = abs(b.lower_corrected - oracle.LOWER_CORR_REF) / oracle.LOWER_CORR_REF
    engines = {
        "quadrature": exact_period(osc).value,
        "elliptic": period_elliptic(osc).value,
        "ode": measure_period(
            simulate(osc, SimConfig(rel_tol=1e-13, abs_tol=1e-15 * osc.y0))
        ).value,
    }
    devs = {k: abs(v - oracle.P_REF) / oracle.P_REF for k, v in engines.items()}
    ok = dev_upper < 1e-13 and dev_lower < 1e-13 and all(d <= 1e-10 for d in devs.values())
    _report(
        3,
        ok,
        f"bounds dev ({dev_upper:.1e}, {dev_lower:.1e}), engine devs "
        + ", ".join(f"{k}={v:.1e}" for k, v in devs.items())
        + " (tol 1e-10)",
    )
    assert ok


def test_criterion_4_error_corollary_scaling():
    # Row-wise: bound <= R <= 0; fitted log-log slope of |R| is 2.0 +- 0.1.
    rel_amps = (0.01, 0.02, 0.05, 0.1, 0.2)
    r_vals, ordered = [], True
    for rel in rel_amps:
        osc = Oscillation(REFERENCE, rel * REFERENCE.l)
        period = exact_period(osc).value
        r = (period - upper_bound(REFERENCE)) / period
        low, high = relative_error_bounds(osc)
        ordered = ordered and low <= r <= high
        r_vals.append(r)
    slope = np.polyfit(np.log(np.array(rel_amps) * REFERENCE.l), np.log(np.abs(r_vals)), 1)[0]
    ok = ordered and abs(slope - 2.0) <= 0.1
    _report(4, ok, f"bound ordering {'held' if ordered else 'broke'}, slope {slope:.4f} (2.0 +- 0.1)")
    assert ok


def test_criterion_5_quartic_roots_vs_eigensolver():
    # 100 random parameter sets: closed-form roots match numpy's companion
    # eigensolver to 1e-12 of the half-length scale, and obey the root sum.
    rng = np.random.default_rng(0)
    worst_root = worst_sum = 0.0
    for _ in range(100):
        l0 = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
        l = l0 * math.exp(rng.uniform(math.log(1.01), math.log(10.0)))
        # Keep the outer roots separated so the eigensolver's own
        # conditioning does not dominate the comparison.
        cap = math.sqrt((2.0 * l0 + 0.9 * l) ** 2 - l * l)
        amp = math.exp(rng.uniform(math.log(0.2 * l), math.log(min(2.0 * l, cap))))
        osc = Oscillation(StringParams(l0, l, 1.0, 1.0), amp)
        mine = np.array(quartic_roots(osc).roots)
        theirs = np.sort(np.roots(quartic_coefficients(osc)).real)
        worst_root = max(worst_root, float(np.max(np.abs(mine - theirs))) / l)
        worst_sum = max(worst_sum, abs(math.fsum(mine) - 2.0 * l0))
    ok = worst_root <= 1e-12 and worst_sum <= 1e-12
    _report(
        5, ok, f"100 sets, worst scaled root dev {worst_root:.2e}, worst sum dev {worst_sum:.2e} (tol 1e-12)"
    )
    assert ok


def test_criterion_6_simulation_quality_defaults():
    # At default tolerances over 10 periods: relative energy drift < 1e-8
    # and half-period gap scatter below 1e-7 of the period.
    traj = simulate(Oscillation(REFERENCE, 0.5))
    drift = float(np.max(np.abs(traj.e - traj.e[0])) / abs(traj.e[0]))
    est = measure_period(traj)
    scatter = est.err_estimate / est.value
    ok = drift < 1e-8 and scatter < 1e-7
    _report(6, ok, f"energy drift {drift:.2e} (tol 1e-8), gap scatter {scatter:.2e} (tol 1e-7)")
    assert ok


def test_criterion_7_harmonic_limit_of_period():
    # At y0 = 1e-8 * l the integrated period matches the harmonic one to 1e-12.
    osc = Oscillation(REFERENCE, 1e-8 * REFERENCE.l)
    dev = abs(exact_period(osc).value - rayleigh_period(REFERENCE)) / rayleigh_period(REFERENCE)
    ok = dev <= 1e-12
    _report("7 (period limit)", ok, f"relative deviation {dev:.2e} (tol 1e-12)")
    assert ok


def test_criterion_7_harmonic_limit_of_bounds():
    # Stated requirement: at y0 = 1e-4 * l the bounds ratio differs from 1
    # by less than 1e-8.  The bounds themselves forbid this: to leading
    # order 1 - lower/upper = sigma*y0^2 / (2*m*l0*l^2*omega0^2), which is
    # 1.25e-8 at these parameters, so the gap sits 25% above the requested
    # ceiling in exact arithmetic.  Kept at the stated tolerance; expected
    # to fail until the requirement is renegotiated.
    osc = Oscillation(REFERENCE, 1e-4 * REFERENCE.l)
    b = compute_bounds(osc)
    gap = 1.0 - b.lower_corrected / b.upper
    floor = (
        osc.params.sigma
        * osc.y0**2
        / (2.0 * osc.params.mass * osc.params.l0 * osc.params.l**2 * REFERENCE.linear_stiffness)
    )
    ok = abs(gap) < 1e-8
    _report(
        "7 (bound coalescence)",
        ok,
        f"gap {gap:.10e} vs tol 1e-8; analytic floor {floor:.10e}",
    )
    assert ok, (
        f"bounds gap at y0=1e-4*l is {gap:.10e}, above the stated 1e-8: the "
        f"corrected lower bound differs from the upper one by "
        f"sigma*y0^2/(2*m*l0*l^2*omega0^2) = {floor:.10e} at leading order, "
        "so no correct implementation can meet 1e-8 here"
    )


def test_criterion_8_cli_contract(capsys):
    # The verification subcommand succeeds, identical invocations are
    # byte-identical, and machine formats round-trip at full precision.
    code = ssp.cli.main(["verify"])
    verify_out = capsys.readouterr()
    ok_verify = code == 0 and "all invariants hold" in verify_out.out

    ssp.cli.main(["verify", "--samples", "120", "--seed", "9"])
    first = capsys.readouterr()
    ssp.cli.main(["verify", "--samples", "120", "--seed", "9"])
    second = capsys.readouterr()
    ok_deterministic = first == second

    ssp.cli.main(["period", "--format", "csv", "--method", "all"])
    csv_text = capsys.readouterr().out
    ssp.cli.main(["period", "--format", "json", "--method", "all"])
    payload = json.loads(capsys.readouterr().out)
    header, values = [ln.split(",") for ln in csv_text.strip().splitlines()]
    ok_roundtrip = True
    for key, field in zip(header, values):
        if key == "pass":
            ok_roundtrip &= field == ("true" if payload[key] else "false")
        else:
            ok_roundtrip &= float(field) == payload[key] and repr(float(field)) == field

    ok = ok_verify and ok_deterministic and ok_roundtrip
    _report(
        8,
        ok,
        f"verify exit={code}, deterministic={ok_deterministic}, "
        f"round-trip={ok_roundtrip}",
    )
    assert ok
