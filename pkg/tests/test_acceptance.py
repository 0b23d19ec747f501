"""Acceptance suite: every criterion at its stated tolerance, one line each.

Rate criteria share the pinned setup: Gaussian data of amplitude 0.1, p = 1,
s = 2, N = 1024, L = 30, T = 1, deltas {0.4, 0.2, 0.1, 0.05}.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from kernelwave import (
    Field,
    Grid,
    SimConfig,
    NormOrder,
    apply_convolution,
    catalog,
    energy_report,
    gaussian_field,
    integrate,
    lookup,
    matching_order,
    sine_field,
    sobolev_norm,
    spectral_derivative,
    standard_config,
    symbol_eval,
)

from conftest import ACCEPTANCE_PAIRS, INTEGER_ORDER_PAIRS


def report(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {name}: {detail} -> {'PASS' if ok else 'FAIL'}")
    assert ok, f"{name}: {detail}"


# --- rate criteria -------------------------------------------------------------

@pytest.mark.parametrize("name", list(ACCEPTANCE_PAIRS))
def test_rate_window(name, standard_sweep):
    k1, k2, (lo, hi) = ACCEPTANCE_PAIRS[name]
    rep = standard_sweep(name)
    report(
        f"rate {name}",
        lo <= rep.slope <= hi,
        f"{k1} vs {k2}: slope={rep.slope:.3f} window=[{lo}, {hi}]",
    )


def test_linearity_in_time(standard_sweep):
    worst = 0.0
    worst_case = ""
    for name in ACCEPTANCE_PAIRS:
        rep = standard_sweep(name)
        for delta, score in zip(rep.deltas, rep.linearity):
            if score > worst:
                worst, worst_case = score, f"{name} delta={delta:g}"
    report("linearity in t", worst <= 0.5, f"max score {worst:.3f} ({worst_case}), budget 0.5")


def test_static_dynamic_agreement(standard_sweep):
    mismatches = []
    for name in INTEGER_ORDER_PAIRS:
        rep = standard_sweep(name)
        predicted = matching_order(lookup(rep.kernel_1), lookup(rep.kernel_2))
        if predicted != round(rep.slope):
            mismatches.append(f"{name}: predicted {predicted}, slope {rep.slope:.2f}")
    report(
        "static/dynamic agreement",
        not mismatches,
        "; ".join(mismatches) or f"{len(INTEGER_ORDER_PAIRS)} integer-order pairs agree",
    )


# --- operator identities ---------------------------------------------------------

def test_operator_identity_suite():
    grid = Grid(256, 20.0)
    rng = np.random.default_rng(42)
    delta = 0.5
    worst_identity = worst_adjoint = worst_norm = 0.0
    for spec in catalog():
        for _ in range(100):
            f = Field(grid, rng.standard_normal(grid.n))
            g = Field(grid, rng.standard_normal(grid.n))
            kf = apply_convolution(spec, delta, f)
            fx = spectral_derivative(f)
            l2f = sobolev_norm(f, 0.0)

            identity = abs(grid.dx * float(np.dot(kf.values, fx.values)))
            worst_identity = max(worst_identity, identity / (l2f**2 * grid.max_frequency))

            kg = apply_convolution(spec, delta, g)
            lhs = grid.dx * float(np.dot(kf.values, g.values))
            rhs = grid.dx * float(np.dot(f.values, kg.values))
            worst_adjoint = max(worst_adjoint, abs(lhs - rhs) / (l2f * sobolev_norm(g, 0.0)))

            worst_norm = max(worst_norm, sobolev_norm(kf, 0.0) / (spec.mass_bound * l2f))
    ok = worst_identity <= 1e-10 and worst_adjoint <= 1e-12 and worst_norm <= 1.0 + 1e-12
    report(
        "operator identities",
        ok,
        f"100 fields x {len(catalog())} kernels: identity {worst_identity:.2e} (<=1e-10), "
        f"adjoint {worst_adjoint:.2e} (<=1e-12), norm ratio {worst_norm:.12f} (<=1)",
    )


def test_stencil_equivalence():
    grid = Grid(256, 16.0)
    rng = np.random.default_rng(3)
    f = Field(grid, rng.standard_normal(grid.n))
    q = 3
    delta = 2.0 * grid.dx * q

    def shift(v, k):
        return np.roll(v, -k)

    rect = spectral_derivative(apply_convolution(lookup("rectangular"), delta, f))
    rect_fd = (shift(f.values, q) - shift(f.values, -q)) / delta
    err_rect = np.max(np.abs(rect.values - rect_fd))

    five = spectral_derivative(apply_convolution(lookup("five_point"), delta, f))
    v = f.values
    five_fd = (-shift(v, 2 * q) + 8 * shift(v, q) - 8 * shift(v, -q) + shift(v, -2 * q)) / (6 * delta)
    err_five = np.max(np.abs(five.values - five_fd))

    ok = err_rect <= 1e-10 and err_five <= 1e-10
    report("stencil equivalence", ok, f"rectangular {err_rect:.2e}, five-point {err_five:.2e} (<=1e-10)")


# --- conservation and exact linear solutions ---------------------------------------

def accepted_runs():
    for spec in catalog():
        for delta in (0.4, 0.05):
            cfg = standard_config(spec, delta=delta)
            traj = integrate(cfg)
            assert traj.completed, f"{spec.name} delta={delta} unexpectedly aborted"
            yield cfg, traj


@pytest.fixture(scope="module")
def default_trajectories():
    return list(accepted_runs())


def test_mass_conservation(default_trajectories):
    worst = 0.0
    for _, traj in default_trajectories:
        drift = np.max(np.abs(traj.mass - traj.mass[0])) / (1.0 + abs(traj.mass[0]))
        worst = max(worst, drift)
    report(
        "mass conservation",
        worst <= 1e-12,
        f"max relative drift {worst:.2e} over {len(default_trajectories)} accepted runs (<=1e-12)",
    )


def test_rk4_temporal_order():
    grid = Grid(256, 30.0)
    base = SimConfig(
        kernel=lookup("bbm"),
        delta=0.5,
        p=1,
        grid=grid,
        u0=gaussian_field(grid, 0.1, width=3.5),
        t_end=1.0,
        dt=0.1,
    )
    states = {dt: integrate(replace(base, dt=dt)).states[-1] for dt in (0.1, 0.05, 0.0125)}
    ref = states[0.0125].values
    e1 = sobolev_norm(Field(grid, states[0.1].values - ref), 0.0)
    e2 = sobolev_norm(Field(grid, states[0.05].values - ref), 0.0)
    ratio = e1 / e2
    report("rk4 temporal order", 14.0 <= ratio <= 18.0, f"halving ratio {ratio:.2f} in [14, 18]")


def test_dirac_transport():
    grid = Grid(1024, 30.0)
    cfg = SimConfig(
        kernel=lookup("dirac"),
        delta=0.1,
        p=1,
        grid=grid,
        u0=gaussian_field(grid, 0.1, width=1.0),
        t_end=1.0,
        dt=0.01,
        linearize=True,
    )
    traj = integrate(cfg)
    shifted = 0.1 * np.exp(-((grid.x - 1.0) ** 2))
    err = sobolev_norm(Field(grid, traj.states[-1].values - shifted), 0.0)
    report("dirac transport", err <= 1e-8, f"L2 error {err:.2e} at t=1 (<=1e-8)")


def test_dispersion_relation_all_kernels():
    grid = Grid(256, 30.0)
    mode, delta = 3, 0.5
    xi1 = math.pi * mode / grid.half_length
    worst = 0.0
    for spec in catalog():
        cfg = SimConfig(
            kernel=spec,
            delta=delta,
            p=1,
            grid=grid,
            u0=sine_field(grid, 0.01, mode),
            t_end=1.0,
            dt=0.01,
            linearize=True,
        )
        traj = integrate(cfg)
        ratio = traj.states[-1].hat[mode] / traj.states[0].hat[mode]
        measured = -np.angle(ratio) / (xi1 * cfg.t_end)
        worst = max(worst, abs(measured - symbol_eval(spec, delta, xi1)))
    report(
        "linear phase speed",
        worst <= 1e-6,
        f"max |measured - symbol| = {worst:.2e} over {len(catalog())} kernels (<=1e-6)",
    )


# --- energy diagnostics -------------------------------------------------------------

def test_energy_sandwich_and_hyperbolicity(default_trajectories):
    worst_violation = 0.0
    min_c1 = math.inf
    for cfg, traj in default_trajectories:
        trace = energy_report(traj, cfg)
        min_c1 = min(min_c1, trace.c1)
        lower = 0.5 * trace.c1 * traj.h_s_norm**2
        upper = 0.5 * trace.c2 * traj.h_s_norm**2
        slack = 1e-14 * np.maximum(1.0, upper)
        worst_violation = max(
            worst_violation,
            float(np.max(lower - trace.e_s**2 - slack, initial=0.0)),
            float(np.max(trace.e_s**2 - upper - slack, initial=0.0)),
        )
    ok = worst_violation <= 0.0 and min_c1 > 0.0
    report(
        "energy sandwich + hyperbolicity",
        ok,
        f"worst sandwich violation {worst_violation:.2e}, min c1 {min_c1:.3f} (>0)",
    )
