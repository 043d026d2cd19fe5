"""Acceptance suite: one test per criterion, each printing a pass/fail line.

The two figure recipes (the strongly localized n_char = 100 sweep and the
n_char = 6 two-model sweep) are computed once per session, at the default
grid and at doubled grid densities, and shared across criteria.
"""

import math
import time

import numpy as np
import pytest

from rindlerkit import (
    OverlapSet,
    PhysicalParams,
    SweepConfig,
    UnruhNoise,
    build_covariance,
    build_optimized_mode,
    build_state_mode,
    covariance_second_moments_oracle,
    decompose_all,
    default_grid,
    evaluate_point,
    horizon_identity_residual,
    kg_inner,
    log_negativity,
    translate_mode,
)
from rindlerkit.pipeline import _point_physics, _row_from_physics
from rindlerkit.spectral import bogoliubov_completeness, random_region_one_mode, wedge_family

AL_GRID = SweepConfig.log_spaced(1e-3, 1.0, 40)


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def _recipe(n_char, s_values, models, doubled):
    rows = {}
    for model in models:
        for aL in AL_GRID:
            p = PhysicalParams.from_aL(aL, n_char=n_char)
            grid = default_grid(p)
            if doubled:
                grid = grid.doubled()
            overlaps, noise = _point_physics(p, model, grid)
            for s in s_values:
                ps = p.with_squeezing(s)
                row = _row_from_physics(ps, model, overlaps, noise)
                silent = _row_from_physics(ps, model, overlaps, UnruhNoise(0.0))
                rows[(model, s, aL)] = (row, silent.e_n)
    return rows


@pytest.fixture(scope="module")
def fig1_rows():
    return _recipe(100, (0.25, 0.5, 1.0), ("gaussian",), doubled=False)


@pytest.fixture(scope="module")
def fig1_rows_doubled():
    return _recipe(100, (0.25, 0.5, 1.0), ("gaussian",), doubled=True)


@pytest.fixture(scope="module")
def fig3_rows():
    return _recipe(6, (1.0, 2.0, 3.0, 4.0), ("gaussian", "optimized"), doubled=False)


@pytest.fixture(scope="module")
def fig3_rows_doubled():
    return _recipe(6, (1.0, 2.0, 3.0, 4.0), ("gaussian", "optimized"), doubled=True)


@pytest.fixture(scope="module")
def wedge_configs():
    out = {}
    for aL in (0.5, 2.0):
        p = PhysicalParams.from_aL(aL, n_char=6)
        grid = default_grid(p)
        phi = translate_mode(build_state_mode(p, grid), p.c**2 / p.a)
        out[aL] = (p, grid, phi, decompose_all(phi, p, grid))
    return out


def test_c01_inertial_anchor():
    t0 = time.time()
    worst = ""
    ok = True
    for model in ("gaussian", "optimized"):
        for s in (0.25, 0.5, 1.0):
            row = evaluate_point(PhysicalParams.from_aL(1e-4, n_char=6, s=s), model)
            lo, hi = 0.99 * 2 * s, 2 * s + 1e-12
            if not (lo <= row.e_n <= hi):
                ok = False
                worst += f" {model}/s={s}: {row.e_n:.6f} not in [{lo:.4f}, {hi:.4f}];"
    elapsed = time.time() - t0
    ok = ok and elapsed < 30.0
    _report("inertial_anchor", ok, f"elapsed={elapsed:.1f}s (<30s){worst or ' all within [0.99*2s, 2s]'}")


def test_c02_ideal_state_exactness():
    worst = 0.0
    for s in (0.25, 0.5, 1.0, 2.0, 3.0, 4.0):
        sigma = build_covariance(OverlapSet(1.0, 1.0, 0.0), UnruhNoise(0.0), s)
        worst = max(worst, abs(log_negativity(sigma) - 2 * s))
    _report("ideal_state_exactness", worst < 1e-12, f"max |E_N - 2s| = {worst:.2e} (<1e-12)")


def test_c03_overlap_estimate_agreement():
    t0 = time.time()
    worst = 0.0
    for aL in (0.005, 0.01, 0.02):
        p = PhysicalParams.from_aL(aL, n_char=100, s=1.0)
        row = evaluate_point(p, "gaussian")
        worst = max(worst, abs(row.abs_beta - row.beta_estimate) / row.beta_estimate)
    elapsed = time.time() - t0
    ok = worst < 0.02 and elapsed < 120.0
    _report("overlap_estimate_agreement", ok,
            f"max rel dev = {worst:.2e} (<2e-2), elapsed={elapsed:.1f}s (<120s)")


def test_c04_fig1_shape(fig1_rows):
    mono_ok = True
    final_ok = True
    detail = []
    for s in (0.25, 0.5, 1.0):
        series = [fig1_rows[("gaussian", s, aL)][0].e_n for aL in AL_GRID]
        steps = np.diff(series)
        if np.any(steps > 1e-6):
            mono_ok = False
        if series[-1] >= 0.1 * 2 * s:
            final_ok = False
        detail.append(f"s={s}: final={series[-1]:.4f} vs {0.1 * 2 * s:.4f}")
    _report("fig1_shape", mono_ok and final_ok,
            ("monotone ok; " if mono_ok else "monotonicity violated; ") + "; ".join(detail))


def test_c05_optimality_suite():
    p = PhysicalParams.from_aL(1.0, n_char=6)
    grid = default_grid(p)
    phi = translate_mode(build_state_mode(p, grid), p.c**2 / p.a)
    psi_opt, nrm = build_optimized_mode(phi, p, grid)
    beta_opt = kg_inner(psi_opt, phi)
    ident_err = abs(beta_opt * nrm - 1.0)
    pos = wedge_family(phi, p.a, grid.k_grid(), "I", "pos")
    keep = grid.k_grid() >= p.k_min_detector * (1 - 1e-12)
    rng = np.random.default_rng(20260810)
    excess = -np.inf
    for _ in range(200):
        trial = random_region_one_mode(p, grid, rng)
        overlap = abs(np.sum(np.conj(trial.amp_pos[keep]) * pos[keep]))
        excess = max(excess, overlap - abs(beta_opt))
    ok = excess <= 1e-9 and ident_err <= 1e-6
    _report("optimality_suite", ok,
            f"200 trials, max overlap excess = {excess:.2e} (<=1e-9), "
            f"|overlap*norm - 1| = {ident_err:.2e} (<=1e-6)")


def test_c06_fig3_dominance(fig3_rows):
    dom_ok = True
    ideal_ok = True
    worst_gap = 0.0
    for s in (1.0, 2.0, 3.0, 4.0):
        for aL in AL_GRID:
            e_opt = fig3_rows[("optimized", s, aL)][0].e_n
            e_gau = fig3_rows[("gaussian", s, aL)][0].e_n
            worst_gap = min(worst_gap, e_opt - e_gau)
            if e_opt < e_gau - 1e-6:
                dom_ok = False
            if aL <= 0.1 and e_opt < 0.99 * 2 * s:
                ideal_ok = False
    _report("fig3_dominance", dom_ok and ideal_ok,
            f"min(optimized - gaussian) = {worst_gap:.2e} (>= -1e-6); "
            f"optimized >= 0.99*2s for aL<=0.1: {ideal_ok}")


def test_c07_horizon_identity(wedge_configs):
    worst = 0.0
    counts = []
    for aL, (p, grid, phi, sc) in wedge_configs.items():
        res = horizon_identity_residual(sc, p)
        mask = np.abs(sc.rindI_neg) > 1e-12
        counts.append(f"aL={aL}: {int(mask.sum())} ks")
        if mask.any():
            worst = max(worst, float(res[mask].max()))
    _report("horizon_identity", worst < 1e-6,
            f"max residual = {worst:.2e} (<1e-6) over {', '.join(counts)}")


def test_c08_completeness(wedge_configs):
    worst_p = 0.0
    worst_c = 0.0
    for aL, (p, grid, phi, sc) in wedge_configs.items():
        worst_p = max(worst_p, abs(float(np.sum(np.abs(sc.mink_pos) ** 2)) - 1.0))
        worst_c = max(worst_c, abs(bogoliubov_completeness(sc) - 1.0))
    ok = worst_p < 1e-4 and worst_c < 1e-3
    _report("completeness", ok,
            f"Parseval dev = {worst_p:.2e} (<1e-4); wedge completeness dev = {worst_c:.2e} (<1e-3)")


def test_c09_unruh_noise_negligibility(fig1_rows):
    worst = 0.0
    for (model, s, aL), (row, e_silent) in fig1_rows.items():
        worst = max(worst, abs(row.e_n - e_silent) / max(row.e_n, 1e-30))
    _report("unruh_noise_negligibility", worst < 0.01,
            f"max relative E_N change with n_mean -> 0: {worst:.2e} (<1e-2)")


def test_c10_covariance_oracle():
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(300):
        beta = (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)) * 0.7
        bp = (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)) * 0.3
        if abs(beta) ** 2 - abs(bp) ** 2 > 1.0:
            beta *= 0.5
        alpha = complex(rng.uniform(0.2, 1.0))
        s = rng.uniform(0.0, 2.0)
        n = rng.uniform(0.0, 1.0)
        built = build_covariance(OverlapSet(alpha, beta, bp), UnruhNoise(n), s).as_float()
        oracle = covariance_second_moments_oracle(alpha, beta, bp, s, n)
        worst = max(worst, float(np.max(np.abs(built - oracle))))
    _report("covariance_oracle", worst < 1e-12,
            f"300 tuples, max entrywise deviation = {worst:.2e} (<1e-12)")


def test_c11_physicality(fig1_rows, fig3_rows):
    worst = 0.0
    n_rows = 0
    for rows in (fig1_rows, fig3_rows):
        for (model, s, aL), (row, _) in rows.items():
            worst = min(worst, row.min_physicality_eig)
            n_rows += 1
    _report("physicality", worst >= -1e-9,
            f"min eig(sigma + i Omega) = {worst:.2e} (>= -1e-9) over {n_rows} rows")


def test_c12_grid_convergence(fig1_rows, fig1_rows_doubled, fig3_rows, fig3_rows_doubled):
    worst = 0.0
    for base, dbl in ((fig1_rows, fig1_rows_doubled), (fig3_rows, fig3_rows_doubled)):
        for key, (row, _) in base.items():
            e1 = row.e_n
            e2 = dbl[key][0].e_n
            worst = max(worst, abs(e2 - e1) / max(abs(e2), 1e-30))
    _report("grid_convergence", worst < 0.005,
            f"max relative E_N change under grid doubling = {worst:.2e} (<5e-3)")
