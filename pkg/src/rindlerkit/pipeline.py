"""End-to-end evaluation: modes -> overlaps -> noise -> covariance -> negativity.

Sweep rows are computed independently (optionally across processes), then
sorted by (detector_model, s, aL/c^2) before writing, so the CSV is
byte-stable for a given configuration regardless of worker count.
"""

from __future__ import annotations

import concurrent.futures
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigurationError, RindlerkitError
from .gaussian_state import (
    CovarianceMatrix4,
    UnruhNoise,
    build_covariance,
    log_negativity,
    physicality_check,
    unruh_noise,
)
from .kg import OverlapSet, compute_overlaps, kg_inner
from .modes import (
    MINKOWSKI,
    RINDLER_I,
    ModeFunction,
    build_gaussian_detector_mode,
    build_state_mode,
    translate_mode,
    _decompose_samples,
)
from .params import GridSpec, PhysicalParams, default_grid
from .spectral import SpectralCoefficients, beta_estimate, build_optimized_mode

__all__ = ["SweepRow", "SweepConfig", "evaluate_point", "run_sweep", "CSV_HEADER"]

DETECTOR_MODELS = ("gaussian", "optimized")

CSV_HEADER = (
    "aL_over_c2,s,n_char,detector_model,abs_alpha,abs_beta,abs_beta_prime,"
    "n_unruh,beta_estimate,e_n,min_physicality_eig"
)


@dataclass(frozen=True)
class SweepRow:
    aL_over_c2: float
    s: float
    n_char: int
    detector_model: str
    abs_alpha: float
    abs_beta: float
    abs_beta_prime: float
    n_unruh: float
    beta_estimate: float
    e_n: float
    min_physicality_eig: float

    def to_csv(self) -> str:
        def f(v: float) -> str:
            return f"{v:.11e}"

        return ",".join(
            [
                f(self.aL_over_c2),
                f(self.s),
                str(self.n_char),
                self.detector_model,
                f(self.abs_alpha),
                f(self.abs_beta),
                f(self.abs_beta_prime),
                f(self.n_unruh),
                f(self.beta_estimate),
                f(self.e_n),
                f(self.min_physicality_eig),
            ]
        )


def _stage(name: str):
    """Re-raise stage failures with the failing pipeline stage named."""

    class _ctx:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is not None and isinstance(exc, RindlerkitError):
                exc.args = (f"stage {name}: {exc.args[0] if exc.args else ''}",)
            return False

    return _ctx()


def _detector_own_coefficients(psi: ModeFunction) -> SpectralCoefficients:
    """Detector's positive Rindler family, recomputed from its grid samples."""
    a_k, _ = _decompose_samples(psi.coords, psi.values, psi.d_time, psi.k_grid, psi.chart.c)
    return SpectralCoefficients(psi.k_grid, rindI_pos=a_k)


def _point_physics(params: PhysicalParams, detector_model: str, grid: GridSpec
                   ) -> tuple[OverlapSet, UnruhNoise]:
    """The s-independent part of a sweep point: overlaps and vacuum noise."""
    if detector_model not in DETECTOR_MODELS:
        raise ConfigurationError(f"unknown detector model {detector_model!r}")
    with _stage("state_mode"):
        phi = build_state_mode(params, grid)
        if params.a > 0.0:
            phi = translate_mode(phi, params.c**2 / params.a)
    with _stage("detector_mode"):
        if params.a == 0.0 or detector_model == "gaussian":
            psi = build_gaussian_detector_mode(params, grid)
        else:
            psi, _ = build_optimized_mode(phi, params, grid)
    with _stage("overlaps"):
        overlaps = compute_overlaps(psi, phi, alpha=1.0)
    with _stage("unruh_noise"):
        if params.a == 0.0:
            noise = UnruhNoise(0.0)
        else:
            noise = unruh_noise(_detector_own_coefficients(psi), params)
    return overlaps, noise


def _row_from_physics(params: PhysicalParams, detector_model: str,
                      overlaps: OverlapSet, noise: UnruhNoise) -> SweepRow:
    with _stage("covariance"):
        sigma = build_covariance(overlaps, noise, params.s)
    with _stage("negativity"):
        e_n = log_negativity(sigma)
    with _stage("physicality"):
        _, min_eig = physicality_check(sigma)
    return SweepRow(
        aL_over_c2=params.aL_over_c2,
        s=params.s,
        n_char=params.n_char,
        detector_model=detector_model,
        abs_alpha=abs(overlaps.alpha),
        abs_beta=abs(overlaps.beta),
        abs_beta_prime=abs(overlaps.beta_prime),
        n_unruh=noise.n_mean,
        beta_estimate=beta_estimate(params),
        e_n=e_n,
        min_physicality_eig=min_eig,
    )


def evaluate_point(params: PhysicalParams, detector_model: str,
                   grid: GridSpec | None = None) -> SweepRow:
    """Full pipeline for one (params, detector model) point."""
    if grid is None:
        grid = default_grid(params)
    overlaps, noise = _point_physics(params, detector_model, grid)
    return _row_from_physics(params, detector_model, overlaps, noise)


@dataclass(frozen=True)
class SweepConfig:
    """A sweep over aL/c^2 and s for one or more detector models."""

    base: PhysicalParams
    aL_values: tuple[float, ...]
    s_values: tuple[float, ...]
    models: tuple[str, ...]
    x_points: int = 4096
    x_extent_factor: float = 16.0
    workers: int = 1

    def __post_init__(self):
        for m in self.models:
            if m not in DETECTOR_MODELS:
                raise ConfigurationError(f"unknown detector model {m!r}")
        if not self.aL_values or not self.s_values or not self.models:
            # empty grids are allowed; they produce a header-only CSV
            pass

    @staticmethod
    def log_spaced(lo: float, hi: float, n: int) -> tuple[float, ...]:
        if lo <= 0 or hi <= lo or n < 2:
            raise ConfigurationError("log-spaced grid needs 0 < lo < hi and n >= 2")
        return tuple(float(v) for v in np.geomspace(lo, hi, n))


def _task(args):
    cfg, aL, model = args
    params = PhysicalParams.from_aL(
        aL,
        L=cfg.base.L,
        c=cfg.base.c,
        n_char=cfg.base.n_char,
        s=cfg.base.s,
        k_min_state=cfg.base.k_min_state,
        k_min_detector=cfg.base.k_min_detector,
    )
    grid = default_grid(params, cfg.x_extent_factor, cfg.x_points)
    overlaps, noise = _point_physics(params, model, grid)
    return [
        _row_from_physics(params.with_squeezing(s), model, overlaps, noise)
        for s in cfg.s_values
    ]


def run_sweep(config: SweepConfig, output_path: str | None = None) -> list[SweepRow]:
    """Evaluate every (aL/c^2, s, model) combination; optionally write CSV.

    The expensive mode/overlap work is shared across the s grid of each
    (aL, model) pair; rows come back sorted by (model, s, aL).
    """
    tasks = [(config, aL, model) for model in config.models for aL in config.aL_values]
    rows: list[SweepRow] = []
    if config.workers > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.workers) as pool:
            for chunk in pool.map(_task, tasks):
                rows.extend(chunk)
    else:
        for t in tasks:
            rows.extend(_task(t))
    rows.sort(key=lambda r: (r.detector_model, r.s, r.aL_over_c2))
    if output_path is not None:
        write_csv(rows, output_path)
    return rows


def write_csv(rows: list[SweepRow], path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(CSV_HEADER + "\n")
            for row in rows:
                fh.write(row.to_csv() + "\n")
    except OSError as exc:
        raise ConfigurationError(f"cannot write output file {path}: {exc}") from exc


def rindler_mode_position_table(mode: ModeFunction, x_grid: np.ndarray) -> np.ndarray:
    """Express a region-I mode in position coordinates for plotting:
    columns coord, re_value, im_value, re_dtime, im_dtime on x > 0."""
    if mode.chart.tag != RINDLER_I:
        raise ConfigurationError("position table needs a region-I mode")
    a, c = mode.chart.a, mode.chart.c
    x = np.asarray(x_grid, dtype=float)
    if np.any(x <= 0):
        raise ConfigurationError("position grid must satisfy x > 0")
    xi = (c**2 / a) * np.log(a * x / c**2)
    vals, dts_tau = mode.evaluate(xi)
    dts_t = (c**2 / (a * x)) * dts_tau
    return np.column_stack([x, vals.real, vals.imag, dts_t.real, dts_t.imag])
