"""Plane-wave decompositions across the horizon and the optimal detector mode.

A Minkowski mode restricted to the right (left) wedge projects onto the
region I (II) Rindler families through integrals with kernels
x^(+-i kappa) and x^(-1 +- i kappa), kappa = k c^2 / a; these are done by
the Filon machinery with analytically-continued endpoint moments, so the
coefficients are the distributionally-correct overlaps including the
non-decaying oscillatory tails at the horizon.

Region conventions: both wedge bases are positive-frequency with respect
to their future-directed boost time, so both carry positive KG norm and
the completeness sum is (|I+|^2 - |I-|^2) + (|II+|^2 - |II-|^2) = 1.
With those conventions the across-horizon analytic continuation ties the
two wedges together as

    rindII_pos(k) = -exp(+pi k c^2 / a) * rindI_neg(k),

which horizon_identity_residual verifies per k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._filon import power_oscillatory_integral
from .errors import ConfigurationError, DegenerateModeError, NumericalDomainError
from .modes import (
    MINKOWSKI,
    RINDLER_I,
    RINDLER_II,
    Chart,
    ModeFunction,
    _decompose_samples,
    _norm_const,
    _reconstruct_on_grid,
    _fft_coords,
)
from .params import GridSpec, PhysicalParams, conformal_length

__all__ = [
    "SpectralCoefficients",
    "decompose",
    "wedge_family",
    "horizon_identity_residual",
    "region_two_from_identity",
    "build_optimized_mode",
    "beta_estimate",
    "random_region_one_mode",
]


@dataclass(frozen=True)
class SpectralCoefficients:
    """Box-normalized amplitudes of one mode against the plane-wave families."""

    k_grid: np.ndarray
    mink_pos: np.ndarray | None = None
    rindI_pos: np.ndarray | None = None
    rindI_neg: np.ndarray | None = None
    rindII_pos: np.ndarray | None = None
    rindII_neg: np.ndarray | None = None

    def merge(self, other: "SpectralCoefficients") -> "SpectralCoefficients":
        if not np.array_equal(self.k_grid, other.k_grid):
            raise NumericalDomainError("cannot merge coefficients on different k grids")
        kw = {}
        for name in ("mink_pos", "rindI_pos", "rindI_neg", "rindII_pos", "rindII_neg"):
            mine = getattr(self, name)
            theirs = getattr(other, name)
            kw[name] = theirs if theirs is not None else mine
        return SpectralCoefficients(self.k_grid, **kw)

    def family_table(self, name: str) -> np.ndarray:
        arr = getattr(self, name)
        if arr is None:
            raise NumericalDomainError(f"family {name} not filled")
        return np.column_stack([self.k_grid, arr.real, arr.imag])


# (mu_sign, b_sign) per (region, family); see the wedge kernel derivation
# in _wedge_family_filon below.
_KERNEL_SIGNS = {
    ("I", "pos"): (-1.0, +1.0),
    ("I", "neg"): (+1.0, -1.0),
    ("II", "pos"): (+1.0, +1.0),
    ("II", "neg"): (-1.0, -1.0),
}

_ALIVE = 1e-16         # relative magnitude below which mode content is dead
_SWITCH_X = 1e-10      # x/L scale (in box units) where the horizon switch sits
_OVERSAMPLE = 2.5      # conformal grid margin over the content band limit
_MAX_NODES = 60000


def _alive_span(coords: np.ndarray, mags: np.ndarray) -> tuple[float, float] | None:
    m = float(np.max(mags))
    if m <= 0.0:
        return None
    idx = np.nonzero(mags > _ALIVE * m)[0]
    if idx.size == 0:
        return None
    return float(coords[idx[0]]), float(coords[idx[-1]])


def _wedge_nodes(mode: ModeFunction, region: str, oversample: int = 4) -> np.ndarray | None:
    """Uniform quadrature nodes in distance-from-horizon y (Filon route)."""
    lo = float(mode.coords[0])
    hi = lo + 2.0 * mode.box_extent
    if region == "I":
        y_lo, y_hi = max(0.0, lo), hi
    else:
        if lo >= 0.0:
            return None  # box entirely inside region I: wedge II content is 0
        y_lo, y_hi = 0.0, -lo
    if y_hi <= y_lo:
        return None
    n_int = int(math.ceil(oversample * (y_hi - y_lo) / mode.dz))
    n_int += n_int % 2
    n_int = max(n_int, 2)
    return np.linspace(y_lo, y_hi, n_int + 1)


def _wedge_family_filon(mode: ModeFunction, a: float, k_grid: np.ndarray,
                        region: str, family: str) -> np.ndarray:
    """Second, independent quadrature route: Filon power-kernel moments in x.

    The wedge KG product collapses to i*int dx (w* d_t mode - mode d_t w*)
    over x > 0 (region I) or x < 0 (region II, mirrored to y = -x); the
    plane-wave factors become the power kernels
        w-side value:   y^(mu),        mu = mu_sign * i * kappa
        w-side d_t:     -+ i|k|c (c^2/(a y)) * value
    leaving the smooth data A = i * d_t(mode), B = mode to be fitted.
    """
    mu_sign, b_sign = _KERNEL_SIGNS[(region, family)]
    c = mode.chart.c
    k_grid = np.asarray(k_grid, dtype=float)
    y = _wedge_nodes(mode, region)
    if y is None:
        return np.zeros(k_grid.size, dtype=complex)
    x_pts = y if region == "I" else -y
    vals, dts = mode.evaluate(x_pts)
    kappa = k_grid * c**2 / a
    mu = 1j * mu_sign * kappa
    int_a, int_b = power_oscillatory_integral(y, 1j * dts, vals, mu)
    dk = float(k_grid[1] - k_grid[0]) if k_grid.size > 1 else float(k_grid[0])
    pref = math.sqrt(dk) * _norm_const(k_grid, c) * np.exp(mu * math.log(a / c**2))
    return pref * (int_a + b_sign * k_grid * (c**3 / a) * int_b)


def _switch_transform(k: np.ndarray, xi0: float, w: float) -> np.ndarray:
    """Closed-form transform int e^{-ik xi} / (1 + e^{(xi-xi0)/w}) d xi for k != 0."""
    arg = math.pi * w * k
    out = np.zeros(k.size, dtype=complex)
    small = np.abs(arg) < 700.0
    out[small] = (1j * math.pi * w) * np.exp(-1j * k[small] * xi0) / np.sinh(arg[small])
    return out


def _wedge_transforms(mode: ModeFunction, a: float, k_grid: np.ndarray, region: str):
    """F1(+-k) and F2(+-k): transforms of the wedge time derivative and value
    over the conformal coordinate, horizon tails handled analytically.

    In the wedge's conformal coordinate the basis oscillation is uniform,
    d_tau(mode) dies at the horizon and the value tends to the horizon
    value; subtracting horizon_value * logistic_switch (whose transform is
    closed-form) leaves a smooth integrand dead at both grid ends, so the
    plain trapezoid is spectrally accurate at every k.
    """
    c = mode.chart.c
    sgn = 1.0 if region == "I" else -1.0
    lo = float(mode.coords[0])
    hi = lo + 2.0 * mode.box_extent
    w_lo, w_hi = (max(0.0, lo), hi) if region == "I" else (max(0.0, -hi), -lo)
    if w_hi <= w_lo:
        return None
    # data-driven alive window within the wedge (distance y from horizon)
    probe = np.linspace(w_lo if w_lo > 0 else mode.dz * 1e-3, w_hi, 2048)
    vals_p, _ = mode.evaluate(sgn * probe)
    span = _alive_span(probe, np.abs(vals_p))
    if span is None:
        return None
    y_alive_lo, y_alive_hi = span
    y_hi = min(w_hi, y_alive_hi + 2.0 * mode.dz * 64)

    peak = float(np.max(np.abs(vals_p)))
    horizon_value = 0.0 + 0.0j
    if lo < 0.0 < hi:
        horizon_value = mode.value_at(0.0)
        # a horizon amplitude at rounding level contributes nothing; the
        # bulk path avoids a needlessly deep conformal window
        if abs(horizon_value) <= 1e-13 * peak:
            horizon_value = 0.0 + 0.0j

    # conformal band limit of the content: top mode wavenumber times the
    # blueshift factor at the top of the alive window, plus the requested
    # k band and the switch width
    if mode.has_spectrum():
        mags = np.maximum(np.abs(mode.amp_pos), np.abs(mode.amp_neg))
        amax = float(np.max(mags))
        alive_k = mode.k_grid[mags > _ALIVE * amax] if amax > 0.0 else mode.k_grid[:0]
        k_top = float(alive_k[-1]) if alive_k.size else float(mode.k_grid[-1])
    else:
        k_top = math.pi / mode.dz
    f_max = k_top * (a * y_hi / c**2) + float(np.max(k_grid))

    xi_hi = (c**2 / a) * math.log(a * y_hi / c**2)
    # window-cost guard: content this deep under the blueshift map sits in
    # tails far below the pipeline's tolerances
    cap_lo = xi_hi - 14.0 * 2.0 * mode.box_extent

    use_switch = abs(horizon_value) > 0.0
    if use_switch:
        w_sw = c**2 / (2.0 * a)
        xi0 = (c**2 / a) * math.log(a * (_SWITCH_X * mode.box_extent) / c**2)
        xi_lo = xi0 - 38.0 * w_sw
        if xi_lo < cap_lo:
            # shrink the margin in which the switch must saturate; if even
            # 25 widths do not fit, the horizon amplitude is small enough
            # (threshold above) that plain truncation is harmless
            if (cap_lo - xi0) / w_sw >= 25.0:
                xi_lo = cap_lo
            else:
                use_switch = False
                horizon_value = 0.0 + 0.0j
                xi_lo = cap_lo
        if use_switch:
            f_max += 2.0 / w_sw
    else:
        xi_lo = (c**2 / a) * math.log(a * max(y_alive_lo, 1e-300) / c**2) - 2.0
        xi_lo = max(xi_lo, cap_lo)
    d_xi = math.pi / (_OVERSAMPLE * f_max)
    n = int(math.ceil((xi_hi - xi_lo) / d_xi)) + 1
    if n > _MAX_NODES:
        raise ConfigurationError("conformal quadrature grid too large; coarsen k or the mode")
    xi = np.linspace(xi_lo, xi_hi, n)
    d_xi = float(xi[1] - xi[0])

    y_nodes = (c**2 / a) * np.exp(a * xi / c**2)
    vals, dts = mode.evaluate(sgn * y_nodes)
    d_tau = (a * y_nodes / c**2) * dts
    g2 = vals
    if use_switch:
        g2 = g2 - horizon_value / (1.0 + np.exp(np.clip((xi - xi0) / w_sw, -600, 600)))

    ks = np.concatenate([k_grid, -k_grid])
    f1 = np.empty(ks.size, dtype=complex)
    f2 = np.empty(ks.size, dtype=complex)
    chunk = max(1, int(4e6 // n))
    for i in range(0, ks.size, chunk):
        phase = np.exp(-1j * np.outer(ks[i : i + chunk], xi))
        f1[i : i + chunk] = phase @ d_tau * d_xi
        f2[i : i + chunk] = phase @ g2 * d_xi
    if use_switch:
        f2 = f2 + horizon_value * _switch_transform(ks, xi0, w_sw)
    nk = k_grid.size
    return f1[:nk], f1[nk:], f2[:nk], f2[nk:]


def wedge_families(mode: ModeFunction, a: float, k_grid: np.ndarray,
                   region: str) -> tuple[np.ndarray, np.ndarray]:
    """(positive, negative) frequency amplitudes of `mode` in one wedge."""
    if mode.chart.tag != MINKOWSKI:
        raise NumericalDomainError("wedge decompositions act on Minkowski modes")
    if a <= 0:
        raise NumericalDomainError("wedge decompositions require a > 0")
    k_grid = np.asarray(k_grid, dtype=float)
    tr = _wedge_transforms(mode, a, k_grid, region)
    if tr is None:
        z = np.zeros(k_grid.size, dtype=complex)
        return z, z.copy()
    f1p, f1m, f2p, f2m = tr
    dk = float(k_grid[1] - k_grid[0]) if k_grid.size > 1 else float(k_grid[0])
    pref = math.sqrt(dk) * _norm_const(k_grid, mode.chart.c)
    kc = k_grid * mode.chart.c
    if region == "I":
        pos = pref * (1j * f1p + kc * f2p)
        neg = pref * (1j * f1m - kc * f2m)
    else:
        pos = pref * (1j * f1m + kc * f2m)
        neg = pref * (1j * f1p - kc * f2p)
    return pos, neg


def wedge_family(mode: ModeFunction, a: float, k_grid: np.ndarray,
                 region: str, family: str, method: str = "conformal") -> np.ndarray:
    """One wedge family; `method`="filon" selects the independent power-kernel
    quadrature used for cross-validation."""
    if method == "filon":
        if mode.chart.tag != MINKOWSKI:
            raise NumericalDomainError("wedge decompositions act on Minkowski modes")
        if a <= 0:
            raise NumericalDomainError("wedge decompositions require a > 0")
        return _wedge_family_filon(mode, a, np.asarray(k_grid, dtype=float), region, family)
    pos, neg = wedge_families(mode, a, k_grid, region)
    return pos if family == "pos" else neg


def decompose(mode: ModeFunction, basis_family: Chart, grid: GridSpec) -> SpectralCoefficients:
    """Fill the coefficient families of `mode` against one basis family."""
    k_grid = grid.k_grid()
    if basis_family.tag == MINKOWSKI:
        if mode.chart.tag != MINKOWSKI:
            raise NumericalDomainError("Minkowski family of a non-Minkowski mode")
        a_k, _ = _decompose_samples(mode.coords, mode.values, mode.d_time, k_grid, mode.chart.c)
        return SpectralCoefficients(k_grid, mink_pos=a_k)
    if basis_family.a <= 0:
        raise NumericalDomainError("Rindler families require a > 0")
    region = "I" if basis_family.tag == RINDLER_I else "II"
    pos, neg = wedge_families(mode, basis_family.a, k_grid, region)
    if region == "I":
        return SpectralCoefficients(k_grid, rindI_pos=pos, rindI_neg=neg)
    return SpectralCoefficients(k_grid, rindII_pos=pos, rindII_neg=neg)


def decompose_all(mode: ModeFunction, params: PhysicalParams, grid: GridSpec) -> SpectralCoefficients:
    """All five families at once (a > 0)."""
    out = decompose(mode, Chart(MINKOWSKI, 0.0, params.c), grid)
    out = out.merge(decompose(mode, Chart(RINDLER_I, params.a, params.c), grid))
    out = out.merge(decompose(mode, Chart(RINDLER_II, params.a, params.c), grid))
    return out


def bogoliubov_completeness(coeffs: SpectralCoefficients) -> float:
    """Signed wedge-family weight, trapezoid-closed at the k -> 0 boundary.

    The density of |pos|^2 - |neg|^2 weight tends to a finite constant as
    k -> 0 (thermal equipartition cancels the 1/k normalization), so the
    plain grid sum over k = dk, 2dk, ... misses half a bin; the closure term
    extrapolates the density to the boundary.  Converges to 1 for a
    unit-norm positive-frequency mode.
    """
    for name in ("rindI_pos", "rindI_neg", "rindII_pos", "rindII_neg"):
        if getattr(coeffs, name) is None:
            raise NumericalDomainError("need all four wedge families filled")
    diff = (
        np.abs(coeffs.rindI_pos) ** 2
        - np.abs(coeffs.rindI_neg) ** 2
        + np.abs(coeffs.rindII_pos) ** 2
        - np.abs(coeffs.rindII_neg) ** 2
    )
    return float(math.fsum(diff) + 0.5 * diff[0])


def horizon_identity_residual(coeffs: SpectralCoefficients, params: PhysicalParams,
                              floor: float = 1e-7) -> np.ndarray:
    """Per-k relative residual of the across-horizon continuation identity.

    The pure-negative-frequency combinations across the horizon force
    rindI_neg(k) = -exp(-pi k c^2/a) * rindII_pos(k); the residual is
    |rindI_neg + exp(-pi kappa) rindII_pos| normalized by the larger of
    the two sides (floored, so exponentially dead coefficients do not
    amplify roundoff).
    """
    if coeffs.rindI_neg is None or coeffs.rindII_pos is None:
        raise NumericalDomainError("need rindI_neg and rindII_pos filled")
    kappa = coeffs.k_grid * params.c**2 / params.a
    damp = np.exp(-math.pi * kappa)
    num = np.abs(coeffs.rindI_neg + damp * coeffs.rindII_pos)
    den = np.maximum(np.abs(coeffs.rindI_neg), damp * np.abs(coeffs.rindII_pos))
    return num / np.maximum(den, floor)


def region_two_from_identity(coeffs: SpectralCoefficients, params: PhysicalParams) -> np.ndarray:
    """Second, independent route to rindII_pos: continue rindI_neg across
    the horizon instead of integrating over x < 0."""
    if coeffs.rindI_neg is None:
        raise NumericalDomainError("need rindI_neg filled")
    kappa = coeffs.k_grid * params.c**2 / params.a
    with np.errstate(over="ignore"):
        grow = np.exp(math.pi * kappa)
    out = -grow * coeffs.rindI_neg
    return np.where(np.isfinite(out), out, 0.0)


def build_optimized_mode(phi_B: ModeFunction, params: PhysicalParams,
                         grid: GridSpec) -> tuple[ModeFunction, float]:
    """Best region-I detector mode: the normalized positive-frequency
    region-I part of the state mode, summed over k >= k_min_detector.

    Returns the reconstructed mode on the conformal grid and the
    normalization constant (reciprocal of its overlap with the state mode).
    """
    if params.a <= 0:
        raise NumericalDomainError("optimized mode requires a > 0")
    k_grid = grid.k_grid()
    coef = wedge_family(phi_B, params.a, k_grid, "I", "pos")
    keep = k_grid >= params.k_min_detector * (1.0 - 1e-12)
    coef = np.where(keep, coef, 0.0)
    total = float(np.sum(np.abs(coef) ** 2))
    if total < 1e-12:
        raise DegenerateModeError("state mode is essentially behind the horizon")
    normalization = 1.0 / math.sqrt(total)
    amp = normalization * coef
    chart = Chart(RINDLER_I, params.a, params.c)
    coords = _fft_coords(0.0, grid.x_extent, grid.x_points)
    values, d_time = _reconstruct_on_grid(coords, k_grid, amp, np.zeros_like(amp), params.c)
    mode = ModeFunction(chart, coords, values, d_time, k_grid, amp, np.zeros_like(amp))
    return mode, normalization


def beta_estimate(params: PhysicalParams) -> float:
    """Closed-form estimate of the detector/state overlap magnitude,
    (1 + (N a L / (4 c^2))^2)^(-1/4); exact in the small-aL regime."""
    q = params.n_char * params.aL_over_c2 / 4.0
    return (1.0 + q * q) ** -0.25


def random_region_one_mode(params: PhysicalParams, grid: GridSpec,
                           rng: np.random.Generator) -> ModeFunction:
    """Randomized trial detector mode for the optimality bound: a Gaussian
    conformal-coordinate packet with random centre, width in [Lt/2, 2 Lt]
    and carrier in [k_min_detector, 4 N / Lt], hard-filtered and normalized.
    """
    if params.a <= 0:
        raise NumericalDomainError("trial detector modes require a > 0")
    lt = conformal_length(params)
    width = rng.uniform(0.5 * lt, 2.0 * lt)
    centre = rng.uniform(-2.0 * lt, 2.0 * lt)
    carrier = rng.uniform(params.k_min_detector, 4.0 * params.n_char / lt)
    chart = Chart(RINDLER_I, params.a, params.c)
    coords = _fft_coords(0.0, grid.x_extent, grid.x_points)
    z = coords - centre
    vals = np.exp(-(z**2) / width**2 + 1j * carrier * z)
    dts = -1j * carrier * params.c * vals
    k_grid = grid.k_grid()
    a_k, b_k = _decompose_samples(coords, vals, dts, k_grid, params.c)
    keep = k_grid >= params.k_min_detector * (1.0 - 1e-12)
    a_k = np.where(keep, a_k, 0.0)
    b_k = np.where(keep, b_k, 0.0)
    # positive-frequency region-I detector: drop the tiny negative-norm part
    b_k = np.zeros_like(b_k)
    norm = float(np.sum(np.abs(a_k) ** 2))
    if norm < 1e-12:
        raise DegenerateModeError("random trial mode lost all content to the filter")
    a_k /= math.sqrt(norm)
    values, d_time = _reconstruct_on_grid(coords, k_grid, a_k, b_k, params.c)
    return ModeFunction(chart, coords, values, d_time, k_grid, a_k, b_k)
