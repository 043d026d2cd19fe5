"""Localized field modes and plane-wave bases on the t = tau = 0 slice.

Every constructed mode is stored twice over: as Cauchy-data samples
(value and time derivative) on a uniform FFT-style grid of its own chart,
and as box-normalized plane-wave amplitudes (positive-norm family a_k,
negative-norm family b_k) against that chart's basis.  The spectral form
makes translation, filtering and cross-chart evaluation exact.

Chart conventions
-----------------
minkowski : coordinate x, time t.
rindler_I : conformal coordinate xi covering x > 0 via
            x = (c^2/a) exp(a xi / c^2) at t = tau = 0; d_tau = (a x/c^2) d_t.
rindler_II: mirrored wedge x < 0 with future-directed Killing time; its
            plane waves enter only through region x < 0 quadratures
            (see the spectral module) and are never sampled on a grid here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigurationError, DegenerateModeError, NumericalDomainError
from .params import GridSpec, PhysicalParams, conformal_length

__all__ = [
    "Chart",
    "ModeFunction",
    "PlaneWaveBasis",
    "build_state_mode",
    "build_gaussian_detector_mode",
    "translate_mode",
    "sample_plane_wave",
    "low_frequency_filter",
    "rindler_to_position",
    "position_to_rindler",
]

MINKOWSKI = "minkowski"
RINDLER_I = "rindler_I"
RINDLER_II = "rindler_II"


@dataclass(frozen=True)
class Chart:
    """Coordinate chart tag plus the acceleration that defines it.

    For Rindler charts a > 0 is required; Minkowski carries a = 0.
    """

    tag: str
    a: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        if self.tag not in (MINKOWSKI, RINDLER_I, RINDLER_II):
            raise ConfigurationError(f"unknown chart tag {self.tag!r}")
        if self.tag != MINKOWSKI and self.a <= 0:
            raise NumericalDomainError("Rindler charts require a > 0")


def rindler_to_position(xi: np.ndarray, a: float, c: float = 1.0) -> np.ndarray:
    """Map region-I conformal coordinate xi to Minkowski position x > 0."""
    return (c**2 / a) * np.exp(a * np.asarray(xi, dtype=float) / c**2)


def position_to_rindler(x: np.ndarray, a: float, c: float = 1.0) -> np.ndarray:
    """Inverse of rindler_to_position; requires x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise NumericalDomainError("region I requires x > 0")
    return (c**2 / a) * np.log(a * x / c**2)


@dataclass(frozen=True)
class ModeFunction:
    """A localized mode given by its Cauchy data on the simultaneity slice.

    coords are absolute own-chart coordinates (uniform grid over a
    periodized box); values/d_time are complex samples of the wavefunction
    and its chart time derivative.  k_grid/amp_pos/amp_neg, when present,
    are the box-normalized plane-wave amplitudes of the positive- and
    negative-norm families, with absolute-phase basis
    w_k(z) = sqrt(dk/(4 pi |k| c)) * exp(i k z).
    """

    chart: Chart
    coords: np.ndarray
    values: np.ndarray
    d_time: np.ndarray
    k_grid: np.ndarray | None = None
    amp_pos: np.ndarray | None = None
    amp_neg: np.ndarray | None = None

    @property
    def box_center(self) -> float:
        return float(self.coords[self.coords.size // 2])

    @property
    def box_extent(self) -> float:
        """Half-length of the periodized box."""
        return float(self.coords.size * (self.coords[1] - self.coords[0]) / 2.0)

    @property
    def dz(self) -> float:
        return float(self.coords[1] - self.coords[0])

    def has_spectrum(self) -> bool:
        return self.k_grid is not None

    def conjugate(self) -> "ModeFunction":
        """Complex-conjugate mode (flips the sign of the KG norm)."""
        amp_pos = amp_neg = None
        if self.has_spectrum():
            amp_pos = np.conj(self.amp_neg)
            amp_neg = np.conj(self.amp_pos)
        return replace(
            self,
            values=np.conj(self.values),
            d_time=np.conj(self.d_time),
            amp_pos=amp_pos,
            amp_neg=amp_neg,
        )

    def scaled(self, factor: complex) -> "ModeFunction":
        amp_pos = self.amp_pos * factor if self.has_spectrum() else None
        amp_neg = self.amp_neg * factor if self.has_spectrum() else None
        return replace(
            self,
            values=self.values * factor,
            d_time=self.d_time * factor,
            amp_pos=amp_pos,
            amp_neg=amp_neg,
        )

    def evaluate(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Evaluate (value, d_time) at arbitrary own-chart coordinates.

        Uses the exact spectral representation; points outside the
        periodized box return 0 (the mode is localized well inside it).
        """
        if not self.has_spectrum():
            raise NumericalDomainError("mode carries no spectral representation")
        points = np.asarray(points, dtype=float)
        lo = float(self.coords[0])
        hi = lo + 2.0 * self.box_extent
        inside = (points >= lo) & (points < hi)
        vals = np.zeros(points.shape, dtype=complex)
        dts = np.zeros(points.shape, dtype=complex)
        if np.any(inside):
            v, d = _eval_spectrum(
                points[inside], self.k_grid, self.amp_pos, self.amp_neg, self.chart.c
            )
            vals[inside] = v
            dts[inside] = d
        return vals, dts

    def value_at(self, point: float) -> complex:
        v, _ = self.evaluate(np.array([point]))
        return complex(v[0])

    def kg_norm_discrete(self) -> float:
        """KG norm from the spectral amplitudes (exact on the box)."""
        if not self.has_spectrum():
            raise NumericalDomainError("mode carries no spectral representation")
        return float(np.sum(np.abs(self.amp_pos) ** 2) - np.sum(np.abs(self.amp_neg) ** 2))

    def negative_weight(self) -> float:
        """KG weight carried by the negative-norm family."""
        if not self.has_spectrum():
            raise NumericalDomainError("mode carries no spectral representation")
        return float(np.sum(np.abs(self.amp_neg) ** 2))

    def to_table(self) -> np.ndarray:
        """Plain-text export: columns coord, re_value, im_value, re_dtime, im_dtime."""
        return np.column_stack(
            [
                self.coords,
                self.values.real,
                self.values.imag,
                self.d_time.real,
                self.d_time.imag,
            ]
        )


@dataclass(frozen=True)
class PlaneWaveBasis:
    """Discretized delta-normalized plane waves of one chart.

    Discrete modes w_k = sqrt(dk) * (4 pi |k| c)^(-1/2) e^{i k z} are
    pairwise KG-orthonormal on the periodized box of length box_length.
    """

    chart: Chart
    k_grid: np.ndarray
    box_length: float

    def __post_init__(self):
        if np.any(self.k_grid == 0.0):
            raise NumericalDomainError("k = 0 is not normalizable")

    @property
    def dk(self) -> float:
        return 2.0 * math.pi / self.box_length


def _norm_const(k: np.ndarray, c: float) -> np.ndarray:
    return 1.0 / np.sqrt(4.0 * math.pi * np.abs(k) * c)


def _eval_spectrum(points, k_grid, amp_pos, amp_neg, c, chunk: int = 512):
    """Sum the plane-wave series at arbitrary points (chunked over points)."""
    dk = float(k_grid[1] - k_grid[0]) if k_grid.size > 1 else float(k_grid[0])
    scale = math.sqrt(dk) * _norm_const(k_grid, c)
    ca = amp_pos * scale
    cb = amp_neg * scale
    da = ca * (-1j * np.abs(k_grid) * c)
    db = cb * (+1j * np.abs(k_grid) * c)
    vals = np.empty(points.size, dtype=complex)
    dts = np.empty(points.size, dtype=complex)
    for start in range(0, points.size, chunk):
        sl = slice(start, min(start + chunk, points.size))
        phase = np.exp(1j * np.outer(points[sl], k_grid))
        vals[sl] = phase @ ca + np.conj(phase) @ cb
        dts[sl] = phase @ da + np.conj(phase) @ db
    return vals, dts


def _decompose_samples(coords, values, d_time, k_grid, c):
    """Project Cauchy data on an FFT grid onto the two plane-wave families.

    a_k = (w_k, f), b_k = -(w_k*, f); both reduce to discrete Fourier
    transforms of the samples, exact for box-band-limited data.
    """
    n = coords.size
    dz = float(coords[1] - coords[0])
    dk = float(k_grid[1] - k_grid[0]) if k_grid.size > 1 else float(k_grid[0])
    # FT(g)(k) = dz * sum g_j e^{-i k z_j}; FFT gives it on the full bin grid.
    ft_v = np.fft.fft(values) * dz
    ft_d = np.fft.fft(d_time) * dz
    # bin m of fft corresponds to k = m*dk for m < n/2 (dz*dk = 2 pi / n)
    m = np.rint(k_grid / dk).astype(int)
    if np.any(np.abs(m * dk - k_grid) > 1e-9 * dk) or np.any(m >= n // 2):
        raise ConfigurationError("k grid incompatible with the sample grid")
    z0 = float(coords[0])
    phase0 = np.exp(-1j * k_grid * z0)  # fft assumes first sample at index 0
    absk = np.abs(k_grid)
    nrm = math.sqrt(dk) * _norm_const(k_grid, c)
    ft_v_pos = ft_v[m] * phase0
    ft_d_pos = ft_d[m] * phase0
    ft_v_neg = ft_v[-m] * np.conj(phase0)
    ft_d_neg = ft_d[-m] * np.conj(phase0)
    a = nrm * (1j * ft_d_pos + absk * c * ft_v_pos)
    b = -nrm * (1j * ft_d_neg - absk * c * ft_v_neg)
    return a, b


def _reconstruct_on_grid(coords, k_grid, amp_pos, amp_neg, c):
    n = coords.size
    dz = float(coords[1] - coords[0])
    dk = float(k_grid[1] - k_grid[0]) if k_grid.size > 1 else float(k_grid[0])
    m = np.rint(k_grid / dk).astype(int)
    nrm = math.sqrt(dk) * _norm_const(k_grid, c)
    absk = np.abs(k_grid)
    z0 = float(coords[0])
    phase0 = np.exp(1j * k_grid * z0)
    spec_v = np.zeros(n, dtype=complex)
    spec_d = np.zeros(n, dtype=complex)
    ca = amp_pos * nrm * phase0
    cb = amp_neg * nrm * np.conj(phase0)
    spec_v[m] += ca
    spec_v[-m] += cb
    spec_d[m] += ca * (-1j * absk * c)
    spec_d[-m] += cb * (+1j * absk * c)
    values = np.fft.ifft(spec_v) * n
    d_time = np.fft.ifft(spec_d) * n
    return values, d_time


def _fft_coords(center: float, extent: float, n: int) -> np.ndarray:
    dz = 2.0 * extent / n
    return center - extent + dz * np.arange(n)


# The low-frequency cutoff is exact (zero below it) and the response rises
# as an error-function edge placed between the cutoff and the carrier but
# pinned in shape to the carrier alone, so modes differing only in their
# cutoff share the same spectrum above both cutoffs.  A zero-width edge
# would give the mode 1/x ringing tails that outlive any feasible box and
# poison the wedge decompositions; the erf width is tied to the box so the
# mode's position tails are always at the exp(-(sigma*x_extent)^2/2) =
# exp(-32) level, while the response at the cutoff and its deficit at the
# carrier stay many sigmas out.
_EDGE_CENTER_FRACTION = 0.467
_EDGE_SIGMA_BOX = 7.35


def _cutoff_response(k_grid: np.ndarray, cutoff: float, carrier: float,
                     x_extent: float) -> np.ndarray:
    if carrier <= cutoff:
        raise ConfigurationError("spectral carrier must exceed the low-k cutoff")
    sigma = _EDGE_SIGMA_BOX / x_extent
    k0 = min(_EDGE_CENTER_FRACTION * carrier, carrier - 5.0 * sigma)
    k0 = max(k0, cutoff + 3.5 * sigma)
    if k0 >= carrier:
        raise ConfigurationError(
            "low-k cutoff too close to the carrier for a localized filtered mode"
        )
    t = (k_grid - k0) / (sigma * math.sqrt(2.0))
    resp = np.array([0.5 * (1.0 + math.erf(v)) for v in t])
    resp[k_grid < cutoff * (1.0 - 1e-12)] = 0.0
    return resp


def _build_filtered_gaussian(chart: Chart, grid: GridSpec, width: float,
                             carrier: float, cutoff: float, c: float,
                             center: float = 0.0) -> ModeFunction:
    """Shared builder: Gaussian envelope, hard low-k filter, renormalize."""
    if grid.k_max < carrier + 4.0 / width:
        raise ConfigurationError("grid too coarse: k_max below the mode's spectral peak")
    if grid.dx >= math.pi / grid.k_max:
        raise ConfigurationError("grid too coarse: Nyquist violated for the k grid")
    coords = _fft_coords(center, grid.x_extent, grid.x_points)
    z = coords - center
    n_char_w = carrier * width  # dimensionless N recovered from carrier
    envelope = np.exp(-(z**2) / width**2 + 1j * carrier * z) / math.sqrt(
        n_char_w * math.sqrt(2.0 * math.pi)
    )
    d_time = -1j * carrier * c * envelope
    k_grid = grid.k_grid()
    a, b = _decompose_samples(coords, envelope, d_time, k_grid, c)
    a = a * _cutoff_response(k_grid, cutoff, carrier, grid.x_extent)
    # retain only the positive-frequency family: the mode must define an
    # annihilation operator, and the raw Gaussian pair's negative-frequency
    # admixture (KG weight ~1e-10 already) is an artifact of the ansatz
    b = np.zeros_like(b)
    norm = np.sum(np.abs(a) ** 2)
    if norm <= 1e-12:
        raise DegenerateModeError("filtered mode has (near-)zero KG norm")
    a /= math.sqrt(norm)
    values, d_time = _reconstruct_on_grid(coords, k_grid, a, b, c)
    return ModeFunction(chart, coords, values, d_time, k_grid, a, b)


def build_state_mode(params: PhysicalParams, grid: GridSpec) -> ModeFunction:
    """Localized state mode on the Minkowski chart, centred at x = 0.

    Gaussian of width L with carrier n_char/L and d_t = -i (N c / L) * value,
    hard-filtered below k_min_state and renormalized to unit KG norm.
    Translation to the accelerated observer's position is a separate step.
    """
    grid.validate_for(params)
    chart = Chart(MINKOWSKI, 0.0, params.c)
    return _build_filtered_gaussian(
        chart, grid, params.L, params.n_char / params.L, params.k_min_state, params.c
    )


def build_gaussian_detector_mode(params: PhysicalParams, grid: GridSpec) -> ModeFunction:
    """Accelerated detector mode: the resting Gaussian written in conformal
    Rindler coordinates with the conformal width, filtered below
    k_min_detector in Rindler wavenumber and renormalized.

    For a = 0 this reduces to the state-mode construction (with the
    detector's cutoff) on the Minkowski chart.
    """
    grid.validate_for(params)
    if params.a == 0.0:
        # inertial limit: the detector couples to the state mode itself
        return build_state_mode(params, grid)
    lt = conformal_length(params)
    chart = Chart(RINDLER_I, params.a, params.c)
    return _build_filtered_gaussian(
        chart, grid, lt, params.n_char / lt, params.k_min_detector, params.c
    )


def translate_mode(mode: ModeFunction, shift: float) -> ModeFunction:
    """Rigidly shift a Minkowski mode by `shift` (box moves with the mode)."""
    if mode.chart.tag != MINKOWSKI:
        raise NumericalDomainError("translate_mode expects a Minkowski mode")
    amp_pos = amp_neg = None
    if mode.has_spectrum():
        tw = np.exp(-1j * mode.k_grid * shift)
        amp_pos = mode.amp_pos * tw
        amp_neg = mode.amp_neg * np.conj(tw)
    return replace(
        mode,
        coords=mode.coords + shift,
        amp_pos=amp_pos,
        amp_neg=amp_neg,
    )


def low_frequency_filter(mode: ModeFunction, cutoff: float) -> ModeFunction:
    """Hard brick-wall filter: zero all spectral content with k < cutoff.

    Idempotent on the spectral grid.  Does not renormalize.
    """
    if not mode.has_spectrum():
        raise NumericalDomainError("mode carries no spectral representation")
    keep = mode.k_grid >= cutoff * (1.0 - 1e-12)
    a = np.where(keep, mode.amp_pos, 0.0)
    b = np.where(keep, mode.amp_neg, 0.0)
    values, d_time = _reconstruct_on_grid(mode.coords, mode.k_grid, a, b, mode.chart.c)
    return replace(mode, values=values, d_time=d_time, amp_pos=a, amp_neg=b)


def plane_wave_basis(chart: Chart, grid: GridSpec) -> PlaneWaveBasis:
    return PlaneWaveBasis(chart, grid.k_grid(), 2.0 * grid.x_extent)


def sample_plane_wave(basis: PlaneWaveBasis, k: float, grid: GridSpec,
                      center: float = 0.0) -> ModeFunction:
    """Discretized box-normalized plane-wave mode w_k of the basis chart."""
    if k == 0.0:
        raise NumericalDomainError("k = 0: plane-wave normalization diverges")
    k_grid = basis.k_grid
    idx = np.argmin(np.abs(k_grid - k))
    if abs(k_grid[idx] - k) > 1e-9 * basis.dk:
        raise NumericalDomainError("k must lie on the basis k grid")
    coords = _fft_coords(center, grid.x_extent, grid.x_points)
    a = np.zeros(k_grid.size, dtype=complex)
    a[idx] = 1.0
    b = np.zeros_like(a)
    values, d_time = _reconstruct_on_grid(coords, k_grid, a, b, basis.chart.c)
    return ModeFunction(basis.chart, coords, values, d_time, k_grid, a, b)
