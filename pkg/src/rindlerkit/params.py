"""Physical and numerical configuration shared by every other module.

Natural units (c = 1) are the default, but c is kept in every formula so
tests can exercise c != 1.  The single acceleration knob exposed to sweeps
is the dimensionless group a*L/c^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConfigurationError

__all__ = [
    "PhysicalParams",
    "GridSpec",
    "conformal_length",
    "dimensionless_groups",
    "default_grid",
    "parse_config_text",
]


@dataclass(frozen=True)
class PhysicalParams:
    """All experiment knobs.

    Attributes
    ----------
    c : speed of light (length/time).
    a : proper acceleration (length/time^2), a >= 0.
    L : spatial width of the localized state mode (length), L > 0.
    n_char : characteristic frequency number N (natural number > 3).
    s : squeezing parameter, s >= 0.
    k_min_state : low-frequency cutoff for the state mode (1/length).
        Defaults to 1/(3L) when not given.
    k_min_detector : low Rindler-wavenumber cutoff for detector modes
        (1/length).  Defaults to 1/(2L) when not given.
    """

    a: float
    L: float = 1.0
    c: float = 1.0
    n_char: int = 100
    s: float = 1.0
    k_min_state: float | None = None
    k_min_detector: float | None = None

    def __post_init__(self):
        if self.c <= 0:
            raise ConfigurationError("c must be positive")
        if self.L <= 0:
            raise ConfigurationError("L must be positive")
        if self.a < 0:
            raise ConfigurationError("a must be non-negative")
        if int(self.n_char) != self.n_char or self.n_char <= 3:
            raise ConfigurationError("n_char must be a natural number > 3")
        if self.s < 0:
            raise ConfigurationError("s must be non-negative")
        if self.k_min_state is None:
            object.__setattr__(self, "k_min_state", 1.0 / (3.0 * self.L))
        if self.k_min_detector is None:
            object.__setattr__(self, "k_min_detector", 1.0 / (2.0 * self.L))
        if self.k_min_state <= 0 or self.k_min_detector <= 0:
            raise ConfigurationError("spectral cutoffs must be positive")

    @classmethod
    def from_aL(cls, aL_over_c2: float, **kwargs) -> "PhysicalParams":
        """Build params from the dimensionless acceleration a*L/c^2 (L, c from kwargs or defaults)."""
        L = kwargs.pop("L", 1.0)
        c = kwargs.pop("c", 1.0)
        if aL_over_c2 < 0:
            raise ConfigurationError("aL/c^2 must be non-negative")
        return cls(a=aL_over_c2 * c**2 / L, L=L, c=c, **kwargs)

    @property
    def aL_over_c2(self) -> float:
        return self.a * self.L / self.c**2

    def with_squeezing(self, s: float) -> "PhysicalParams":
        return replace(self, s=s)


def conformal_length(params: PhysicalParams) -> float:
    """Width of the detector mode in conformal Rindler coordinates.

    Ltilde = (2 c^2 / a) * asinh(a L / (2 c^2)); the a -> 0 limit is L and is
    taken analytically (never by dividing by a).
    """
    if params.a == 0.0:
        return params.L
    x = params.a * params.L / (2.0 * params.c**2)
    return params.L * math.asinh(x) / x


def dimensionless_groups(params: PhysicalParams) -> dict:
    """Derived dimensionless/critical quantities: aL/c^2, aLtilde/c^2, NaL/(4c^2), k_c."""
    aL = params.aL_over_c2
    lt = conformal_length(params)
    return {
        "aL_over_c2": aL,
        "aLtilde_over_c2": params.a * lt / params.c**2,
        "NaL_over_4c2": params.n_char * aL / 4.0,
        "k_c": params.a / (2.0 * math.pi * params.c**2),
    }


@dataclass(frozen=True)
class GridSpec:
    """Discretization of the periodized slice and of the wavenumber families.

    The spatial box has length 2*x_extent (FFT-style grid of x_points
    samples, grid step dx = 2*x_extent/x_points), which fixes the shared
    wavenumber spacing dk = pi/x_extent for every plane-wave family.  The
    positive-k grid is j*dk for j = 1..k_points, so k_max = k_points*dk.
    """

    x_extent: float
    x_points: int
    k_points: int

    def __post_init__(self):
        if self.x_extent <= 0:
            raise ConfigurationError("x_extent must be positive")
        if self.x_points < 16 or self.x_points % 2:
            raise ConfigurationError("x_points must be an even integer >= 16")
        if self.k_points < 1:
            raise ConfigurationError("k_points must be >= 1")
        # Nyquist: grid spacing must resolve the highest basis wavenumber.
        if self.k_points >= self.x_points // 2:
            raise ConfigurationError(
                "k_points too large for x_points (Nyquist: dx < pi/k_max)"
            )

    @property
    def dx(self) -> float:
        return 2.0 * self.x_extent / self.x_points

    @property
    def dk(self) -> float:
        return math.pi / self.x_extent

    @property
    def k_max(self) -> float:
        return self.k_points * self.dk

    def k_grid(self):
        import numpy as np

        return self.dk * np.arange(1, self.k_points + 1)

    def validate_for(self, params: PhysicalParams) -> None:
        """Check the grid against the mode it must resolve."""
        if self.x_extent < 8.0 * params.L:
            raise ConfigurationError("x_extent must cover >= 8 mode widths per side")
        if self.k_max < 4.0 * params.n_char / params.L:
            raise ConfigurationError(
                "k_max < 4*n_char/L: k grid cannot resolve the spectral peak"
            )

    def doubled(self) -> "GridSpec":
        """Grid with both densities doubled (same extent, same k_max*2)."""
        return GridSpec(self.x_extent, 2 * self.x_points, 2 * self.k_points)


def default_grid(params: PhysicalParams, x_extent_factor: float = 16.0,
                 x_points: int = 4096) -> GridSpec:
    """Default grid for the given parameters.

    x_extent = 16 L; the k grid aims at 8*n_char/L but is capped by the
    Nyquist bound of the sample grid (at n_char = 100 and 4096 samples the
    cap lands just past the required 4*n_char/L).
    """
    x_extent = x_extent_factor * params.L
    dk = math.pi / x_extent
    k_points = int(math.ceil(8.0 * params.n_char / params.L / dk)) + 1
    k_points = min(k_points, x_points // 2 - 1)
    grid = GridSpec(x_extent=x_extent, x_points=x_points, k_points=k_points)
    grid.validate_for(params)
    return grid


# Keys accepted in key=value config files (and mirrored as CLI flags).
_PARAM_KEYS = {
    "a_over_c2_times_L": float,
    "L": float,
    "c": float,
    "s": str,          # scalar or comma list (sweeps)
    "n_char": int,
    "k_min_state": float,
    "k_min_detector": float,
    "x_extent_factor": float,
    "x_points": int,
    "detector_model": str,   # scalar or comma list
    "sweep_aL_min": float,
    "sweep_aL_max": float,
    "sweep_aL_points": int,
    "sweep_aL_spacing": str,  # "log" or "linear"
    "modes_aL": str,          # comma list, used by the `modes` subcommand
    "output": str,
}


def parse_config_text(text: str) -> dict:
    """Parse a plain-text key=value config. Unknown keys are an error."""
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _PARAM_KEYS:
            raise ConfigurationError(f"config line {lineno}: unknown key {key!r}")
        conv = _PARAM_KEYS[key]
        try:
            out[key] = conv(value)
        except ValueError as exc:
            raise ConfigurationError(f"config line {lineno}: bad value for {key}: {value!r}") from exc
    return out
