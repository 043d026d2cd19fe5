"""Entanglement degradation for a uniformly accelerated observer.

Localized two-mode squeezed light, conformal detector modes, horizon
decompositions, Unruh noise and Gaussian-state logarithmic negativity.
"""

from .errors import (
    ConfigurationError,
    DegenerateModeError,
    NumericalDomainError,
    RindlerkitError,
)
from .gaussian_state import (
    CovarianceMatrix4,
    UnruhNoise,
    bose_einstein_occupation,
    build_covariance,
    covariance_second_moments_oracle,
    log_negativity,
    physicality_check,
    unruh_noise,
)
from .kg import OverlapSet, compute_overlaps, kg_inner, kg_normalize
from .modes import (
    Chart,
    ModeFunction,
    PlaneWaveBasis,
    build_gaussian_detector_mode,
    build_state_mode,
    low_frequency_filter,
    plane_wave_basis,
    sample_plane_wave,
    translate_mode,
)
from .params import (
    GridSpec,
    PhysicalParams,
    conformal_length,
    default_grid,
    dimensionless_groups,
    parse_config_text,
)
from .pipeline import SweepConfig, SweepRow, evaluate_point, run_sweep
from .spectral import (
    SpectralCoefficients,
    beta_estimate,
    build_optimized_mode,
    decompose,
    decompose_all,
    horizon_identity_residual,
    region_two_from_identity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
