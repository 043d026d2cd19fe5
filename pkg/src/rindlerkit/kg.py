"""Klein-Gordon inner products within and across charts at the t = tau = 0 slice.

Convention: (f, g) = i * int dz (f* d_t g - g d_t f*), the unique
sign/scaling under which the delta-normalized plane waves of either chart
are exactly orthonormal.  Because the massless product is conformally
invariant, the same formula in the wedge coordinate equals the Minkowski
integral restricted to the wedge; cross-chart products therefore need only
the coordinate map and the slice chain rule d_tau = (a x / c^2) d_t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateModeError, NumericalDomainError
from .modes import MINKOWSKI, RINDLER_I, ModeFunction, rindler_to_position

__all__ = ["OverlapSet", "kg_inner", "kg_normalize", "compute_overlaps"]

# relative edge magnitude beyond which a wedge mode is treated as reaching
# the horizon (its box edge), switching the cross-chart product to the
# tail-exact spectral path
_EDGE_TOL = 1e-10


@dataclass(frozen=True)
class OverlapSet:
    """The three scalars entering the two-mode covariance matrix."""

    alpha: complex
    beta: complex
    beta_prime: complex

    def __post_init__(self):
        if abs(self.alpha) > 1.0 + 1e-9:
            raise NumericalDomainError("|alpha| > 1: not a normalized detector overlap")
        excess = abs(self.beta) ** 2 - abs(self.beta_prime) ** 2
        if excess > 1.0 + 1e-6:
            raise NumericalDomainError(
                f"|beta|^2 - |beta'|^2 = {excess:.6g} > 1 violates the overlap bound"
            )


def _grid_product(f: ModeFunction, g_vals, g_dts, dz: float) -> complex:
    integrand = np.conj(f.values) * g_dts - g_vals * np.conj(f.d_time)
    return 1j * dz * complex(np.sum(integrand))


def _same_chart(f: ModeFunction, g: ModeFunction) -> complex:
    if f.coords.size == g.coords.size and np.allclose(f.coords, g.coords, rtol=0, atol=1e-12 * f.dz):
        return _grid_product(f, g.values, g.d_time, f.dz)
    g_vals, g_dts = g.evaluate(f.coords)
    return _grid_product(f, g_vals, g_dts, f.dz)


def _reaches_horizon(r: ModeFunction) -> bool:
    peak = float(np.max(np.abs(r.values)))
    edge = max(abs(r.values[0]), abs(r.values[-1]))
    return peak > 0 and edge > _EDGE_TOL * peak


def _cross_product(r: ModeFunction, m: ModeFunction) -> complex:
    """(r, m) with r on the region-I conformal grid and m Minkowski."""
    a, c = r.chart.a, r.chart.c
    if not _reaches_horizon(r):
        # integrand is localized by r; skip nodes where it is dead
        alive = np.abs(r.values) > 1e-18 * float(np.max(np.abs(r.values)))
        x = rindler_to_position(r.coords[alive], a, c)
        m_vals, m_dts = m.evaluate(x)
        d_tau = (a * x / c**2) * m_dts
        integrand = np.conj(r.values[alive]) * d_tau - m_vals * np.conj(r.d_time[alive])
        return 1j * r.dz * complex(np.sum(integrand))
    # mode with support at the horizon: contract wedge amplitudes instead,
    # whose quadrature carries the analytic oscillatory tails
    from .spectral import wedge_family

    if not (r.has_spectrum() and m.has_spectrum()):
        raise NumericalDomainError(
            "cross-chart product at the horizon needs spectral representations"
        )
    pos = wedge_family(m, a, r.k_grid, "I", "pos")
    neg = wedge_family(m, a, r.k_grid, "I", "neg")
    return complex(np.sum(np.conj(r.amp_pos) * pos) + np.sum(np.conj(r.amp_neg) * neg))


def kg_inner(f: ModeFunction, g: ModeFunction) -> complex:
    """Klein-Gordon inner product (f, g); antilinear in f.

    Same-chart pairs integrate on f's grid (resampling g exactly through
    its spectral form if the grids differ).  A Minkowski/region-I pair is
    integrated on the conformal grid after mapping the Minkowski data and
    converting the time derivative by the slice chain rule.
    """
    tf, tg = f.chart.tag, g.chart.tag
    if tf == tg:
        if tf == MINKOWSKI or f.chart.a == g.chart.a:
            return _same_chart(f, g)
        raise NumericalDomainError("Rindler modes of different accelerations")
    if tf == RINDLER_I and tg == MINKOWSKI:
        return _cross_product(f, g)
    if tf == MINKOWSKI and tg == RINDLER_I:
        return complex(np.conj(_cross_product(g, f)))
    raise NumericalDomainError(f"unsupported chart pair ({tf}, {tg})")


def kg_normalize(f: ModeFunction) -> ModeFunction:
    """Scale f to unit KG norm; degenerate (near-zero norm) modes are errors."""
    norm = kg_inner(f, f)
    if abs(norm.imag) > 1e-9 * max(1.0, abs(norm.real)):
        raise NumericalDomainError("KG norm has a non-negligible imaginary part")
    if norm.real < 1e-12:
        raise DegenerateModeError(f"cannot normalize mode with KG norm {norm.real:.3e}")
    return f.scaled(1.0 / math.sqrt(norm.real))


def compute_overlaps(psi_B: ModeFunction, phi_B: ModeFunction, alpha: complex) -> OverlapSet:
    """Overlaps of the detector mode against the state mode and its conjugate.

    alpha, the inertial observer's own overlap, is passed through unchanged
    (her detector is taken to couple perfectly, so alpha = 1 in practice).
    """
    if phi_B.chart.tag != MINKOWSKI:
        raise NumericalDomainError("state mode must live on the Minkowski chart")
    if psi_B.chart.tag not in (MINKOWSKI, RINDLER_I):
        raise NumericalDomainError("detector mode must live on Minkowski or region I")
    beta = kg_inner(psi_B, phi_B)
    beta_prime = kg_inner(psi_B, phi_B.conjugate())
    return OverlapSet(alpha=complex(alpha), beta=beta, beta_prime=beta_prime)
