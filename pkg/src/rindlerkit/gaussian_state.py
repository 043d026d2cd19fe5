"""Two-mode Gaussian state of the inertial/accelerated observer pair.

Covariance conventions: quadratures x = (d + d^dag)/sqrt(2),
p = (d - d^dag)/(i sqrt(2)), entries sigma_ij = <X_i X_j + X_j X_i> over
(x_A, p_A, x_B, p_B), so the vacuum is the identity matrix.  Logarithmic
negativity uses the natural logarithm (the perfectly measured two-mode
squeezed state then carries E_N = 2 s exactly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalDomainError
from .kg import OverlapSet
from .params import PhysicalParams
from .spectral import SpectralCoefficients

__all__ = [
    "CovarianceMatrix4",
    "UnruhNoise",
    "bose_einstein_occupation",
    "unruh_noise",
    "build_covariance",
    "covariance_second_moments_oracle",
    "log_negativity",
    "physicality_check",
    "symplectic_form",
]


@dataclass(frozen=True)
class CovarianceMatrix4:
    """Real symmetric 4x4 second-moment matrix (vacuum normalized to 1).

    Stored in extended precision: at large squeezing the entanglement
    information sits under cosh^2-scale cancellations, and double entries
    alone would already round it away.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries).astype(np.longdouble)
        if m.shape != (4, 4):
            raise NumericalDomainError("covariance matrix must be 4x4")
        if not np.array_equal(m, m.T):
            raise NumericalDomainError("covariance matrix must be exactly symmetric")
        object.__setattr__(self, "entries", m)

    def as_float(self) -> np.ndarray:
        return self.entries.astype(float)


@dataclass(frozen=True)
class UnruhNoise:
    """Mean number of vacuum (thermal) particles the detector registers."""

    n_mean: float

    def __post_init__(self):
        if self.n_mean < 0:
            raise NumericalDomainError("mean particle number must be >= 0")


def symplectic_form() -> np.ndarray:
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    omega = np.zeros((4, 4))
    omega[:2, :2] = j
    omega[2:, 2:] = j
    return omega


def bose_einstein_occupation(k: float, params: PhysicalParams) -> float:
    """Thermal occupation 1/(exp(2 pi |k| c^2 / a) - 1); 0 in the inertial limit."""
    if params.a == 0.0:
        return 0.0
    if k == 0.0:
        raise NumericalDomainError("k = 0 occupation diverges")
    arg = 2.0 * math.pi * abs(k) * params.c**2 / params.a
    if arg > 700.0:
        return 0.0
    return 1.0 / math.expm1(arg)


def unruh_noise(psi_B_coeffs: SpectralCoefficients | None, params: PhysicalParams) -> UnruhNoise:
    """Mean detected vacuum particle number: occupation-weighted sum of the
    detector's positive region-I amplitudes (box normalization absorbs dk)."""
    if params.a == 0.0:
        return UnruhNoise(0.0)
    if psi_B_coeffs is None or psi_B_coeffs.rindI_pos is None:
        raise NumericalDomainError("need the detector's rindI_pos family")
    k = psi_B_coeffs.k_grid
    arg = 2.0 * math.pi * np.abs(k) * params.c**2 / params.a
    with np.errstate(over="ignore"):
        occ = np.where(arg > 700.0, 0.0, 1.0 / np.expm1(np.minimum(arg, 700.0)))
    weights = np.abs(psi_B_coeffs.rindI_pos) ** 2
    return UnruhNoise(float(math.fsum(weights * occ)))


def build_covariance(overlaps: OverlapSet, noise: UnruhNoise, s: float) -> CovarianceMatrix4:
    """Assemble the 4x4 covariance matrix from the overlaps, the detected
    vacuum noise and the squeezing: identity + noise block on the
    accelerated diagonal + local 2 sinh^2 s block + sinh 2s correlations."""
    if s < 0:
        raise NumericalDomainError("squeezing must be >= 0")
    al, bt, bp = overlaps.alpha, overlaps.beta, overlaps.beta_prime
    n = noise.n_mean
    s = np.longdouble(s)
    sigma = np.eye(4, dtype=np.longdouble)
    sigma[2, 2] += 2.0 * n
    sigma[3, 3] += 2.0 * n

    t_local = 2.0 * np.sinh(s) ** 2
    b_plus = bt + np.conj(bp)
    b_minus = bt - np.conj(bp)
    sigma[0, 0] += t_local * abs(al) ** 2
    sigma[1, 1] += t_local * abs(al) ** 2
    sigma[2, 2] += t_local * abs(b_plus) ** 2
    sigma[3, 3] += t_local * abs(b_minus) ** 2
    cross = t_local * 2.0 * (bt * bp).imag
    sigma[2, 3] += cross
    sigma[3, 2] += cross

    t_corr = np.sinh(2.0 * s)
    m02 = -t_corr * (al * b_plus).real
    m03 = -t_corr * (al * b_minus).imag
    m12 = -t_corr * (al * b_plus).imag
    m13 = +t_corr * (al * b_minus).real
    sigma[0, 2] = sigma[2, 0] = m02
    sigma[0, 3] = sigma[3, 0] = m03
    sigma[1, 2] = sigma[2, 1] = m12
    sigma[1, 3] = sigma[3, 1] = m13
    return CovarianceMatrix4(sigma)


def covariance_second_moments_oracle(alpha: complex, beta: complex, beta_prime: complex,
                                     s: float, n_mean: float) -> np.ndarray:
    """Independent covariance route: expand the squeezed detector operators
    term by term in the elementary mode operators and contract against the
    vacuum second-moment table.

    The transformed annihilation operators are linear in the eight symbols
    (a, a+, b, b+, dA, dA+, dB, dB+); every sigma entry is then a bilinear
    contraction with the vacuum moments <s_p s_q>, so no block formula from
    build_covariance is reused anywhere.
    """
    ch, sh = math.cosh(s), math.sinh(s)
    al, bt, bp = complex(alpha), complex(beta), complex(beta_prime)

    # columns: a, a+, b, b+, dA, dA+, dB, dB+
    DA = np.zeros(8, dtype=complex)
    DA[0] = al * (ch - 1.0)
    DA[3] = -al * sh
    DA[4] = 1.0
    DAd = np.zeros(8, dtype=complex)
    DAd[1] = np.conj(al) * (ch - 1.0)
    DAd[2] = -np.conj(al) * sh
    DAd[5] = 1.0
    DB = np.zeros(8, dtype=complex)
    DB[0] = -bp * sh
    DB[1] = -bt * sh
    DB[2] = bt * (ch - 1.0)
    DB[3] = bp * (ch - 1.0)
    DB[6] = 1.0
    DBd = np.zeros(8, dtype=complex)
    DBd[0] = -np.conj(bt) * sh
    DBd[1] = -np.conj(bp) * sh
    DBd[2] = np.conj(bp) * (ch - 1.0)
    DBd[3] = np.conj(bt) * (ch - 1.0)
    DBd[7] = 1.0

    # vacuum second moments M[p, q] = <s_p s_q>
    M = np.zeros((8, 8), dtype=complex)
    M[0, 1] = 1.0                      # a a+
    M[2, 3] = 1.0                      # b b+
    M[4, 5] = 1.0                      # dA dA+
    M[4, 1] = al                       # dA a+
    M[0, 5] = np.conj(al)              # a dA+
    M[6, 3] = bt                       # dB b+
    M[2, 7] = np.conj(bt)              # b dB+
    M[2, 6] = bp                       # b dB
    M[7, 3] = np.conj(bp)              # dB+ b+
    M[7, 6] = n_mean                   # dB+ dB
    M[6, 7] = 1.0 + n_mean             # dB dB+

    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    X = np.array(
        [
            (DA + DAd) * inv_sqrt2,
            (DA - DAd) * (-1j * inv_sqrt2),
            (DB + DBd) * inv_sqrt2,
            (DB - DBd) * (-1j * inv_sqrt2),
        ]
    )
    sym = X @ M @ X.T
    sigma = sym + sym.T
    if np.max(np.abs(sigma.imag)) > 1e-10:
        raise NumericalDomainError("oracle produced a non-real covariance matrix")
    return sigma.real


def _det4_extended(m: np.ndarray) -> float:
    """Determinant by pivoted elimination in extended precision.

    At large squeezing the determinant is an O(1) number hiding under
    cosh^2-scale cancellations; 80-bit arithmetic keeps the absolute error
    below ~1e-13 out to squeezing 4 where double LU loses five digits.
    """
    a = np.asarray(m, dtype=np.longdouble).copy()
    det = np.longdouble(1.0)
    for col in range(4):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            det = -det
        if a[col, col] == 0.0:
            return 0.0
        det *= a[col, col]
        for row in range(col + 1, 4):
            a[row, col:] -= (a[row, col] / a[col, col]) * a[col, col:]
    return float(det)


def log_negativity(sigma: CovarianceMatrix4) -> float:
    """Entanglement monotone from the partially transposed second moments.

    Max[0, -ln sqrt((Delta - sqrt(Delta^2 - 4 det sigma))/2)] with the
    partial-transpose seralian Delta; small negative discriminants within
    1e-9 are quadrature noise and clamp to zero, anything worse is an error.
    """
    m = sigma.entries
    delta = (
        m[0, 0] * m[1, 1]
        - m[0, 1] ** 2
        + m[2, 2] * m[3, 3]
        - m[2, 3] ** 2
        - 2.0 * m[0, 2] * m[1, 3]
        + 2.0 * m[0, 3] * m[1, 2]
    )
    det = _det4_extended(sigma.entries)
    disc = float(delta * delta - 4.0 * np.longdouble(det))
    if disc < -1e-9:
        raise NumericalDomainError(f"discriminant {disc:.3e} < -1e-9: state not physical")
    disc = max(disc, 0.0)
    # stable form of (delta - sqrt(disc))/2: avoids the cancellation that
    # loses ~delta^2 * eps of absolute accuracy at large squeezing
    nu_sq = 2.0 * det / float(delta + np.sqrt(np.longdouble(disc)))
    if nu_sq < -1e-9:
        raise NumericalDomainError(f"partial-transpose eigenvalue^2 = {nu_sq:.3e} < 0")
    if nu_sq <= 0.0:
        raise NumericalDomainError("degenerate partial-transpose eigenvalue")
    return max(0.0, -0.5 * math.log(nu_sq))


def physicality_check(sigma: CovarianceMatrix4) -> tuple[bool, float]:
    """Uncertainty-relation test: smallest eigenvalue of sigma + i*Omega.

    Passes when it is >= -1e-9 (Hermitian matrix, so eigenvalues are real).
    """
    h = sigma.as_float().astype(complex) + 1j * symplectic_form()
    eigs = np.linalg.eigvalsh(h)
    min_eig = float(eigs[0])
    return (min_eig >= -1e-9, min_eig)
