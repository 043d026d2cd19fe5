import math

import numpy as np
import pytest

from rindlerkit import (
    CovarianceMatrix4,
    NumericalDomainError,
    OverlapSet,
    PhysicalParams,
    UnruhNoise,
    bose_einstein_occupation,
    build_covariance,
    covariance_second_moments_oracle,
    default_grid,
    log_negativity,
    physicality_check,
    unruh_noise,
)
from rindlerkit.modes import RINDLER_I, Chart, plane_wave_basis, sample_plane_wave
from rindlerkit.pipeline import _detector_own_coefficients


def test_occupation_values():
    inertial = PhysicalParams(a=0.0, n_char=6)
    assert bose_einstein_occupation(3.0, inertial) == 0.0
    p = PhysicalParams.from_aL(1.0, n_char=6)
    k_ln2 = math.log(2.0) * p.a / (2 * math.pi * p.c**2)
    assert bose_einstein_occupation(k_ln2, p) == pytest.approx(1.0, rel=1e-12)
    k_c = p.a / (2 * math.pi * p.c**2)
    assert bose_einstein_occupation(k_c, p) == pytest.approx(0.5819767068693265, rel=1e-12)
    with pytest.raises(NumericalDomainError):
        bose_einstein_occupation(0.0, p)


def test_unruh_noise_single_plane_wave():
    # a detector equal to one box-normalized plane wave sees exactly the
    # thermal occupation of that wavenumber
    p = PhysicalParams.from_aL(2.0, n_char=6)
    grid = default_grid(p)
    basis = plane_wave_basis(Chart(RINDLER_I, p.a, p.c), grid)
    k0 = basis.k_grid[2]
    psi = sample_plane_wave(basis, k0, grid)
    noise = unruh_noise(_detector_own_coefficients(psi), p)
    assert noise.n_mean == pytest.approx(bose_einstein_occupation(k0, p), rel=1e-6)


def test_unruh_noise_inertial():
    p = PhysicalParams(a=0.0, n_char=6)
    assert unruh_noise(None, p).n_mean == 0.0


def test_covariance_no_squeezing():
    ov = OverlapSet(1.0, 0.8, 0.1)
    sigma = build_covariance(ov, UnruhNoise(0.3), 0.0).entries
    expect = np.diag([1.0, 1.0, 1.6, 1.6])
    assert np.allclose(sigma, expect, atol=1e-15)


def test_covariance_ideal_blocks():
    s = 0.7
    sigma = build_covariance(OverlapSet(1.0, 1.0, 0.0), UnruhNoise(0.0), s).entries
    ch, sh = math.cosh(2 * s), math.sinh(2 * s)
    assert np.allclose(np.diag(sigma), [ch, ch, ch, ch], atol=1e-14)
    assert sigma[0, 2] == pytest.approx(-sh, abs=1e-14)
    assert sigma[1, 3] == pytest.approx(+sh, abs=1e-14)
    assert sigma[0, 3] == 0.0 and sigma[1, 2] == 0.0


def test_covariance_imaginary_overlap_rotation():
    s = 0.4
    sigma = build_covariance(OverlapSet(1.0, 1j, 0.0), UnruhNoise(0.0), s).entries
    sh = math.sinh(2 * s)
    assert sigma[0, 2] == pytest.approx(0.0, abs=1e-14)
    assert sigma[0, 3] == pytest.approx(-sh, abs=1e-14)
    assert sigma[1, 2] == pytest.approx(-sh, abs=1e-14)
    assert sigma[1, 3] == pytest.approx(0.0, abs=1e-14)


def test_log_negativity_anchors():
    assert log_negativity(CovarianceMatrix4(np.eye(4))) == 0.0
    for s in (0.25, 0.5, 1.0, 2.0, 3.0, 4.0):
        sigma = build_covariance(OverlapSet(1.0, 1.0, 0.0), UnruhNoise(0.0), s)
        assert log_negativity(sigma) == pytest.approx(2 * s, abs=1e-12)
    assert log_negativity(CovarianceMatrix4(2.0 * np.eye(4))) == 0.0


def test_log_negativity_monotone_in_overlap():
    prev = -1.0
    for beta in np.linspace(0.0, 1.0, 100):
        sigma = build_covariance(OverlapSet(1.0, float(beta), 0.0), UnruhNoise(0.0), 1.0)
        e_n = log_negativity(sigma)
        assert e_n >= prev - 1e-12
        prev = e_n


def test_log_negativity_local_phase_invariance():
    rng = np.random.default_rng(5)
    for _ in range(20):
        beta = 0.6 + 0.2j
        bp = 0.05 - 0.02j
        theta = rng.uniform(0, 2 * math.pi)
        tw = np.exp(1j * theta)
        e1 = log_negativity(build_covariance(OverlapSet(1.0, beta, bp), UnruhNoise(0.1), 1.2))
        e2 = log_negativity(build_covariance(OverlapSet(1.0, beta * tw, bp * tw), UnruhNoise(0.1), 1.2))
        assert abs(e1 - e2) < 1e-12


def test_log_negativity_rejects_unphysical():
    # second moments inconsistent with any state: negative discriminant
    bad = np.array([
        [0.448, 0.903, -0.473, -0.207],
        [0.903, 0.497, -0.350, 0.504],
        [-0.473, -0.350, -0.046, -0.346],
        [-0.207, 0.504, -0.346, 1.126],
    ])
    with pytest.raises(NumericalDomainError):
        log_negativity(CovarianceMatrix4(bad))


def test_physicality():
    ok, mineig = physicality_check(CovarianceMatrix4(np.eye(4)))
    assert ok and mineig == pytest.approx(0.0, abs=1e-12)
    tmsv = build_covariance(OverlapSet(1.0, 1.0, 0.0), UnruhNoise(0.0), 1.5)
    ok, _ = physicality_check(tmsv)
    assert ok
    ok, mineig = physicality_check(CovarianceMatrix4(np.diag([0.5, 0.5, 1.0, 1.0])))
    assert not ok and mineig == pytest.approx(-0.5, abs=1e-12)


def test_covariance_matrix_validation():
    with pytest.raises(NumericalDomainError):
        CovarianceMatrix4(np.zeros((3, 3)))
    m = np.eye(4)
    m[0, 1] = 0.1  # asymmetric
    with pytest.raises(NumericalDomainError):
        CovarianceMatrix4(m)


def test_overlap_set_bound():
    with pytest.raises(NumericalDomainError):
        OverlapSet(1.0, 1.2, 0.0)
    OverlapSet(1.0, 1.2, 0.7)  # allowed: |beta|^2 - |beta'|^2 < 1


def test_second_moment_oracle():
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
        built = build_covariance(OverlapSet(alpha, beta, bp), UnruhNoise(n), s).entries
        oracle = covariance_second_moments_oracle(alpha, beta, bp, s, n)
        worst = max(worst, float(np.max(np.abs(built - oracle))))
    assert worst < 1e-12
