import math

import pytest

from rindlerkit import ConfigurationError, GridSpec, PhysicalParams, conformal_length, default_grid, dimensionless_groups
from rindlerkit.params import parse_config_text

ASINH_1 = 0.881373587019543  # high-precision asinh(1)


def test_conformal_length_inertial_limit():
    p = PhysicalParams(a=0.0, L=1.0, n_char=6)
    assert conformal_length(p) == 1.0


def test_conformal_length_closed_form():
    p = PhysicalParams.from_aL(2.0, L=1.0, n_char=6)
    assert conformal_length(p) == pytest.approx(ASINH_1, abs=1e-15)


def test_conformal_length_small_acceleration():
    p = PhysicalParams.from_aL(0.01, L=1.0, n_char=6)
    assert conformal_length(p) == pytest.approx(1.0, rel=1e-4)


def test_conformal_length_identity_and_monotonicity():
    prev = None
    for aL in (0.01, 0.1, 0.5, 1.0, 2.0, 5.0):
        p = PhysicalParams.from_aL(aL, n_char=6)
        lt = conformal_length(p)
        # aLtilde/c^2 = 2 asinh(aL/(2c^2)) exactly
        assert p.a * lt / p.c**2 == pytest.approx(2.0 * math.asinh(aL / 2.0), abs=1e-12)
        if prev is not None:
            assert lt < prev
        prev = lt


def test_rescaling_invariance():
    # a -> lam a, L -> L/lam leaves every dimensionless group unchanged
    g1 = dimensionless_groups(PhysicalParams(a=0.5, L=1.0, n_char=8))
    g2 = dimensionless_groups(PhysicalParams(a=2.0, L=0.25, n_char=8))
    assert g1["aL_over_c2"] == pytest.approx(g2["aL_over_c2"], rel=1e-14)
    assert g1["aLtilde_over_c2"] == pytest.approx(g2["aLtilde_over_c2"], rel=1e-14)
    assert g1["NaL_over_4c2"] == pytest.approx(g2["NaL_over_4c2"], rel=1e-14)


def test_dimensionless_groups():
    g0 = dimensionless_groups(PhysicalParams(a=0.0, n_char=100))
    assert g0["aL_over_c2"] == 0.0 and g0["k_c"] == 0.0
    g = dimensionless_groups(PhysicalParams.from_aL(0.04, n_char=100))
    assert g["NaL_over_4c2"] == pytest.approx(1.0, abs=1e-14)
    g = dimensionless_groups(PhysicalParams.from_aL(0.5, n_char=100))
    assert g["k_c"] == pytest.approx(0.07957747154594767, abs=1e-15)


def test_c_not_one():
    p = PhysicalParams(a=2.0, L=3.0, c=2.0, n_char=6)
    assert p.aL_over_c2 == pytest.approx(1.5)
    assert conformal_length(p) == pytest.approx((2 * 4 / 2.0) * math.asinh(2 * 3 / 8))


def test_default_cutoffs():
    p = PhysicalParams(a=0.0, L=2.0, n_char=6)
    assert p.k_min_state == pytest.approx(1.0 / 6.0)
    assert p.k_min_detector == pytest.approx(0.25)


@pytest.mark.parametrize("kwargs", [
    dict(a=-1.0), dict(a=0.0, L=-1.0), dict(a=0.0, n_char=3),
    dict(a=0.0, n_char=2), dict(a=0.0, s=-0.1), dict(a=0.0, c=0.0),
])
def test_invalid_params(kwargs):
    with pytest.raises(ConfigurationError):
        PhysicalParams(**{"a": 0.0, **kwargs})


def test_grid_invariants():
    p = PhysicalParams(a=0.0, n_char=100)
    grid = default_grid(p)
    assert grid.x_extent >= 8 * p.L
    assert grid.k_max >= 4 * p.n_char / p.L
    assert grid.dx < math.pi / grid.k_max  # Nyquist
    with pytest.raises(ConfigurationError):
        GridSpec(x_extent=16.0, x_points=4096, k_points=2048)  # Nyquist violation
    with pytest.raises(ConfigurationError):
        GridSpec(x_extent=16.0, x_points=4095, k_points=100)  # odd sample count


def test_grid_doubling():
    p = PhysicalParams(a=0.0, n_char=6)
    g = default_grid(p)
    d = g.doubled()
    assert d.x_points == 2 * g.x_points and d.k_points == 2 * g.k_points
    assert d.dk == g.dk


def test_parse_config():
    opts = parse_config_text("""
# comment
a_over_c2_times_L=0.1
s=1.0
n_char=100
k_min_detector=0.5
""")
    assert opts["a_over_c2_times_L"] == 0.1
    assert opts["n_char"] == 100
    with pytest.raises(ConfigurationError):
        parse_config_text("no_such_key=1\n")
    with pytest.raises(ConfigurationError):
        parse_config_text("n_char=abc\n")
    with pytest.raises(ConfigurationError):
        parse_config_text("just a line\n")
