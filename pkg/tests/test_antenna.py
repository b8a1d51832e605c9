"""Tests for the circular-aperture pattern and beamwidth solving."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import j1

from leontn.antenna import (
    FIRST_J1_ZERO,
    HALF_POWER_ARG,
    VSAT_APERTURE_RADIUS_M,
    AperturePattern,
    IsotropicPattern,
    aperture_for_hpbw,
    first_null_angle,
    pattern_gain,
    solve_hpbw,
    vsat_gains,
)


def _s_band_aperture() -> AperturePattern:
    return aperture_for_hpbw(math.radians(4.41), 2.0e9)


def test_pattern_gain_frozen():
    pat = _s_band_aperture()
    assert_allclose(pat.aperture_radius_m, 1.002223985301155, rtol=1e-12)
    assert_allclose(pat.wavenumber_radius, 42.010123009480026, rtol=1e-12)
    theta = np.radians([0.0, 0.5, 1.0, 2.205, 3.0, 5.0, 8.0])
    assert_allclose(
        pattern_gain(pat, theta),
        [
            1.0,
            0.9668673055307523,
            0.8729063175459236,
            0.4999999999999998,
            0.2559443114208058,
            0.00145531415256322,
            0.01081018652580673,
        ],
        rtol=1e-10,
    )


def test_boresight_gain_is_exactly_one():
    pat = _s_band_aperture()
    assert pattern_gain(pat, 0.0) == 1.0
    # scalar in, scalar out; array in, array out
    assert isinstance(pattern_gain(pat, 0.01), float)
    assert pattern_gain(pat, np.array([0.01, 0.02])).shape == (2,)


def test_angle_range_validation():
    pat = _s_band_aperture()
    with pytest.raises(ValueError):
        pattern_gain(pat, -0.01)
    with pytest.raises(ValueError):
        pattern_gain(pat, np.array([0.1, math.pi / 2 + 0.01]))


def test_half_power_argument():
    x = HALF_POWER_ARG
    assert_allclose((2.0 * j1(x) / x) ** 2, 0.5, atol=1e-12)


def test_first_null():
    assert abs(j1(FIRST_J1_ZERO)) < 1e-15
    pat = _s_band_aperture()
    null = first_null_angle(pat)
    assert_allclose(math.degrees(null), 5.2331701655739105, rtol=1e-12)
    assert pattern_gain(pat, null) < 1e-25


def test_hpbw_roundtrip():
    for hpbw_deg, freq in [(4.41, 2.0e9), (1.76, 20.0e9), (0.3, 30.0e9), (12.0, 1.5e9)]:
        pat = aperture_for_hpbw(math.radians(hpbw_deg), freq)
        assert_allclose(solve_hpbw(pat), math.radians(hpbw_deg), rtol=1e-12)
    assert_allclose(
        aperture_for_hpbw(math.radians(1.76), 20.0e9).aperture_radius_m,
        0.2510733288960849,
        rtol=1e-12,
    )


def test_main_lobe_monotone():
    pat = _s_band_aperture()
    theta = np.linspace(0.0, first_null_angle(pat), 400)
    gain = pattern_gain(pat, theta)
    assert np.all(np.diff(gain) < 0.0)


def test_small_aperture_has_no_null():
    tiny = AperturePattern(0.01, 2.0e9)
    with pytest.raises(ValueError):
        first_null_angle(tiny)
    with pytest.raises(ValueError):
        solve_hpbw(tiny)


def test_aperture_validation():
    with pytest.raises(ValueError):
        AperturePattern(0.0, 2.0e9)
    with pytest.raises(ValueError):
        AperturePattern(0.3, 0.0)
    with pytest.raises(ValueError):
        aperture_for_hpbw(0.0, 2.0e9)
    with pytest.raises(ValueError):
        aperture_for_hpbw(math.pi, 2.0e9)


def test_wavelength():
    pat = AperturePattern(0.3, 2.0e9)
    assert_allclose(pat.wavelength_m, 0.149896229, rtol=1e-12)


def test_vsat_gains():
    assert vsat_gains(AperturePattern(VSAT_APERTURE_RADIUS_M, 20.0e9)) == (43.2, 39.7)
    with pytest.raises(ValueError):
        vsat_gains(AperturePattern(0.5, 20.0e9))


def test_isotropic_default():
    assert IsotropicPattern().gain_dbi == 0.0
