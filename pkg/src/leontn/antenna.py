"""Circular-aperture antenna patterns and beamwidth solving.

The normalized power pattern of a uniformly illuminated circular
aperture of radius ``a`` at wavelength ``lam`` is

    g(theta) = | 2 J1(x) / x |^2,   x = (2 pi a / lam) sin(theta)

with g(0) = 1 by the small-argument limit.  Satellite beams use this
pattern in normalized form (absolute power enters through the EIRP
density); VSAT dishes attach configured peak gains to the same roll-off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import j1

SPEED_OF_LIGHT = 299_792_458.0  # m/s

# First positive zero of J1; pattern nulls sit at x equal to this value.
FIRST_J1_ZERO = 3.8317059702075125

# Argument at which |2 J1(x)/x|^2 = 1/2; fixes beamwidth-to-aperture
# conversions.  Root of the half-power equation to full float precision.
HALF_POWER_ARG = 1.6163399483107037

# VSAT peak gains are operator configuration, not derived from the dish
# size (a 30 cm radius dish has a lower ideal area gain; the configured
# values include feed and illumination factors we do not model).
VSAT_TX_GAIN_DBI = 43.2
VSAT_RX_GAIN_DBI = 39.7
VSAT_APERTURE_RADIUS_M = 0.30


@dataclass(frozen=True)
class AperturePattern:
    """Circular-aperture pattern parameters.

    Parameters
    ----------
    aperture_radius_m : float
        Aperture radius a, m.
    carrier_freq_hz : float
        Carrier frequency; the wavelength is c/f.
    peak_gain_dbi : float or None
        Optional boresight gain.  ``None`` means the pattern is used in
        normalized form (0 dBi at boresight).
    """

    aperture_radius_m: float
    carrier_freq_hz: float
    peak_gain_dbi: float | None = None

    def __post_init__(self):
        if self.aperture_radius_m <= 0:
            raise ValueError("aperture radius must be positive")
        if self.carrier_freq_hz <= 0:
            raise ValueError("carrier frequency must be positive")

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq_hz

    @property
    def wavenumber_radius(self) -> float:
        """The factor 2 pi a / lam multiplying sin(theta)."""
        return 2.0 * math.pi * self.aperture_radius_m / self.wavelength_m


@dataclass(frozen=True)
class IsotropicPattern:
    """Direction-independent element, e.g. a handheld antenna."""

    gain_dbi: float = 0.0


def pattern_gain(p: AperturePattern, theta_rad):
    """Normalized power gain of the aperture at an off-boresight angle.

    Accepts a scalar or array of angles in [0, pi/2] and returns values
    in [0, 1], with the boresight limit handled exactly.
    """
    theta = np.asarray(theta_rad, dtype=float)
    if np.any((theta < 0) | (theta > math.pi / 2)):
        raise ValueError("off-boresight angle out of [0, pi/2]")
    x = p.wavenumber_radius * np.sin(theta)
    small = x < 1e-8
    xs = np.where(small, 1.0, x)
    g = np.where(small, 1.0, (2.0 * j1(xs) / xs) ** 2)
    if np.ndim(theta_rad) == 0:
        return float(g)
    return g


def first_null_angle(p: AperturePattern) -> float:
    """Off-boresight angle of the first pattern null, radians."""
    s = FIRST_J1_ZERO / p.wavenumber_radius
    if s > 1.0:
        raise ValueError("aperture too small for a null inside the horizon")
    return math.asin(s)


def solve_hpbw(p: AperturePattern) -> float:
    """Half-power beamwidth: full angular width between the -3 dB points.

    The root is isolated inside the main lobe, where the pattern is
    strictly monotone, so bisection is unambiguous.

    Raises
    ------
    ValueError
        If the main lobe holds no half-power point (aperture below
        roughly a wavelength).
    """
    try:
        null = first_null_angle(p)
    except ValueError as exc:
        raise ValueError("no half-power point in the main lobe") from exc
    f = lambda t: pattern_gain(p, t) - 0.5
    if f(null * (1 - 1e-12)) > 0:
        raise ValueError("no half-power point in the main lobe")
    half = brentq(f, 0.0, null, xtol=1e-15, rtol=8.9e-16)
    return 2.0 * half


def aperture_for_hpbw(
    hpbw_rad: float, carrier_freq_hz: float, peak_gain_dbi: float | None = None
) -> AperturePattern:
    """Aperture whose half-power beamwidth equals the requested value.

    Beamwidth specifications fix the product of aperture size and
    frequency; this inverts :func:`solve_hpbw` by bisection on the
    radius.
    """
    if not 0 < hpbw_rad < math.pi:
        raise ValueError("beamwidth out of range")
    lam = SPEED_OF_LIGHT / carrier_freq_hz
    radius = HALF_POWER_ARG * lam / (2.0 * math.pi * math.sin(hpbw_rad / 2.0))
    return AperturePattern(radius, carrier_freq_hz, peak_gain_dbi)


def vsat_gains(p: AperturePattern) -> tuple[float, float]:
    """Configured (transmit, receive) peak gains of the VSAT dish, dBi.

    The values are stored configuration for the 30 cm dish; the pattern
    argument only validates that the caller really holds the VSAT
    aperture.
    """
    if not math.isclose(p.aperture_radius_m, VSAT_APERTURE_RADIUS_M, rel_tol=1e-6):
        raise ValueError("gains are configured for the 30 cm VSAT dish only")
    return VSAT_TX_GAIN_DBI, VSAT_RX_GAIN_DBI
