"""Analytical constellation capacity versus latitude.

The chain runs: footprint angle -> mean number of visible satellites ->
cell geometry -> cells per satellite -> capacity density.

The mean visible count averages, over satellite latitude x, the
fraction of each latitude circle lying inside the observer's service
disc, weighted by the inclined-orbit latitude density

    f(x) = 1 / (pi sin(alpha) sqrt(1 - (sin x / sin alpha)^2)) * cos x

for a shell of inclination ``alpha``.  The density blows up integrably
as sin x approaches sin alpha; the substitution sin x = sin(alpha)
sin(t) removes the singularity (and cancels it against the exact-arc
integrand entirely) before quadrature.  A compact form that replaces
the spherical arc with a flat chord is kept as a small-footprint
approximation; a brute-force orbit-counting oracle validates both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .geometry import (
    GroundPoint,
    SatGeometry,
    elevation_and_slant,
    footprint_angle,
    footprint_area_km2,
    point_at_separation,
    satellite_position_km,
)

# Per-satellite and density figures are reported only where at least
# this many satellites serve a latitude: the even-split capacity model
# divides a footprint's cells among the satellites seeing them, and the
# division degenerates as the visible count approaches zero at the
# coverage edge.
MIN_VISIBLE_FOR_REPORTING = 3.0


@dataclass(frozen=True)
class ConstellationShell:
    """One circular-orbit shell of a Walker-style constellation."""

    planes: int
    sats_per_plane: int
    altitude_km: float
    inclination_rad: float
    min_elevation_rad: float

    def __post_init__(self):
        if self.planes < 1 or self.sats_per_plane < 1:
            raise ValueError("plane and satellite counts must be positive")
        if not 0 < self.inclination_rad <= math.pi / 2:
            raise ValueError("inclination must lie in (0, pi/2]")

    @property
    def n_satellites(self) -> int:
        return self.planes * self.sats_per_plane

    @property
    def sat_geometry(self) -> SatGeometry:
        return SatGeometry(self.altitude_km, self.min_elevation_rad)


KUIPER_SHELL = ConstellationShell(
    planes=80,
    sats_per_plane=40,
    altitude_km=600.0,
    inclination_rad=math.radians(50.0),
    min_elevation_rad=math.radians(35.0),
)


@dataclass(frozen=True)
class CapacityInputs:
    """Per-satellite capacity factors: C_sat = pol * se * B * beams."""

    bandwidth_hz: float
    mean_se_bps_hz: float
    n_beams: int = 19
    polarizations: int = 2

    def __post_init__(self):
        if min(self.bandwidth_hz, self.mean_se_bps_hz) <= 0:
            raise ValueError("bandwidth and spectral efficiency must be positive")
        if self.n_beams < 1 or self.polarizations < 1:
            raise ValueError("beam and polarization counts must be positive")


@dataclass(frozen=True)
class LatitudeRecord:
    latitude_rad: float
    n_visible: float
    cells_per_footprint: float
    cells_per_satellite: float
    density_dl_bps_km2: float
    density_ul_bps_km2: float


@dataclass(frozen=True)
class CapacityProfile:
    records: list[LatitudeRecord]
    shell: ConstellationShell
    hpbw_rad: float


def _integration_window(
    shell: ConstellationShell, latitude_rad: float
) -> tuple[float, float, float, float] | None:
    """Satellite-latitude support of the service disc, in both variables.

    Returns (p, q, t_lo, t_hi) with p/q the satellite-latitude limits
    and t_lo/t_hi their images under sin x = sin(alpha) sin(t), or None
    when the disc misses the orbital band entirely.
    """
    if not -math.pi / 2 <= latitude_rad <= math.pi / 2:
        raise ValueError("latitude out of range")
    alpha = shell.inclination_rad
    beta = footprint_angle(shell.sat_geometry)
    p = max(-alpha, latitude_rad - beta)
    q = min(alpha, latitude_rad + beta)
    if p >= q:
        return None
    sin_a = math.sin(alpha)
    t_lo = math.asin(max(-1.0, min(1.0, math.sin(p) / sin_a)))
    t_hi = math.asin(max(-1.0, min(1.0, math.sin(q) / sin_a)))
    return p, q, t_lo, t_hi


def visible_satellites(shell: ConstellationShell, latitude_rad: float) -> float:
    """Mean number of satellites above minimum elevation at a latitude.

    For each satellite latitude x, the fraction of the latitude circle
    inside the observer's service disc is arccos of the longitude
    half-width over pi; weighting it by the inclined-orbit latitude
    density and substituting sin x = sin(alpha) sin(t) cancels the
    density's endpoint singularity exactly, leaving the arc width alone
    under the integral.  Returns 0 beyond inclination plus footprint
    angle.
    """
    window = _integration_window(shell, latitude_rad)
    if window is None:
        return 0.0
    _, _, t_lo, t_hi = window
    alpha = shell.inclination_rad
    beta = footprint_angle(shell.sat_geometry)
    sin_a = math.sin(alpha)
    cos_beta = math.cos(beta)
    sin_lam = math.sin(latitude_rad)
    cos_lam = math.cos(latitude_rad)

    def arc_width(t: float) -> float:
        sin_x = sin_a * math.sin(t)
        cos_x = math.sqrt(1.0 - sin_x * sin_x)
        denom = cos_x * cos_lam
        if denom <= 0.0:
            return math.pi if sin_x * sin_lam >= cos_beta else 0.0
        ratio = (cos_beta - sin_x * sin_lam) / denom
        return math.acos(max(-1.0, min(1.0, ratio)))

    integral, _ = quad(arc_width, t_lo, t_hi, epsabs=1e-13, epsrel=1e-10, limit=200)
    return shell.n_satellites / math.pi ** 2 * integral


def visible_satellites_small_footprint(
    shell: ConstellationShell, latitude_rad: float
) -> float:
    """Visible-count in the compact flat-chord form.

    Approximates the longitude arc by the chord
    sqrt(beta^2 - (x - latitude)^2), which drops a factor close to
    sqrt(cos x / cos latitude); accurate to a fraction of a percent at
    low latitudes but up to several percent short near the coverage
    edge, where every visible satellite sits on the faster-shrinking
    latitude circles below the observer.  Kept for documentation and
    cross-checks; :func:`visible_satellites` is the default.
    """
    window = _integration_window(shell, latitude_rad)
    if window is None:
        return 0.0
    _, _, t_lo, t_hi = window
    alpha = shell.inclination_rad
    beta = footprint_angle(shell.sat_geometry)
    sin_a = math.sin(alpha)
    lam = latitude_rad

    def integrand(t: float) -> float:
        x = math.asin(sin_a * math.sin(t))
        radicand = beta * beta - (x - lam) ** 2
        if radicand <= 0.0:
            return 0.0
        return math.sqrt(radicand) * sin_a / math.cos(x)

    integral, _ = quad(integrand, t_lo, t_hi, epsabs=1e-13, epsrel=1e-10, limit=200)
    return shell.n_satellites / (math.pi ** 2 * sin_a) * integral


def _threshold_angle(geom: SatGeometry) -> float:
    """Footprint angle recovered by bisection on the elevation itself.

    Validation path kept independent of the closed form: the elevation
    comes from the Cartesian satellite/observer triangle, and the angle
    is found numerically from elevation(beta) = min elevation.
    """
    subsat = GroundPoint(0.0, 0.0)
    sat = satellite_position_km(subsat, geom)

    def elev(beta: float) -> float:
        p = point_at_separation(subsat, beta)
        el, _ = elevation_and_slant(sat, p, geom.earth_radius_km)
        return el

    lo, hi = 0.0, math.acos(geom.earth_radius_km / geom.orbit_radius_km)
    target = geom.min_elevation_rad
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if elev(mid) >= target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def brute_force_visibility(
    shell: ConstellationShell,
    latitude_rad: float,
    samples: int,
    seed: int = 0,
) -> float:
    """Visible-satellite count by placing orbits and counting.

    Satellites sit on ``planes`` circular orbits with evenly spread
    ascending nodes and evenly spread in-plane phases; each sample draws
    a random observer longitude and random per-plane phase offsets, then
    counts satellites whose geocentric separation from the observer is
    inside the (independently bisected) service threshold angle.
    Averaging over longitude and phase makes the estimate insensitive to
    the phasing convention.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    alpha = shell.inclination_rad
    n_planes = shell.planes
    n_spp = shell.sats_per_plane
    c_thresh = math.cos(_threshold_angle(shell.sat_geometry))
    node = 2.0 * math.pi * np.arange(n_planes) / n_planes
    e1 = np.stack([np.cos(node), np.sin(node), np.zeros(n_planes)], axis=1)
    e2 = np.stack(
        [
            -np.sin(node) * math.cos(alpha),
            np.cos(node) * math.cos(alpha),
            np.full(n_planes, math.sin(alpha)),
        ],
        axis=1,
    )
    rng = np.random.default_rng(seed)
    spacing = 2.0 * math.pi / n_spp
    total = 0.0
    remaining = samples
    clat, slat = math.cos(latitude_rad), math.sin(latitude_rad)
    while remaining > 0:
        chunk = min(remaining, 20000)
        lon = rng.uniform(0.0, 2.0 * math.pi, chunk)
        obs = np.stack(
            [clat * np.cos(lon), clat * np.sin(lon), np.full(chunk, slat)], axis=1
        )
        # projection of the observer on each orbit plane: the satellite at
        # in-plane angle nu has cos(separation) = amp * cos(nu - psi)
        c1 = obs @ e1.T
        c2 = obs @ e2.T
        amp = np.hypot(c1, c2)
        psi = np.arctan2(c2, c1)
        # ratio > 1 (plane never close enough) clips to arccos(1) = 0,
        # an empty arc; the threshold cosine is positive for any
        # sub-quadrant footprint so ratio < -1 cannot occur
        ratio = np.clip(c_thresh / np.maximum(amp, 1e-300), -1.0, 1.0)
        half_arc = np.arccos(ratio)
        # phases of a plane's satellites: delta + j*spacing; count those
        # inside [psi - half_arc, psi + half_arc] modulo one revolution
        delta = rng.uniform(0.0, 2.0 * math.pi, (chunk, n_planes))
        hi = (psi + half_arc - delta) / spacing
        lo = (psi - half_arc - delta) / spacing
        counts = np.floor(hi) - np.floor(lo)
        total += counts.sum()
        remaining -= chunk
    return total / samples


def cell_edge_angle(geom: SatGeometry, hpbw_rad: float) -> float:
    """Geocentric angle between nadir and the half-beamwidth ground point.

    Two beams separated by half the beamwidth at the satellite land this
    far apart on the ground (as seen from the Earth center), so the cell
    hexagon has inradius of half this angle times the Earth radius.
    """
    s = (geom.orbit_radius_km / geom.earth_radius_km) * math.sin(hpbw_rad / 2.0)
    if s > 1.0:
        raise ValueError("beam offset passes the Earth limb")
    return math.asin(s) - hpbw_rad / 2.0


def cell_edge_bracket_diagnostic(geom: SatGeometry, hpbw_rad: float) -> float:
    """The edge-angle bracket in its complementary-arccosine form.

    Written with arccos instead of arcsin the bracket evaluates to
    exactly minus the cell edge angle; it is kept only to document the
    sign convention of the corrected form used by :func:`cell_area`.
    """
    s = (geom.orbit_radius_km / geom.earth_radius_km) * math.sin(hpbw_rad / 2.0)
    if s > 1.0:
        raise ValueError("beam offset passes the Earth limb")
    return (hpbw_rad - math.pi) / 2.0 + math.acos(s)


def cell_area(geom: SatGeometry, hpbw_rad: float) -> float:
    """Area of one hexagonal cell, km^2.

    The hexagon inradius is half the ground separation of adjacent
    beams, R * cell_edge_angle / 2, giving area
    (sqrt(3)/2) R^2 cell_edge_angle^2.
    """
    beta_cell = cell_edge_angle(geom, hpbw_rad)
    return (math.sqrt(3.0) / 2.0) * geom.earth_radius_km ** 2 * beta_cell ** 2


def cells_per_footprint(geom: SatGeometry, hpbw_rad: float) -> float:
    """Number of cells tiling one satellite footprint."""
    return footprint_area_km2(geom) / cell_area(geom, hpbw_rad)


def cells_per_satellite(
    shell: ConstellationShell, latitude_rad: float, hpbw_rad: float
) -> float:
    """Cells each satellite serves when visible satellites split them evenly.

    Raises
    ------
    ValueError
        At latitudes with no visible satellites.
    """
    n = visible_satellites(shell, latitude_rad)
    if n <= 0.0:
        raise ValueError("latitude not covered by the shell")
    return cells_per_footprint(shell.sat_geometry, hpbw_rad) / n


def satellite_capacity(inputs: CapacityInputs) -> float:
    """Aggregate capacity of one satellite, bps."""
    return (
        inputs.polarizations
        * inputs.mean_se_bps_hz
        * inputs.bandwidth_hz
        * inputs.n_beams
    )


def capacity_density(
    shell: ConstellationShell,
    inputs: CapacityInputs,
    hpbw_rad: float,
    latitude_rad: float,
) -> float:
    """Offered capacity per km^2 of Earth surface at a latitude.

    Computed as satellite capacity over the area its share of cells
    covers; the algebraically equal form (satellite capacity times
    visible count over footprint area) is evaluated as a cross-check.

    Raises
    ------
    ValueError
        At latitudes with no visible satellites.
    """
    geom = shell.sat_geometry
    c_sat = satellite_capacity(inputs)
    per_area = c_sat / (
        cell_area(geom, hpbw_rad) * cells_per_satellite(shell, latitude_rad, hpbw_rad)
    )
    alt = c_sat * visible_satellites(shell, latitude_rad) / footprint_area_km2(geom)
    if abs(per_area - alt) > 1e-9 * per_area:
        raise ArithmeticError("capacity-density forms disagree beyond tolerance")
    return per_area


def latitude_sweep(
    shell: ConstellationShell,
    inputs_dl: CapacityInputs,
    inputs_ul: CapacityInputs,
    hpbw_rad: float,
    step_rad: float = math.radians(0.5),
    min_visible: float = MIN_VISIBLE_FOR_REPORTING,
) -> CapacityProfile:
    """Evaluate the capacity chain on a latitude grid from the equator up.

    The grid runs from 0 past the coverage cutoff (inclination plus
    footprint angle) so the first uncovered row is included; the profile
    is symmetric in the latitude sign by construction.  ``n_visible`` is
    reported everywhere; per-satellite cell counts and densities are
    zeroed where fewer than ``min_visible`` satellites serve the
    latitude (see module notes on the reporting threshold).
    """
    if step_rad <= 0:
        raise ValueError("step must be positive")
    geom = shell.sat_geometry
    cutoff = shell.inclination_rad + footprint_angle(geom)
    c_dl = satellite_capacity(inputs_dl)
    c_ul = satellite_capacity(inputs_ul)
    cells_fp = cells_per_footprint(geom, hpbw_rad)
    fp_area = footprint_area_km2(geom)
    records = []
    lat = 0.0
    while True:
        n = visible_satellites(shell, min(lat, math.pi / 2))
        if n > 0.0 and n >= min_visible:
            cps = cells_fp / n
            dens_dl = c_dl * n / fp_area
            dens_ul = c_ul * n / fp_area
        else:
            cps = 0.0
            dens_dl = 0.0
            dens_ul = 0.0
        records.append(
            LatitudeRecord(min(lat, math.pi / 2), n, cells_fp, cps, dens_dl, dens_ul)
        )
        if lat > cutoff or lat >= math.pi / 2:
            break
        lat += step_rad
    return CapacityProfile(records, shell, hpbw_rad)
