"""Spherical-Earth geometry for satellite link analysis.

All positions are geocentric Cartesian vectors in km; latitude and
longitude appear only at the interfaces.  The Earth is a sphere of
radius 6371 km, which is the usual single-radius approximation for
system-level coverage studies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EARTH_RADIUS_KM = 6371.0


@dataclass(frozen=True)
class GroundPoint:
    """A point on the Earth surface.

    Parameters
    ----------
    latitude_rad : float
        Geocentric latitude in [-pi/2, pi/2].
    longitude_rad : float
        Longitude in (-pi, pi].
    """

    latitude_rad: float
    longitude_rad: float

    def __post_init__(self):
        if not -math.pi / 2 <= self.latitude_rad <= math.pi / 2:
            raise ValueError(f"latitude {self.latitude_rad} rad out of range")
        if not -math.pi < self.longitude_rad <= math.pi:
            raise ValueError(f"longitude {self.longitude_rad} rad out of range")

    def unit_vector(self) -> np.ndarray:
        """Geocentric unit vector pointing at this surface point."""
        clat = math.cos(self.latitude_rad)
        return np.array([
            clat * math.cos(self.longitude_rad),
            clat * math.sin(self.longitude_rad),
            math.sin(self.latitude_rad),
        ])

    def position_km(self, radius_km: float = EARTH_RADIUS_KM) -> np.ndarray:
        return radius_km * self.unit_vector()

    @staticmethod
    def from_vector(vec: np.ndarray) -> "GroundPoint":
        """Surface point in the direction of an arbitrary nonzero vector."""
        x, y, z = (float(c) for c in vec)
        r = math.sqrt(x * x + y * y + z * z)
        if r == 0.0:
            raise ValueError("zero vector has no direction")
        lon = math.atan2(y, x)
        if lon <= -math.pi:
            lon = math.pi
        return GroundPoint(math.asin(max(-1.0, min(1.0, z / r))), lon)


@dataclass(frozen=True)
class SatGeometry:
    """Satellite altitude and service constraint over a spherical Earth."""

    altitude_km: float
    min_elevation_rad: float
    earth_radius_km: float = EARTH_RADIUS_KM

    def __post_init__(self):
        if self.altitude_km <= 0:
            raise ValueError("altitude must be positive")
        if not 0 <= self.min_elevation_rad < math.pi / 2:
            raise ValueError("min elevation must lie in [0, pi/2)")

    @property
    def orbit_radius_km(self) -> float:
        return self.earth_radius_km + self.altitude_km


@dataclass(frozen=True)
class UvPoint:
    """Direction cosines (u, v) of a direction relative to boresight."""

    u: float
    v: float

    def __post_init__(self):
        if self.u * self.u + self.v * self.v > 1.0 + 1e-12:
            raise ValueError("uv point outside the unit disc")

    @property
    def radius(self) -> float:
        return math.hypot(self.u, self.v)


def uv_from_angles(theta_rad: float, omega_rad: float) -> UvPoint:
    """Map a direction to the UV plane.

    ``theta`` is the polar angle off boresight and ``omega`` the angle
    around it; the mapping is u = sin(theta)cos(omega),
    v = sin(theta)sin(omega).

    Raises
    ------
    ValueError
        If theta lies outside [0, pi/2].
    """
    if not 0 <= theta_rad <= math.pi / 2:
        raise ValueError(f"off-boresight angle {theta_rad} rad out of range")
    st = math.sin(theta_rad)
    return UvPoint(st * math.cos(omega_rad), st * math.sin(omega_rad))


def angles_from_uv(p: UvPoint) -> tuple[float, float]:
    """Inverse of :func:`uv_from_angles`; omega is 0 at the origin."""
    r = p.radius
    if r == 0.0:
        return 0.0, 0.0
    return math.asin(min(1.0, r)), math.atan2(p.v, p.u)


def footprint_angle(geom: SatGeometry) -> float:
    """Geocentric half-angle of the region served above minimum elevation.

    A surface point sees the satellite at or above the minimum elevation
    exactly when its geocentric separation from the sub-satellite point
    is at most this angle.

    Returns
    -------
    float
        Footprint half-angle in radians, in (0, pi/2).
    """
    k = geom.earth_radius_km / geom.orbit_radius_km
    eps = geom.min_elevation_rad
    return math.pi / 2 - math.asin(k * math.cos(eps)) - eps


def footprint_area_km2(geom: SatGeometry) -> float:
    """Spherical-cap area of the satellite footprint, km^2."""
    beta = footprint_angle(geom)
    return 2.0 * math.pi * geom.earth_radius_km ** 2 * (1.0 - math.cos(beta))


def satellite_position_km(subsat: GroundPoint, geom: SatGeometry) -> np.ndarray:
    """Geocentric position of a satellite above the given surface point."""
    return geom.orbit_radius_km * subsat.unit_vector()


def elevation_and_slant(
    sat_position_km: np.ndarray,
    ground: GroundPoint,
    earth_radius_km: float = EARTH_RADIUS_KM,
) -> tuple[float, float]:
    """Elevation angle and slant range from a surface point to a satellite.

    Parameters
    ----------
    sat_position_km : ndarray
        Geocentric satellite position, km.  Must lie strictly above the
        surface.
    ground : GroundPoint
        Observer location.

    Returns
    -------
    (float, float)
        Elevation in radians (pi/2 exactly at the sub-satellite point)
        and slant range in km.
    """
    sat = np.asarray(sat_position_km, dtype=float)
    if np.linalg.norm(sat) <= earth_radius_km:
        raise ValueError("satellite at or below the surface")
    up = ground.unit_vector()
    los = sat - earth_radius_km * up
    slant = float(np.linalg.norm(los))
    sin_el = float(np.dot(los, up)) / slant
    return math.asin(max(-1.0, min(1.0, sin_el))), slant


def beam_frame(
    sat_position_km: np.ndarray, boresight: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right-handed (u_axis, v_axis, boresight) frame for a beam.

    The u axis lies in the plane spanned by the boresight and the nadir
    direction, so tilting the boresight moves beams along +u.  When the
    boresight is exactly nadir the in-plane reference is arbitrary and a
    fixed perpendicular is chosen instead.
    """
    sat = np.asarray(sat_position_km, dtype=float)
    w = np.asarray(boresight, dtype=float)
    w = w / np.linalg.norm(w)
    nadir = -sat / np.linalg.norm(sat)
    v_axis = np.cross(w, nadir)
    norm = np.linalg.norm(v_axis)
    if norm < 1e-12:
        # nadir-pointing beam: pick the reference axis least aligned with w
        ref = np.zeros(3)
        ref[int(np.argmin(np.abs(w)))] = 1.0
        v_axis = np.cross(w, ref)
        norm = np.linalg.norm(v_axis)
    v_axis = v_axis / norm
    u_axis = np.cross(v_axis, w)
    return u_axis, v_axis, w


def ground_projection(
    sat_position_km: np.ndarray,
    boresight: np.ndarray,
    uv: UvPoint,
    earth_radius_km: float = EARTH_RADIUS_KM,
) -> GroundPoint | None:
    """Intersection of a beam direction with the Earth surface.

    The direction is the UV offset applied in the beam frame of the
    given boresight.  Returns the nearer ray-sphere intersection, which
    is the physical one for a downward-looking beam, or ``None`` when
    the ray misses the Earth entirely (the beam overshoots the limb).
    """
    sat = np.asarray(sat_position_km, dtype=float)
    u_axis, v_axis, w = beam_frame(sat, boresight)
    r2 = uv.u * uv.u + uv.v * uv.v
    direction = uv.u * u_axis + uv.v * v_axis + math.sqrt(max(0.0, 1.0 - r2)) * w
    # |sat + t*direction| = R, take the smaller positive root
    b = float(np.dot(sat, direction))
    c = float(np.dot(sat, sat)) - earth_radius_km ** 2
    disc = b * b - c
    if disc < 0.0:
        return None
    t = -b - math.sqrt(disc)
    if t <= 0.0:
        return None
    return GroundPoint.from_vector(sat + t * direction)


def geocentric_angle(a: GroundPoint, b: GroundPoint) -> float:
    """Central angle between two surface points, radians."""
    dot = float(np.dot(a.unit_vector(), b.unit_vector()))
    return math.acos(max(-1.0, min(1.0, dot)))


def ground_distance_km(
    a: GroundPoint, b: GroundPoint, earth_radius_km: float = EARTH_RADIUS_KM
) -> float:
    """Great-circle distance between two surface points, km."""
    return earth_radius_km * geocentric_angle(a, b)


def point_at_separation(
    origin: GroundPoint, separation_rad: float, azimuth_rad: float = 0.0
) -> GroundPoint:
    """Surface point at a given central angle and azimuth from an origin.

    Azimuth 0 heads due north; pi/2 heads east.  Used to construct
    observer geometries at controlled geocentric separations.
    """
    up = origin.unit_vector()
    east = np.cross(np.array([0.0, 0.0, 1.0]), up)
    n = np.linalg.norm(east)
    if n < 1e-12:
        # at a pole every direction is north; pick x as the reference
        east = np.array([0.0, 1.0, 0.0])
    else:
        east = east / n
    north = np.cross(up, east)
    heading = math.cos(azimuth_rad) * north + math.sin(azimuth_rad) * east
    vec = math.cos(separation_rad) * up + math.sin(separation_rad) * heading
    return GroundPoint.from_vector(vec)
