"""The 19-beam hexagonal layout and user placement.

Beams form a hexagonal lattice in the UV plane of the satellite pointing
frame: a central beam plus two rings (6 and 12 beams).  Adjacent lattice
points sit ``2 sin(hpbw/4)`` apart in UV, which separates neighbouring
boresights by half the half-power beamwidth, so each beam crosses its
neighbours near their common -3 dB contour.  Cells are the hexagonal
lattice tiles around each beam center, projected onto the Earth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.stats import poisson

from .antenna import AperturePattern, aperture_for_hpbw, pattern_gain
from .errors import ConfigurationError
from .geometry import (
    EARTH_RADIUS_KM,
    GroundPoint,
    SatGeometry,
    UvPoint,
    beam_frame,
    elevation_and_slant,
    ground_projection,
    point_at_separation,
    satellite_position_km,
)

N_BEAMS = 19
CENTRAL_CELL_COUNT = 7  # center plus first ring, the default statistics region


def _hex_lattice_offsets() -> list[tuple[int, float, float]]:
    """Lattice offsets (ring, du, dv) in units of the lattice spacing.

    Ring 0 is the single central point, rings 1 and 2 are sorted by
    angle so beam indices are stable.
    """
    a1 = np.array([1.0, 0.0])
    a2 = np.array([0.5, math.sqrt(3.0) / 2.0])
    points = []
    for i in range(-2, 3):
        for j in range(-2, 3):
            ring = max(abs(i), abs(j), abs(i + j))
            if ring > 2:
                continue
            p = i * a1 + j * a2
            points.append((ring, math.atan2(p[1], p[0]) % (2 * math.pi), p[0], p[1]))
    points.sort(key=lambda t: (t[0], t[1]))
    return [(ring, du, dv) for ring, _, du, dv in points]


@dataclass(frozen=True)
class Beam:
    index: int
    ring: int
    uv_center: UvPoint
    ground_center: GroundPoint
    boresight_direction: np.ndarray


@dataclass(frozen=True)
class BeamGrid:
    """The 19 beams of one satellite plus the shared pointing frame."""

    beams: list[Beam]
    center_elevation_rad: float
    uv_spacing: float
    sat_position_km: np.ndarray
    geom: SatGeometry
    # cell sampling support: per cell, the projected hexagon as a fan of
    # triangles around the projected center (vertices in km on the sphere)
    cell_vertices_km: np.ndarray = field(repr=False)  # (19, 6, 3)
    cell_centers_km: np.ndarray = field(repr=False)  # (19, 3)

    @property
    def boresights(self) -> np.ndarray:
        return np.stack([b.boresight_direction for b in self.beams])

    def cell_area_km2(self, index: int) -> float:
        """Planar area of a projected cell polygon (diagnostic)."""
        c = self.cell_centers_km[index]
        v = self.cell_vertices_km[index]
        area = 0.0
        for k in range(6):
            area += 0.5 * np.linalg.norm(
                np.cross(v[k] - c, v[(k + 1) % 6] - c)
            )
        return float(area)


@dataclass(frozen=True)
class UserDrop:
    """One Monte Carlo placement of users on the cell grid."""

    positions_km: np.ndarray  # (n, 3) geocentric, on the sphere
    serving_beam: np.ndarray  # (n,) int, strongest beam per user
    users_per_cell_mean: float

    @property
    def n_users(self) -> int:
        return int(self.positions_km.shape[0])

    def ground_points(self) -> list[GroundPoint]:
        return [GroundPoint.from_vector(p) for p in self.positions_km]


def _tilt_angle(geom: SatGeometry, center_elevation_rad: float) -> float:
    """Geocentric offset of the central cell for a given center elevation."""
    subsat = GroundPoint(0.0, 0.0)
    sat = satellite_position_km(subsat, geom)

    def elev_err(beta: float) -> float:
        p = point_at_separation(subsat, beta, azimuth_rad=0.0)
        el, _ = elevation_and_slant(sat, p, geom.earth_radius_km)
        return el - center_elevation_rad

    limb = math.acos(geom.earth_radius_km / geom.orbit_radius_km)
    if elev_err(0.0) <= 0.0:
        return 0.0
    return brentq(elev_err, 0.0, limb * (1 - 1e-9), xtol=1e-13)


def build_grid(
    band, geom: SatGeometry, center_elevation_rad: float = math.pi / 2
) -> BeamGrid:
    """Construct the 19-beam grid for a satellite of the given band.

    The central boresight is tilted so that its ground center sees the
    satellite at ``center_elevation_rad``; the other 18 beams are laid
    out around it on the UV lattice.

    Raises
    ------
    ConfigurationError
        If the elevation is out of range or any beam misses the Earth.
    """
    if not geom.min_elevation_rad < center_elevation_rad <= math.pi / 2:
        raise ConfigurationError(
            "center elevation must lie in (min elevation, 90 deg]"
        )
    subsat = GroundPoint(0.0, 0.0)
    sat = satellite_position_km(subsat, geom)
    tilt = _tilt_angle(geom, center_elevation_rad)
    center_ground = point_at_separation(subsat, tilt, azimuth_rad=0.0)
    center_pos = center_ground.position_km(geom.earth_radius_km)
    boresight0 = center_pos - sat
    boresight0 = boresight0 / np.linalg.norm(boresight0)
    u_axis, v_axis, w = beam_frame(sat, boresight0)

    spacing = 2.0 * math.sin(band.sat_hpbw_rad / 4.0)
    circumradius = spacing / math.sqrt(3.0)
    hex_angles = [math.radians(30.0 + 60.0 * k) for k in range(6)]

    beams: list[Beam] = []
    cell_verts = np.empty((N_BEAMS, 6, 3))
    cell_centers = np.empty((N_BEAMS, 3))
    for index, (ring, du, dv) in enumerate(_hex_lattice_offsets()):
        u = spacing * du
        v = spacing * dv
        uv = UvPoint(u, v)
        direction = (
            u * u_axis + v * v_axis + math.sqrt(1.0 - u * u - v * v) * w
        )
        center = ground_projection(sat, boresight0, uv, geom.earth_radius_km)
        if center is None:
            raise ConfigurationError(f"beam {index} misses the Earth")
        beams.append(Beam(index, ring, uv, center, direction))
        cell_centers[index] = center.position_km(geom.earth_radius_km)
        for k, ang in enumerate(hex_angles):
            vert_uv = UvPoint(
                u + circumradius * math.cos(ang), v + circumradius * math.sin(ang)
            )
            vert = ground_projection(sat, boresight0, vert_uv, geom.earth_radius_km)
            if vert is None:
                raise ConfigurationError(f"cell {index} crosses the Earth limb")
            cell_verts[index, k] = vert.position_km(geom.earth_radius_km)

    return BeamGrid(
        beams=beams,
        center_elevation_rad=center_elevation_rad,
        uv_spacing=spacing,
        sat_position_km=sat,
        geom=geom,
        cell_vertices_km=cell_verts,
        cell_centers_km=cell_centers,
    )


def gains_toward(
    grid: BeamGrid, positions_km: np.ndarray, pattern: AperturePattern
) -> np.ndarray:
    """Normalized gain of every beam toward every position, shape (n, 19)."""
    pos = np.atleast_2d(np.asarray(positions_km, dtype=float))
    los = pos - grid.sat_position_km
    los = los / np.linalg.norm(los, axis=1, keepdims=True)
    cosang = np.clip(los @ grid.boresights.T, -1.0, 1.0)
    return pattern_gain(pattern, np.arccos(cosang))


def beam_gain_at(
    grid: BeamGrid,
    beam_index: int,
    target: GroundPoint,
    pattern: AperturePattern,
) -> float:
    """Normalized gain of one beam toward a ground point.

    Raises
    ------
    ValueError
        If the target cannot see the satellite (below its horizon).
    """
    el, _ = elevation_and_slant(
        grid.sat_position_km, target, grid.geom.earth_radius_km
    )
    if el < 0:
        raise ValueError("target is below the satellite horizon")
    pos = target.position_km(grid.geom.earth_radius_km)
    return float(gains_toward(grid, pos[None, :], pattern)[0, beam_index])


def _cell_triangles(grid: BeamGrid, cell: int) -> tuple[np.ndarray, np.ndarray]:
    """Triangle fan (6, 3, 3) and normalized area weights for one cell."""
    c = grid.cell_centers_km[cell]
    v = grid.cell_vertices_km[cell]
    tris = np.empty((6, 3, 3))
    areas = np.empty(6)
    for k in range(6):
        tris[k] = (c, v[k], v[(k + 1) % 6])
        areas[k] = 0.5 * np.linalg.norm(np.cross(v[k] - c, v[(k + 1) % 6] - c))
    return tris, areas / areas.sum()


def _sample_in_cell(
    grid: BeamGrid, cell: int, unit_triplets: np.ndarray
) -> np.ndarray:
    """Map uniform triplets in [0,1)^3 to points in a cell, on the sphere."""
    tris, weights = _cell_triangles(grid, cell)
    cum = np.cumsum(weights)
    idx = np.searchsorted(cum, unit_triplets[:, 0], side="right")
    idx = np.clip(idx, 0, 5)
    b1 = unit_triplets[:, 1]
    b2 = unit_triplets[:, 2]
    fold = b1 + b2 > 1.0
    b1 = np.where(fold, 1.0 - b1, b1)
    b2 = np.where(fold, 1.0 - b2, b2)
    a, b, c = tris[idx, 0], tris[idx, 1], tris[idx, 2]
    pts = a + b1[:, None] * (b - a) + b2[:, None] * (c - a)
    radius = grid.geom.earth_radius_km
    return pts * (radius / np.linalg.norm(pts, axis=1))[:, None]


def _poisson_count(rng: np.random.Generator, mean: float) -> int:
    """Poisson draw by inversion so counts are coupled across densities.

    Reusing one uniform with the inverse CDF makes the count at a lower
    mean a lower bound of the count at a higher mean on the same stream,
    which keeps density sweeps comparable under common random numbers.
    """
    u = rng.random()
    if u <= 0.0:
        return 0
    return int(poisson.ppf(u, mean))


def drop_users(grid: BeamGrid, mean_users_per_cell: float, rng_seed) -> UserDrop:
    """Drop a Poisson number of users uniformly over every cell.

    ``rng_seed`` may be an int or a sequence of ints; each cell consumes
    an independent substream so drops are reproducible cell by cell.
    Users are re-attached to the strongest beam, which only matters near
    cell edges.
    """
    if mean_users_per_cell <= 0:
        raise ValueError("mean users per cell must be positive")
    root = np.random.SeedSequence(rng_seed)
    children = root.spawn(N_BEAMS)
    chunks = []
    for cell in range(N_BEAMS):
        rng = np.random.default_rng(children[cell])
        n = _poisson_count(rng, mean_users_per_cell)
        if n == 0:
            continue
        triplets = rng.random((n, 3))
        chunks.append(_sample_in_cell(grid, cell, triplets))
    if chunks:
        positions = np.concatenate(chunks)
    else:
        positions = np.empty((0, 3))
    pattern = _unit_aperture_for(grid)
    if positions.shape[0]:
        gains = gains_toward(grid, positions, pattern)
        serving = np.argmax(gains, axis=1).astype(int)
    else:
        serving = np.empty(0, dtype=int)
    return UserDrop(positions, serving, mean_users_per_cell)


def _unit_aperture_for(grid: BeamGrid) -> AperturePattern:
    """An aperture whose beamwidth matches the grid spacing.

    Attachment only compares normalized gains of identical beams, so any
    aperture with the right beamwidth gives the same argmax; the grid
    spacing encodes that beamwidth.
    """
    hpbw = 4.0 * math.asin(grid.uv_spacing / 2.0)
    return aperture_for_hpbw(hpbw, 2.0e9)


def gain_map(
    grid: BeamGrid, pattern: AperturePattern, step_deg: float = 0.02
) -> list[tuple[float, float, int, float]]:
    """Best-beam gain raster over the grid's ground extent.

    Returns rows (lat_deg, lon_deg, beam_index, normalized_gain_db) on a
    regular latitude/longitude raster covering all 19 cells, for
    external plotting of coverage maps.
    """
    if step_deg <= 0:
        raise ValueError("raster step must be positive")
    verts = grid.cell_vertices_km.reshape(-1, 3)
    lats = np.degrees(np.arcsin(verts[:, 2] / grid.geom.earth_radius_km))
    lons = np.degrees(np.arctan2(verts[:, 1], verts[:, 0]))
    pad = 2.0 * step_deg
    lat_axis = np.arange(lats.min() - pad, lats.max() + pad, step_deg)
    lon_axis = np.arange(lons.min() - pad, lons.max() + pad, step_deg)
    lat_grid, lon_grid = np.meshgrid(lat_axis, lon_axis, indexing="ij")
    lat_r = np.radians(lat_grid.ravel())
    lon_r = np.radians(lon_grid.ravel())
    pts = grid.geom.earth_radius_km * np.stack(
        [np.cos(lat_r) * np.cos(lon_r), np.cos(lat_r) * np.sin(lon_r), np.sin(lat_r)],
        axis=1,
    )
    gains = gains_toward(grid, pts, pattern)
    best = np.argmax(gains, axis=1)
    best_gain = gains[np.arange(gains.shape[0]), best]
    gain_db = 10.0 * np.log10(np.maximum(best_gain, 1e-30))
    return [
        (float(lat), float(lon), int(b), float(g))
        for lat, lon, b, g in zip(
            lat_grid.ravel(), lon_grid.ravel(), best, gain_db
        )
    ]
