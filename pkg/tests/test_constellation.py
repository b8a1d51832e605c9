"""Tests for the analytical visibility and capacity-density chain.

Frozen visibility values are pinned from converged quadrature runs and
cross-checked against the orbit-counting estimator; the conservation
test below ties the whole curve to an exact closed form with no frozen
numbers at all.
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import quad

from leontn.constellation import (
    KUIPER_SHELL,
    CapacityInputs,
    ConstellationShell,
    brute_force_visibility,
    capacity_density,
    cell_area,
    cell_edge_angle,
    cell_edge_bracket_diagnostic,
    cells_per_footprint,
    cells_per_satellite,
    latitude_sweep,
    satellite_capacity,
    visible_satellites,
    visible_satellites_small_footprint,
)
from leontn.geometry import SatGeometry, footprint_angle
from leontn.link import KA_BAND, S_BAND

HPBW_S = S_BAND.sat_hpbw_rad
HPBW_KA = KA_BAND.sat_hpbw_rad


def test_shell_validation():
    with pytest.raises(ValueError):
        ConstellationShell(0, 40, 600.0, 0.8, 0.6)
    with pytest.raises(ValueError):
        ConstellationShell(80, 0, 600.0, 0.8, 0.6)
    with pytest.raises(ValueError):
        ConstellationShell(80, 40, 600.0, 0.0, 0.6)
    with pytest.raises(ValueError):
        ConstellationShell(80, 40, 600.0, math.pi / 2 + 0.01, 0.6)
    assert KUIPER_SHELL.n_satellites == 3200
    assert KUIPER_SHELL.planes == 80
    assert KUIPER_SHELL.sats_per_plane == 40
    assert KUIPER_SHELL.altitude_km == 600.0
    assert_allclose(math.degrees(KUIPER_SHELL.inclination_rad), 50.0, rtol=1e-12)
    assert_allclose(math.degrees(KUIPER_SHELL.min_elevation_rad), 35.0, rtol=1e-12)


def test_visible_satellites_frozen():
    expected = {
        0.0: 8.641569642062162,
        25.0: 10.396992778361504,
        45.0: 26.82557668216021,
        55.0: 6.618503856111941,
    }
    for lat_deg, value in expected.items():
        got = visible_satellites(KUIPER_SHELL, math.radians(lat_deg))
        assert_allclose(got, value, rtol=1e-9)


def test_visible_satellites_small_footprint_frozen():
    expected = {
        0.0: 8.65094617656919,
        25.0: 10.415868179156831,
        45.0: 27.139840056248197,
        55.0: 6.2300019976206364,
    }
    for lat_deg, value in expected.items():
        got = visible_satellites_small_footprint(
            KUIPER_SHELL, math.radians(lat_deg)
        )
        assert_allclose(got, value, rtol=1e-9)


def test_visible_satellites_symmetry_and_edges():
    n_pos = visible_satellites(KUIPER_SHELL, math.radians(25.0))
    n_neg = visible_satellites(KUIPER_SHELL, math.radians(-25.0))
    assert_allclose(n_neg, n_pos, rtol=1e-12)
    # beyond inclination plus footprint angle nothing is ever visible
    assert visible_satellites(KUIPER_SHELL, math.radians(57.0)) == 0.0
    assert visible_satellites(KUIPER_SHELL, math.pi / 2) == 0.0
    assert visible_satellites_small_footprint(KUIPER_SHELL, math.pi / 2) == 0.0
    with pytest.raises(ValueError):
        visible_satellites(KUIPER_SHELL, math.pi / 2 + 0.01)


def test_satellite_count_conservation():
    # averaging the visible count over the sphere must recover the
    # constellation size times the fractional footprint area:
    # int N(lat) cos(lat) dlat / 2 = N_sat (1 - cos beta) / 2
    beta = footprint_angle(KUIPER_SHELL.sat_geometry)
    cutoff = KUIPER_SHELL.inclination_rad + beta
    integral, _ = quad(
        lambda lat: visible_satellites(KUIPER_SHELL, lat) * math.cos(lat),
        0.0,
        cutoff,
        limit=200,
    )
    expected = KUIPER_SHELL.n_satellites * (1.0 - math.cos(beta)) / 2.0
    assert_allclose(integral, expected, rtol=1e-8)


def test_polar_shell_pole_has_closed_form():
    # for a polar shell the orbit density is flat, and at the pole the
    # service disc reduces the integral to N_sat * beta / pi exactly
    polar = ConstellationShell(4, 10, 600.0, math.pi / 2, math.radians(35.0))
    beta = footprint_angle(polar.sat_geometry)
    got = visible_satellites(polar, math.pi / 2)
    assert_allclose(got, polar.n_satellites * beta / math.pi, rtol=1e-12)


def test_brute_force_agrees_with_quadrature():
    got = brute_force_visibility(KUIPER_SHELL, 0.0, 50_000, seed=11)
    assert_allclose(got, 8.64232, rtol=1e-9)  # fixed seed, fixed stream
    assert abs(got - visible_satellites(KUIPER_SHELL, 0.0)) / got < 0.01
    with pytest.raises(ValueError):
        brute_force_visibility(KUIPER_SHELL, 0.0, 0)


def test_cell_edge_angle_frozen():
    geom = SatGeometry(600.0, math.radians(35.0))
    assert_allclose(
        cell_edge_angle(geom, HPBW_S), 0.003626397101224074, rtol=1e-12
    )
    # the complementary-arccosine bracket is exactly the negated angle
    assert_allclose(
        cell_edge_bracket_diagnostic(geom, HPBW_S),
        -cell_edge_angle(geom, HPBW_S),
        atol=1e-15,
    )
    with pytest.raises(ValueError):
        cell_edge_angle(geom, math.radians(170.0))
    with pytest.raises(ValueError):
        cell_edge_bracket_diagnostic(geom, math.radians(170.0))


def test_cell_areas_frozen():
    geom = SatGeometry(600.0, math.radians(35.0))
    assert_allclose(cell_area(geom, HPBW_S), 462.27090450706885, rtol=1e-12)
    assert_allclose(cell_area(geom, HPBW_KA), 73.55826335309284, rtol=1e-12)
    assert_allclose(
        cells_per_footprint(geom, HPBW_S), 3575.52789808423, rtol=1e-12
    )
    assert_allclose(
        cells_per_footprint(geom, HPBW_KA), 22470.113352236436, rtol=1e-12
    )


def test_satellite_capacity_products():
    assert_allclose(
        satellite_capacity(CapacityInputs(30e6, 0.52)), 592.8e6, rtol=1e-12
    )
    assert_allclose(
        satellite_capacity(CapacityInputs(30e6, 0.18)), 205.2e6, rtol=1e-12
    )
    assert_allclose(
        satellite_capacity(CapacityInputs(400e6, 0.47)), 7.144e9, rtol=1e-12
    )
    assert_allclose(
        satellite_capacity(CapacityInputs(400e6, 0.5)), 7.6e9, rtol=1e-12
    )


def test_capacity_inputs_validation():
    with pytest.raises(ValueError):
        CapacityInputs(0.0, 0.5)
    with pytest.raises(ValueError):
        CapacityInputs(30e6, -0.1)
    with pytest.raises(ValueError):
        CapacityInputs(30e6, 0.5, n_beams=0)
    with pytest.raises(ValueError):
        CapacityInputs(30e6, 0.5, polarizations=0)


def test_cells_per_satellite():
    got = cells_per_satellite(KUIPER_SHELL, 0.0, HPBW_S)
    assert_allclose(got, 413.7590792164225, rtol=1e-9)
    assert got > 19.0  # more cells than beams: satellites must hop
    with pytest.raises(ValueError):
        cells_per_satellite(KUIPER_SHELL, math.radians(60.0), HPBW_S)


def test_capacity_density():
    inputs = CapacityInputs(30e6, 0.52)
    got = capacity_density(KUIPER_SHELL, inputs, HPBW_S, 0.0)
    assert_allclose(got, 3099.303442154771, rtol=1e-9)
    with pytest.raises(ValueError):
        capacity_density(KUIPER_SHELL, inputs, HPBW_S, math.radians(60.0))


def test_latitude_sweep():
    profile = latitude_sweep(
        KUIPER_SHELL,
        CapacityInputs(30e6, 0.52),
        CapacityInputs(30e6, 0.18),
        HPBW_S,
        step_rad=math.radians(1.0),
    )
    records = profile.records
    assert records[0].latitude_rad == 0.0
    lats = [r.latitude_rad for r in records]
    assert all(b > a for a, b in zip(lats, lats[1:]))
    # the grid runs one step past the coverage cutoff
    cutoff = KUIPER_SHELL.inclination_rad + footprint_angle(
        KUIPER_SHELL.sat_geometry
    )
    assert lats[-1] > cutoff
    assert records[-1].n_visible == 0.0
    assert records[-1].cells_per_satellite == 0.0
    # per-satellite figures are zeroed below the reporting threshold but
    # the visible count itself is always reported
    thin = [r for r in records if 0.0 < r.n_visible < 3.0]
    assert thin  # the coverage edge produces such rows at 1 deg steps
    for rec in thin:
        assert rec.cells_per_satellite == 0.0
        assert rec.density_dl_bps_km2 == 0.0
        assert rec.density_ul_bps_km2 == 0.0
    reported = [r for r in records if r.n_visible >= 3.0]
    for rec in reported:
        assert rec.density_dl_bps_km2 > 0.0
        assert_allclose(
            rec.density_ul_bps_km2 / rec.density_dl_bps_km2,
            0.18 / 0.52,
            rtol=1e-12,
        )
        assert rec.cells_per_footprint == reported[0].cells_per_footprint
    assert profile.hpbw_rad == HPBW_S
    with pytest.raises(ValueError):
        latitude_sweep(
            KUIPER_SHELL,
            CapacityInputs(30e6, 0.52),
            CapacityInputs(30e6, 0.18),
            HPBW_S,
            step_rad=0.0,
        )


def test_latitude_sweep_no_threshold():
    # min_visible=0 keeps every covered row; uncovered rows stay zeroed
    profile = latitude_sweep(
        KUIPER_SHELL,
        CapacityInputs(30e6, 0.52),
        CapacityInputs(30e6, 0.18),
        HPBW_S,
        step_rad=math.radians(5.0),
        min_visible=0.0,
    )
    for rec in profile.records:
        if rec.n_visible > 0.0:
            assert rec.cells_per_satellite > 0.0
        else:
            assert rec.cells_per_satellite == 0.0
