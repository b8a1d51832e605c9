"""Throughput and capacity toolkit for LEO non-terrestrial networks.

Two complementary views of the same constellation:

* an analytical chain from orbital shell to capacity density per km^2
  of ground at each latitude, and
* a static-snapshot Monte Carlo simulator of per-beam SINR and
  throughput for an S-band/handheld or Ka-band/VSAT system.
"""

from .antenna import (
    AperturePattern,
    IsotropicPattern,
    aperture_for_hpbw,
    first_null_angle,
    pattern_gain,
    solve_hpbw,
    vsat_gains,
)
from .constellation import (
    KUIPER_SHELL,
    MIN_VISIBLE_FOR_REPORTING,
    CapacityInputs,
    CapacityProfile,
    ConstellationShell,
    LatitudeRecord,
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
from .errors import ConfigurationError, UsageError
from .geometry import (
    EARTH_RADIUS_KM,
    GroundPoint,
    SatGeometry,
    UvPoint,
    elevation_and_slant,
    footprint_angle,
    footprint_area_km2,
    ground_projection,
    uv_from_angles,
)
from .layout import (
    BeamGrid,
    UserDrop,
    beam_gain_at,
    build_grid,
    drop_users,
    gain_map,
    gains_toward,
)
from .link import (
    HANDHELD,
    HANDHELD_LOSSES,
    KA_BAND,
    S_BAND,
    VSAT,
    VSAT_LOSSES,
    BandSystem,
    LossConfig,
    SeMapping,
    Terminal,
    cn0_dbhz,
    cnr_db,
    fspl_db,
    spectral_efficiency,
)
from .scenario import Scenario, load_preset, load_scenario, preset_path
from .snapshot import (
    DensityRecord,
    DensitySummary,
    SnapshotConfig,
    SnapshotResult,
    downlink_snapshot,
    summarize,
    uplink_snapshot,
)

__version__ = "0.1.0"

__all__ = [
    "AperturePattern",
    "BandSystem",
    "BeamGrid",
    "CapacityInputs",
    "CapacityProfile",
    "ConfigurationError",
    "ConstellationShell",
    "DensityRecord",
    "DensitySummary",
    "EARTH_RADIUS_KM",
    "GroundPoint",
    "HANDHELD",
    "HANDHELD_LOSSES",
    "IsotropicPattern",
    "KA_BAND",
    "KUIPER_SHELL",
    "LatitudeRecord",
    "LossConfig",
    "MIN_VISIBLE_FOR_REPORTING",
    "S_BAND",
    "SatGeometry",
    "Scenario",
    "SeMapping",
    "SnapshotConfig",
    "SnapshotResult",
    "Terminal",
    "UsageError",
    "UserDrop",
    "UvPoint",
    "VSAT",
    "VSAT_LOSSES",
    "aperture_for_hpbw",
    "beam_gain_at",
    "brute_force_visibility",
    "build_grid",
    "capacity_density",
    "cell_area",
    "cell_edge_angle",
    "cell_edge_bracket_diagnostic",
    "cells_per_footprint",
    "cells_per_satellite",
    "cn0_dbhz",
    "cnr_db",
    "downlink_snapshot",
    "drop_users",
    "elevation_and_slant",
    "first_null_angle",
    "footprint_angle",
    "footprint_area_km2",
    "fspl_db",
    "gain_map",
    "gains_toward",
    "ground_projection",
    "latitude_sweep",
    "load_preset",
    "load_scenario",
    "pattern_gain",
    "preset_path",
    "satellite_capacity",
    "solve_hpbw",
    "spectral_efficiency",
    "summarize",
    "uplink_snapshot",
    "uv_from_angles",
    "visible_satellites",
    "visible_satellites_small_footprint",
    "vsat_gains",
]
