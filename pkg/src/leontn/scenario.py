"""Scenario files: flat INI sections describing one system under study.

A scenario bundles a band, a terminal, a constellation shell, snapshot
settings, and the spectral-efficiency figures used by the analytical
capacity chain.  Every key is optional; missing keys fall back to the
built-in S-band/handheld or Ka-band/VSAT defaults (picked by the band
name), and unknown keys or sections are rejected outright so typos
cannot silently revert a value to its default.

Shipped presets: ``s-handheld``, ``ka-vsat``, ``kuiper``.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .antenna import AperturePattern, IsotropicPattern
from .constellation import KUIPER_SHELL, CapacityInputs, ConstellationShell
from .errors import ConfigurationError
from .geometry import SatGeometry
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
)
from .snapshot import DEFAULT_DENSITIES, DEFAULT_UL_TARGET_SNR_DB, SnapshotConfig

PRESET_NAMES = ("s-handheld", "ka-vsat", "kuiper")

# Mean spectral efficiencies feeding the capacity chain, bit/s/Hz,
# matching the snapshot simulator's converged figures per band and
# direction.
DEFAULT_CAPACITY_SE = {
    "se_dl_s": 0.52,
    "se_ul_s": 0.18,
    "se_dl_ka": 0.47,
    "se_ul_ka": 0.5,
}

_BAND_KEYS = {
    "name",
    "dl_freq_hz",
    "ul_freq_hz",
    "bandwidth_hz",
    "subcarrier_spacing_hz",
    "sat_eirp_density_dbw_per_mhz",
    "sat_gt_dbk",
    "sat_hpbw_deg",
}
_TERMINAL_KEYS = {
    "kind",
    "tx_power_dbm",
    "tx_gain_dbi",
    "rx_gain_dbi",
    "gt_dbk",
    "aperture_radius_m",
}
_SHELL_KEYS = {
    "planes",
    "sats_per_plane",
    "altitude_km",
    "inclination_deg",
    "min_elevation_deg",
}
_SNAPSHOT_KEYS = {
    "center_elevation_deg",
    "densities",
    "drops",
    "ul_target_snr_db",
    "seed",
    "stats_cells",
}
_SE_KEYS = {"attenuation_factor", "max_se_bps_hz", "min_sinr_db"}
_LOSS_KEYS = {"excess_loss_db", "atmospheric_loss_db", "shadowing_sigma_db"}
_CAPACITY_KEYS = set(DEFAULT_CAPACITY_SE)
_SECTIONS = {
    "band": _BAND_KEYS,
    "terminal": _TERMINAL_KEYS,
    "shell": _SHELL_KEYS,
    "snapshot": _SNAPSHOT_KEYS,
    "se": _SE_KEYS,
    "losses": _LOSS_KEYS,
    "capacity": _CAPACITY_KEYS,
}


@dataclass(frozen=True)
class CapacitySe:
    """Per band and direction mean spectral efficiency, bit/s/Hz."""

    dl_s: float
    ul_s: float
    dl_ka: float
    ul_ka: float


@dataclass(frozen=True)
class Scenario:
    """A fully resolved system description."""

    band: BandSystem
    terminal: Terminal
    shell: ConstellationShell
    se_map: SeMapping
    losses: LossConfig
    capacity_se: CapacitySe
    center_elevation_rad: float
    densities: tuple[float, ...]
    drops: int
    ul_target_snr_db: float
    seed: int
    stats_cells: int

    @property
    def geometry(self) -> SatGeometry:
        return self.shell.sat_geometry

    def snapshot_config(
        self,
        seed: int | None = None,
        densities: tuple[float, ...] | None = None,
        drops: int | None = None,
    ) -> SnapshotConfig:
        """Build the snapshot configuration, with optional overrides."""
        return SnapshotConfig(
            band=self.band,
            terminal=self.terminal,
            geom=self.geometry,
            center_elevation_rad=self.center_elevation_rad,
            densities=self.densities if densities is None else tuple(densities),
            drops=self.drops if drops is None else drops,
            se_map=self.se_map,
            losses=self.losses,
            ul_target_snr_db=self.ul_target_snr_db,
            seed=self.seed if seed is None else seed,
            stats_cells=self.stats_cells,
        )

    def capacity_inputs(self, band_name: str, direction: str) -> CapacityInputs:
        """Analytical capacity factors for one band and link direction."""
        key = f"{direction.lower()}_{band_name.lower()}"
        se = getattr(self.capacity_se, key, None)
        if se is None:
            raise ConfigurationError(f"no capacity SE for {band_name} {direction}")
        band = S_BAND if band_name.lower() == "s" else KA_BAND
        return CapacityInputs(bandwidth_hz=band.bandwidth_hz, mean_se_bps_hz=se)


def preset_path(name: str) -> Path:
    """Filesystem path of a shipped preset."""
    if name not in PRESET_NAMES:
        raise ConfigurationError(
            f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}"
        )
    return Path(str(resources.files("leontn") / "presets" / f"{name}.ini"))


def load_scenario(source: str | Path) -> Scenario:
    """Parse and validate a scenario file.

    Raises
    ------
    ConfigurationError
        On unreadable files, unknown sections or keys, malformed
        values, or values the domain types reject.
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(source, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigurationError(f"cannot read scenario: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigurationError(f"malformed scenario: {exc}") from exc
    for section in parser.sections():
        if section not in _SECTIONS:
            raise ConfigurationError(f"unknown scenario section [{section}]")
        unknown = set(parser[section]) - _SECTIONS[section]
        if unknown:
            raise ConfigurationError(
                f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}"
            )
    if parser.defaults():
        raise ConfigurationError("scenario must not use a DEFAULT section")
    try:
        return _resolve(parser)
    except (ValueError, TypeError) as exc:
        raise ConfigurationError(f"invalid scenario value: {exc}") from exc


def load_preset(name: str) -> Scenario:
    return load_scenario(preset_path(name))


def _section(parser: configparser.ConfigParser, name: str) -> dict[str, str]:
    return dict(parser[name]) if parser.has_section(name) else {}


def _value(raw: dict[str, str], key: str, default: float) -> float:
    if key not in raw:
        return default
    try:
        return float(raw[key])
    except ValueError:
        raise ConfigurationError(f"key {key} is not a number: {raw[key]!r}")


def _int_value(raw: dict[str, str], key: str, default: int) -> int:
    if key not in raw:
        return default
    try:
        return int(raw[key])
    except ValueError:
        raise ConfigurationError(f"key {key} is not an integer: {raw[key]!r}")


def _densities_value(raw: dict[str, str], default: tuple[float, ...]):
    if "densities" not in raw:
        return default
    try:
        values = tuple(float(tok) for tok in raw["densities"].split(",") if tok.strip())
    except ValueError:
        raise ConfigurationError(f"bad densities list: {raw['densities']!r}")
    if not values:
        raise ConfigurationError("densities list is empty")
    return values


def _resolve(parser: configparser.ConfigParser) -> Scenario:
    raw_band = _section(parser, "band")
    band_name = raw_band.get("name", "S").strip()
    if band_name.lower() not in ("s", "ka"):
        raise ConfigurationError(f"unknown band name {band_name!r} (S or Ka)")
    base_band = S_BAND if band_name.lower() == "s" else KA_BAND
    band = BandSystem(
        name=base_band.name,
        dl_freq_hz=_value(raw_band, "dl_freq_hz", base_band.dl_freq_hz),
        ul_freq_hz=_value(raw_band, "ul_freq_hz", base_band.ul_freq_hz),
        bandwidth_hz=_value(raw_band, "bandwidth_hz", base_band.bandwidth_hz),
        subcarrier_spacing_hz=_value(
            raw_band, "subcarrier_spacing_hz", base_band.subcarrier_spacing_hz
        ),
        sat_eirp_density_dbw_per_mhz=_value(
            raw_band,
            "sat_eirp_density_dbw_per_mhz",
            base_band.sat_eirp_density_dbw_per_mhz,
        ),
        sat_gt_dbk=_value(raw_band, "sat_gt_dbk", base_band.sat_gt_dbk),
        sat_hpbw_rad=math.radians(
            _value(raw_band, "sat_hpbw_deg", math.degrees(base_band.sat_hpbw_rad))
        ),
    )

    raw_term = _section(parser, "terminal")
    base_term = HANDHELD if base_band is S_BAND else VSAT
    kind = raw_term.get("kind", base_term.kind).strip().lower()
    if kind not in ("handheld", "vsat"):
        raise ConfigurationError(f"unknown terminal kind {kind!r}")
    if kind != base_term.kind:
        base_term = HANDHELD if kind == "handheld" else VSAT
    rx_gain = _value(raw_term, "rx_gain_dbi", base_term.rx_gain_dbi)
    if kind == "vsat":
        radius = _value(raw_term, "aperture_radius_m", 0.30)
        rx_pattern = AperturePattern(radius, band.dl_freq_hz, rx_gain)
    else:
        if "aperture_radius_m" in raw_term:
            raise ConfigurationError("aperture_radius_m applies to VSAT terminals")
        rx_pattern = IsotropicPattern(rx_gain)
    terminal = Terminal(
        kind=kind,
        tx_power_dbm=_value(raw_term, "tx_power_dbm", base_term.tx_power_dbm),
        tx_gain_dbi=_value(raw_term, "tx_gain_dbi", base_term.tx_gain_dbi),
        rx_gain_dbi=rx_gain,
        gt_dbk=_value(raw_term, "gt_dbk", base_term.gt_dbk),
        rx_pattern=rx_pattern,
    )

    raw_shell = _section(parser, "shell")
    shell = ConstellationShell(
        planes=_int_value(raw_shell, "planes", KUIPER_SHELL.planes),
        sats_per_plane=_int_value(
            raw_shell, "sats_per_plane", KUIPER_SHELL.sats_per_plane
        ),
        altitude_km=_value(raw_shell, "altitude_km", KUIPER_SHELL.altitude_km),
        inclination_rad=math.radians(
            _value(
                raw_shell,
                "inclination_deg",
                math.degrees(KUIPER_SHELL.inclination_rad),
            )
        ),
        min_elevation_rad=math.radians(
            _value(
                raw_shell,
                "min_elevation_deg",
                math.degrees(KUIPER_SHELL.min_elevation_rad),
            )
        ),
    )

    raw_se = _section(parser, "se")
    se_map = SeMapping(
        attenuation_factor=_value(raw_se, "attenuation_factor", 0.8),
        max_se_bps_hz=_value(raw_se, "max_se_bps_hz", 5.5),
        min_sinr_db=_value(raw_se, "min_sinr_db", -10.0),
    )

    raw_losses = _section(parser, "losses")
    base_losses = HANDHELD_LOSSES if kind == "handheld" else VSAT_LOSSES
    losses = LossConfig(
        excess_loss_db=_value(raw_losses, "excess_loss_db", base_losses.excess_loss_db),
        atmospheric_loss_db=_value(
            raw_losses, "atmospheric_loss_db", base_losses.atmospheric_loss_db
        ),
        shadowing_sigma_db=_value(
            raw_losses, "shadowing_sigma_db", base_losses.shadowing_sigma_db
        ),
    )

    raw_cap = _section(parser, "capacity")
    capacity_se = CapacitySe(
        dl_s=_value(raw_cap, "se_dl_s", DEFAULT_CAPACITY_SE["se_dl_s"]),
        ul_s=_value(raw_cap, "se_ul_s", DEFAULT_CAPACITY_SE["se_ul_s"]),
        dl_ka=_value(raw_cap, "se_dl_ka", DEFAULT_CAPACITY_SE["se_dl_ka"]),
        ul_ka=_value(raw_cap, "se_ul_ka", DEFAULT_CAPACITY_SE["se_ul_ka"]),
    )

    raw_snap = _section(parser, "snapshot")
    return Scenario(
        band=band,
        terminal=terminal,
        shell=shell,
        se_map=se_map,
        losses=losses,
        capacity_se=capacity_se,
        center_elevation_rad=math.radians(
            _value(raw_snap, "center_elevation_deg", 90.0)
        ),
        densities=_densities_value(raw_snap, DEFAULT_DENSITIES),
        drops=_int_value(raw_snap, "drops", 50),
        ul_target_snr_db=_value(
            raw_snap, "ul_target_snr_db", DEFAULT_UL_TARGET_SNR_DB
        ),
        seed=_int_value(raw_snap, "seed", 0),
        stats_cells=_int_value(raw_snap, "stats_cells", 7),
    )
