"""Tests for scenario files and the shipped presets."""

import math

import pytest
from numpy.testing import assert_allclose

from leontn.antenna import AperturePattern, IsotropicPattern
from leontn.constellation import KUIPER_SHELL
from leontn.errors import ConfigurationError
from leontn.link import KA_BAND, S_BAND
from leontn.scenario import (
    DEFAULT_CAPACITY_SE,
    PRESET_NAMES,
    load_preset,
    load_scenario,
    preset_path,
)
from leontn.snapshot import DEFAULT_DENSITIES, DEFAULT_UL_TARGET_SNR_DB


def test_presets_exist_and_load():
    for name in PRESET_NAMES:
        assert preset_path(name).is_file()
        load_preset(name)
    with pytest.raises(ConfigurationError):
        preset_path("nonexistent")


def test_s_handheld_preset_matches_builtins():
    sc = load_preset("s-handheld")
    assert sc.band.name == "S"
    assert sc.band.dl_freq_hz == S_BAND.dl_freq_hz
    assert sc.band.bandwidth_hz == S_BAND.bandwidth_hz
    assert sc.band.sat_eirp_density_dbw_per_mhz == 34.0
    assert_allclose(sc.band.sat_hpbw_rad, S_BAND.sat_hpbw_rad, rtol=1e-12)
    assert sc.terminal.kind == "handheld"
    assert sc.terminal.tx_power_dbm == 23.0
    assert sc.terminal.gt_dbk == -31.6
    assert isinstance(sc.terminal.rx_pattern, IsotropicPattern)
    assert sc.shell == KUIPER_SHELL
    assert sc.losses.excess_loss_db == 3.0
    assert sc.losses.atmospheric_loss_db == 0.0
    assert sc.densities == DEFAULT_DENSITIES
    assert sc.drops == 50
    assert sc.ul_target_snr_db == DEFAULT_UL_TARGET_SNR_DB
    assert sc.seed == 0
    assert sc.stats_cells == 7
    assert sc.center_elevation_rad == math.pi / 2


def test_ka_vsat_preset():
    sc = load_preset("ka-vsat")
    assert sc.band.name == "Ka"
    assert sc.band.ul_freq_hz == 30.0e9
    assert sc.band.bandwidth_hz == 400.0e6
    assert sc.terminal.kind == "vsat"
    assert sc.terminal.gt_dbk == 15.9
    assert isinstance(sc.terminal.rx_pattern, AperturePattern)
    assert sc.terminal.rx_pattern.aperture_radius_m == 0.30
    assert sc.losses.atmospheric_loss_db == 1.0
    assert sc.losses.excess_loss_db == 0.0


def test_kuiper_preset_fills_defaults():
    sc = load_preset("kuiper")
    assert sc.shell == KUIPER_SHELL
    # the preset file pins only the shell and capacity figures; the rest
    # resolves to the S-band handheld defaults
    assert sc.band.name == "S"
    assert sc.terminal.kind == "handheld"
    assert sc.capacity_se.dl_s == DEFAULT_CAPACITY_SE["se_dl_s"]
    assert sc.capacity_se.ul_ka == DEFAULT_CAPACITY_SE["se_ul_ka"]


def test_empty_scenario_resolves_to_defaults(tmp_path):
    path = tmp_path / "empty.ini"
    path.write_text("", encoding="utf-8")
    sc = load_scenario(path)
    assert sc.band.name == "S"
    assert sc.terminal.kind == "handheld"
    assert sc.shell == KUIPER_SHELL
    assert sc.densities == DEFAULT_DENSITIES


def test_band_name_switches_terminal_defaults(tmp_path):
    path = tmp_path / "ka.ini"
    path.write_text("[band]\nname = Ka\n", encoding="utf-8")
    sc = load_scenario(path)
    assert sc.band.name == "Ka"
    assert sc.terminal.kind == "vsat"
    assert sc.losses.atmospheric_loss_db == 1.0
    assert sc.terminal.rx_pattern.carrier_freq_hz == KA_BAND.dl_freq_hz


def test_partial_overrides(tmp_path):
    path = tmp_path / "custom.ini"
    path.write_text(
        "[band]\nname = S\nsat_hpbw_deg = 3.0\n"
        "[shell]\naltitude_km = 550\n"
        "[snapshot]\ndensities = 1, 2\ndrops = 7\nseed = 42\n"
        "[se]\nmax_se_bps_hz = 4.0\n",
        encoding="utf-8",
    )
    sc = load_scenario(path)
    assert_allclose(math.degrees(sc.band.sat_hpbw_rad), 3.0, rtol=1e-12)
    assert sc.band.bandwidth_hz == 30.0e6  # untouched keys keep defaults
    assert sc.shell.altitude_km == 550.0
    assert sc.shell.planes == 80
    assert sc.densities == (1.0, 2.0)
    assert sc.drops == 7
    assert sc.seed == 42
    assert sc.se_map.max_se_bps_hz == 4.0
    cfg = sc.snapshot_config()
    assert cfg.seed == 42
    assert cfg.densities == (1.0, 2.0)
    cfg = sc.snapshot_config(seed=1, densities=(5.0,), drops=2)
    assert cfg.seed == 1 and cfg.densities == (5.0,) and cfg.drops == 2


def test_capacity_inputs_resolution():
    sc = load_preset("kuiper")
    inp = sc.capacity_inputs("s", "dl")
    assert inp.bandwidth_hz == 30.0e6
    assert inp.mean_se_bps_hz == DEFAULT_CAPACITY_SE["se_dl_s"]
    inp = sc.capacity_inputs("Ka", "UL")
    assert inp.bandwidth_hz == 400.0e6
    assert inp.mean_se_bps_hz == DEFAULT_CAPACITY_SE["se_ul_ka"]
    with pytest.raises(ConfigurationError):
        sc.capacity_inputs("s", "sideways")


def _expect_config_error(tmp_path, text):
    path = tmp_path / "bad.ini"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_scenario(path)


def test_rejections(tmp_path):
    with pytest.raises(ConfigurationError):
        load_scenario(tmp_path / "missing.ini")
    _expect_config_error(tmp_path, "[orbit]\naltitude_km = 600\n")
    _expect_config_error(tmp_path, "[band]\nnme = S\n")  # typo key
    _expect_config_error(tmp_path, "[DEFAULT]\nseed = 1\n")
    _expect_config_error(tmp_path, "[band]\nname = X\n")
    _expect_config_error(tmp_path, "[band]\nbandwidth_hz = wide\n")
    _expect_config_error(tmp_path, "[terminal]\nkind = laptop\n")
    _expect_config_error(tmp_path, "[terminal]\naperture_radius_m = 0.3\n")
    _expect_config_error(tmp_path, "[snapshot]\ndensities = ,\n")
    _expect_config_error(tmp_path, "[snapshot]\ndensities = 1, fast\n")
    _expect_config_error(tmp_path, "[snapshot]\ndrops = 2.5\n")
    _expect_config_error(tmp_path, "no section header")
    # domain rejections surface as configuration errors too
    _expect_config_error(tmp_path, "[band]\nsat_hpbw_deg = -1\n")
    _expect_config_error(tmp_path, "[shell]\nplanes = 0\n")
    _expect_config_error(tmp_path, "[shell]\ninclination_deg = 120\n")
