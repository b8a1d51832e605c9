"""Link budgets and the SINR to spectral-efficiency mapping.

Budgets are kept in dB form until the last moment.  The noise reference
is the Boltzmann constant at -228.6 dBW/K/Hz, so a budget closes as

    CNR = EIRP + G/T - FSPL - losses + 228.6 - 10 log10(B).

Spectral efficiency uses a truncated-Shannon proxy for NR link
adaptation: an attenuation factor on log2(1 + SINR), a hard cap, and an
outage floor below which a link carries nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .antenna import AperturePattern, IsotropicPattern

BOLTZMANN_DBW_PER_K_HZ = -228.6


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(linear):
    return 10.0 * np.log10(np.asarray(linear, dtype=float))


@dataclass(frozen=True)
class BandSystem:
    """RF system descriptor for one frequency band."""

    name: str
    dl_freq_hz: float
    ul_freq_hz: float
    bandwidth_hz: float
    subcarrier_spacing_hz: float
    sat_eirp_density_dbw_per_mhz: float
    sat_gt_dbk: float
    sat_hpbw_rad: float

    def __post_init__(self):
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth must be positive")
        if self.sat_hpbw_rad <= 0:
            raise ValueError("beamwidth must be positive")

    @property
    def sat_eirp_dbw(self) -> float:
        """Total per-beam EIRP over the full bandwidth, dBW."""
        return self.sat_eirp_density_dbw_per_mhz + 10.0 * math.log10(
            self.bandwidth_hz / 1e6
        )


@dataclass(frozen=True)
class Terminal:
    """User terminal descriptor: handheld or VSAT."""

    kind: str
    tx_power_dbm: float
    tx_gain_dbi: float
    rx_gain_dbi: float
    gt_dbk: float
    rx_pattern: IsotropicPattern | AperturePattern

    @property
    def tx_eirp_dbw(self) -> float:
        return self.tx_power_dbm - 30.0 + self.tx_gain_dbi


@dataclass(frozen=True)
class SeMapping:
    """Truncated-Shannon spectral-efficiency mapping."""

    attenuation_factor: float = 0.8
    max_se_bps_hz: float = 5.5
    min_sinr_db: float = -10.0

    def __post_init__(self):
        if not 0 < self.attenuation_factor <= 1:
            raise ValueError("attenuation factor must lie in (0, 1]")
        if self.max_se_bps_hz <= 0:
            raise ValueError("spectral-efficiency cap must be positive")


@dataclass(frozen=True)
class LossConfig:
    """Fixed calibration losses applied on top of free-space loss.

    ``excess_loss_db`` is a polarization/implementation margin,
    ``atmospheric_loss_db`` a flat absorption margin, and shadowing an
    optional lognormal term drawn per user and applied identically to
    the desired and interfering links (all beams of one satellite share
    the propagation path).
    """

    excess_loss_db: float = 0.0
    atmospheric_loss_db: float = 0.0
    shadowing_sigma_db: float = 0.0

    @property
    def total_fixed_db(self) -> float:
        return self.excess_loss_db + self.atmospheric_loss_db


def fspl_db(freq_hz: float, slant_range_km: float) -> float:
    """Free-space path loss, dB."""
    if freq_hz <= 0 or slant_range_km <= 0:
        raise ValueError("frequency and distance must be positive")
    wavelength_m = 299_792_458.0 / freq_hz
    return 20.0 * math.log10(4.0 * math.pi * slant_range_km * 1e3 / wavelength_m)


def cnr_db(
    eirp_dbw: float,
    gt_dbk: float,
    fspl_db_value: float,
    excess_loss_db: float,
    bandwidth_hz: float,
) -> float:
    """Carrier-to-noise ratio of a single link over a bandwidth, dB."""
    if bandwidth_hz <= 0:
        raise ValueError("bandwidth must be positive")
    return (
        cn0_dbhz(eirp_dbw, gt_dbk, fspl_db_value, excess_loss_db)
        - 10.0 * math.log10(bandwidth_hz)
    )


def cn0_dbhz(
    eirp_dbw: float, gt_dbk: float, fspl_db_value: float, excess_loss_db: float
) -> float:
    """Carrier-to-noise-density ratio, dB-Hz; the bandwidth-free budget."""
    return eirp_dbw + gt_dbk - fspl_db_value - excess_loss_db - BOLTZMANN_DBW_PER_K_HZ


def spectral_efficiency(sinr_db, m: SeMapping = SeMapping()):
    """Spectral efficiency in bit/s/Hz for a given SINR.

    Zero below the outage floor, otherwise attenuated Shannon capacity
    clipped at the cap.  Accepts scalars or arrays.
    """
    sinr = np.asarray(sinr_db, dtype=float)
    se = m.attenuation_factor * np.log2(1.0 + db_to_linear(sinr))
    se = np.minimum(se, m.max_se_bps_hz)
    se = np.where(sinr < m.min_sinr_db, 0.0, se)
    if np.ndim(sinr_db) == 0:
        return float(se)
    return se


def _s_band() -> BandSystem:
    return BandSystem(
        name="S",
        dl_freq_hz=2.0e9,
        ul_freq_hz=2.0e9,
        bandwidth_hz=30.0e6,
        subcarrier_spacing_hz=15.0e3,
        sat_eirp_density_dbw_per_mhz=34.0,
        sat_gt_dbk=1.1,
        sat_hpbw_rad=math.radians(4.41),
    )


def _ka_band() -> BandSystem:
    return BandSystem(
        name="Ka",
        dl_freq_hz=20.0e9,
        ul_freq_hz=30.0e9,
        bandwidth_hz=400.0e6,
        subcarrier_spacing_hz=60.0e3,
        sat_eirp_density_dbw_per_mhz=4.0,
        sat_gt_dbk=13.0,
        sat_hpbw_rad=math.radians(1.76),
    )


S_BAND = _s_band()
KA_BAND = _ka_band()

HANDHELD = Terminal(
    kind="handheld",
    tx_power_dbm=23.0,
    tx_gain_dbi=0.0,
    rx_gain_dbi=0.0,
    gt_dbk=-31.6,
    rx_pattern=IsotropicPattern(0.0),
)

VSAT = Terminal(
    kind="vsat",
    tx_power_dbm=33.0,
    tx_gain_dbi=43.2,
    rx_gain_dbi=39.7,
    gt_dbk=15.9,
    rx_pattern=AperturePattern(0.30, 20.0e9, 39.7),
)

# Default fixed margins per terminal kind: the handheld margin absorbs
# polarization mismatch of the linear elements, the VSAT sees a flat
# atmospheric margin at Ka band instead.
HANDHELD_LOSSES = LossConfig(excess_loss_db=3.0, atmospheric_loss_db=0.0)
VSAT_LOSSES = LossConfig(excess_loss_db=0.0, atmospheric_loss_db=1.0)
