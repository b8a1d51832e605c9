"""Result emission: delimited files, written atomically, plus figures.

Every writer lands the finished bytes with a rename so a failed run
never leaves a partial file, and serializes numbers with nine
significant digits so repeated runs are byte-identical.  Figures are
rendered headlessly next to the delimited output; they are a
convenience view of the same rows, never an extra data source.
"""

from __future__ import annotations

import csv
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .constellation import CapacityProfile
from .snapshot import DensitySummary

SNAPSHOT_HEADER = (
    "density",
    "sinr_p05_db",
    "sinr_p50_db",
    "sinr_p95_db",
    "mean_user_tput_bps",
    "mean_cell_tput_bps",
    "mean_se_bps_hz",
)
SWEEP_HEADER = (
    "lat_deg",
    "n_visible",
    "cells_per_sat_s",
    "cells_per_sat_ka",
    "dens_dl_s",
    "dens_ul_s",
    "dens_dl_ka",
    "dens_ul_ka",
)
ANTENNA_HEADER = ("theta_deg", "gain_db")
GAIN_MAP_HEADER = ("lat", "lon", "beam_index", "normalized_gain_db")


def format_number(value) -> str:
    """Serialize one cell: integers verbatim, floats to 9 significant digits."""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    number = float(value)
    if number == 0.0:
        number = 0.0  # collapse negative zero
    return f"{number:.9g}"


def write_csv(path, header, rows) -> None:
    """Write a CSV atomically: temp file in the target directory, then rename."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_number(value) for value in row])
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_figure(fig, path) -> None:
    """Render a figure to PNG with the same atomic discipline as the CSVs."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{target.name}.", suffix=".tmp")
    os.close(fd)
    try:
        fig.savefig(tmp, format="png", dpi=150, bbox_inches="tight")
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    finally:
        _pyplot().close(fig)


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def snapshot_rows(summaries: list[DensitySummary]) -> list[tuple]:
    return [
        (
            s.mean_users_per_cell,
            s.sinr_p05_db,
            s.sinr_p50_db,
            s.sinr_p95_db,
            s.mean_user_throughput_bps,
            s.mean_cell_throughput_bps,
            s.mean_spectral_efficiency_bps_hz,
        )
        for s in summaries
    ]


def sweep_rows(
    profile_s_dl_ul: CapacityProfile, profile_ka_dl_ul: CapacityProfile
) -> list[tuple]:
    """Merge the per-band latitude profiles into the combined schema."""
    rows = []
    for rec_s, rec_ka in zip(
        profile_s_dl_ul.records, profile_ka_dl_ul.records, strict=True
    ):
        if abs(rec_s.latitude_rad - rec_ka.latitude_rad) > 1e-12:
            raise ValueError("latitude grids of the band profiles differ")
        rows.append(
            (
                math.degrees(rec_s.latitude_rad),
                rec_s.n_visible,
                rec_s.cells_per_satellite,
                rec_ka.cells_per_satellite,
                rec_s.density_dl_bps_km2,
                rec_s.density_ul_bps_km2,
                rec_ka.density_dl_bps_km2,
                rec_ka.density_ul_bps_km2,
            )
        )
    return rows


def antenna_figure(theta_deg: np.ndarray, gain_db: np.ndarray, label: str):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(theta_deg, gain_db)
    ax.axhline(-3.0, color="gray", linestyle=":", linewidth=1.0)
    ax.set_xlabel("off-boresight angle, deg")
    ax.set_ylabel("normalized gain, dB")
    ax.set_title(f"{label} beam pattern")
    ax.set_ylim(bottom=max(-60.0, float(np.min(gain_db)) - 3.0))
    ax.grid(True, alpha=0.3)
    return fig


def snapshot_figure(summaries: list[DensitySummary], label: str):
    """SINR distributions per density plus throughput-versus-density trends."""
    plt = _pyplot()
    fig, (ax_cdf, ax_tput) = plt.subplots(1, 2, figsize=(11.0, 4.2))
    for s in summaries:
        ax_cdf.plot(
            s.sinr_cdf.values,
            s.sinr_cdf.cumulative,
            label=f"{s.mean_users_per_cell:g}/cell",
        )
    ax_cdf.set_xlabel("SINR, dB")
    ax_cdf.set_ylabel("CDF")
    ax_cdf.set_title(f"{label}: SINR distribution")
    ax_cdf.grid(True, alpha=0.3)
    ax_cdf.legend(fontsize=8)
    densities = [s.mean_users_per_cell for s in summaries]
    ax_tput.semilogx(
        densities,
        [s.mean_cell_throughput_bps / 1e6 for s in summaries],
        marker="o",
        label="mean cell",
    )
    ax_tput.semilogx(
        densities,
        [s.mean_user_throughput_bps / 1e6 for s in summaries],
        marker="s",
        label="mean user",
    )
    ax_tput.set_xlabel("mean users per cell")
    ax_tput.set_ylabel("throughput, Mbit/s")
    ax_tput.set_title(f"{label}: throughput vs density")
    ax_tput.grid(True, which="both", alpha=0.3)
    ax_tput.legend(fontsize=8)
    fig.tight_layout()
    return fig


def sweep_figure(rows: list[tuple]):
    """Visible count and capacity densities over latitude."""
    plt = _pyplot()
    data = np.asarray(rows, dtype=float)
    lat = data[:, 0]
    fig, (ax_vis, ax_dens) = plt.subplots(
        2, 1, figsize=(7.0, 6.5), sharex=True, height_ratios=[1.0, 1.6]
    )
    ax_vis.plot(lat, data[:, 1], color="black")
    ax_vis.set_ylabel("visible satellites")
    ax_vis.grid(True, alpha=0.3)
    labels = ("S down", "S up", "Ka down", "Ka up")
    for column, label in zip(range(4, 8), labels):
        ax_dens.plot(lat, data[:, column] / 1e3, label=label)
    ax_dens.set_xlabel("latitude, deg")
    ax_dens.set_ylabel("capacity density, kbit/s/km$^2$")
    ax_dens.grid(True, alpha=0.3)
    ax_dens.legend(fontsize=8)
    fig.tight_layout()
    return fig


def gain_map_figure(rows: list[tuple]):
    """Strongest-beam partition of the ground, colored by beam index."""
    plt = _pyplot()
    data = np.asarray(rows, dtype=float)
    fig, ax = plt.subplots(figsize=(6.5, 5.5))
    scatter = ax.scatter(
        data[:, 1], data[:, 0], c=data[:, 2], s=4.0, cmap="tab20", marker="s"
    )
    ax.set_xlabel("longitude, deg")
    ax.set_ylabel("latitude, deg")
    ax.set_title("serving-beam map")
    fig.colorbar(scatter, ax=ax, label="beam index")
    ax.set_aspect("equal", adjustable="datalim")
    return fig
