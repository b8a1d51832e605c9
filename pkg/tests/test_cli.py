"""End-to-end tests of the command-line interface.

All invocations go through ``main(argv)`` in-process; one smoke test
runs the installed module form.  Exit codes: 0 success, 1 usage,
2 configuration, 3 numeric/domain.
"""

import subprocess
import sys

import pytest

from leontn.cli import main
from leontn.report import SNAPSHOT_HEADER, SWEEP_HEADER


def _lines(path):
    return path.read_text(encoding="utf-8").strip().splitlines()


def test_antenna_command(tmp_path):
    out = tmp_path / "antenna.csv"
    assert main(["antenna", "--out", str(out), "--no-plot"]) == 0
    lines = _lines(out)
    assert lines[0] == "theta_deg,gain_db"
    assert len(lines) == 1 + 1001  # 0..10 deg at 0.01 deg steps
    assert lines[1] == "0,0"  # boresight row: unity gain
    # seeded-free analytics rerun byte-identically
    before = out.read_bytes()
    assert main(["antenna", "--out", str(out), "--no-plot"]) == 0
    assert out.read_bytes() == before
    assert not (tmp_path / "antenna.png").exists()


def test_antenna_figure_written(tmp_path):
    out = tmp_path / "pattern.csv"
    assert main([
        "antenna", "--theta-max-deg", "2", "--step-deg", "0.5",
        "--out", str(out),
    ]) == 0
    assert len(_lines(out)) == 1 + 5
    png = (tmp_path / "pattern.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_capacity_command(tmp_path):
    out = tmp_path / "capacity.csv"
    assert main([
        "capacity", "--step-deg", "5", "--out", str(out), "--no-plot",
    ]) == 0
    lines = _lines(out)
    assert lines[0] == ",".join(SWEEP_HEADER)
    # 0..60 deg inclusive: the sweep runs one step past the cutoff
    assert len(lines) == 1 + 13
    last = lines[-1].split(",")
    assert float(last[0]) == 60.0
    assert float(last[1]) == 0.0  # beyond coverage
    assert float(last[4]) == 0.0
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) > 8.0


def test_snapshot_command(tmp_path):
    out = tmp_path / "dl.csv"
    argv = [
        "snapshot", "dl", "--densities", "0.5,2", "--drops", "3",
        "--seed", "0", "--out", str(out), "--no-plot",
    ]
    assert main(argv) == 0
    lines = _lines(out)
    assert lines[0] == ",".join(SNAPSHOT_HEADER)
    assert len(lines) == 1 + 2
    before = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == before
    # a different seed must change the samples
    assert main([
        "snapshot", "dl", "--densities", "0.5,2", "--drops", "3",
        "--seed", "1", "--out", str(out), "--no-plot",
    ]) == 0
    assert out.read_bytes() != before


def test_snapshot_uplink_command(tmp_path):
    out = tmp_path / "ul.csv"
    assert main([
        "snapshot", "ul", "--preset", "s-handheld", "--densities", "1,5",
        "--drops", "3", "--out", str(out), "--no-plot",
    ]) == 0
    assert len(_lines(out)) == 1 + 2


def test_visible_command(tmp_path, capsys):
    out = tmp_path / "visible.csv"
    assert main([
        "visible", "25", "--oracle", "--samples", "2000", "--seed", "3",
        "--out", str(out),
    ]) == 0
    captured = capsys.readouterr()
    assert "visible satellites at 25 deg" in captured.out
    assert "orbit-counting oracle" in captured.out
    lines = _lines(out)
    assert lines[0] == "lat_deg,n_visible,n_visible_oracle,relative_gap"
    assert len(lines) == 2
    row = lines[1].split(",")
    assert float(row[1]) == pytest.approx(10.397, abs=0.01)
    assert float(row[3]) < 0.2


def test_beammap_command(tmp_path):
    out = tmp_path / "beammap.csv"
    assert main([
        "beammap", "--step-deg", "0.1", "--out", str(out), "--no-plot",
    ]) == 0
    lines = _lines(out)
    assert lines[0] == "lat,lon,beam_index,normalized_gain_db"
    assert len(lines) > 100


def test_usage_errors(tmp_path):
    assert main([]) == 1
    assert main(["unknown-command"]) == 1
    assert main(["antenna", "--bogus-flag"]) == 1
    assert main(["antenna", "--step-deg", "0", "--no-plot"]) == 1
    assert main(["antenna", "--theta-max-deg", "91", "--no-plot"]) == 1
    assert main(["snapshot", "sideways"]) == 1
    assert main(["snapshot", "dl", "--densities", "1,-2"]) == 1
    assert main(["visible", "200"]) == 1
    assert main([
        "antenna",
        "--scenario", str(tmp_path / "a.ini"),
        "--preset", "s-handheld",
    ]) == 1


def test_configuration_errors(tmp_path):
    assert main(["antenna", "--scenario", str(tmp_path / "missing.ini")]) == 2
    bad = tmp_path / "bad.ini"
    bad.write_text("[band]\nnme = S\n", encoding="utf-8")
    assert main(["antenna", "--scenario", str(bad), "--no-plot"]) == 2


def test_domain_errors(tmp_path):
    assert main(["visible", "0", "--oracle", "--samples", "0"]) == 3
    # a beamwidth too wide for the lattice fails in the geometry domain
    wide = tmp_path / "wide.ini"
    wide.write_text("[band]\nsat_hpbw_deg = 170\n", encoding="utf-8")
    out = tmp_path / "x.csv"
    assert main([
        "snapshot", "dl", "--scenario", str(wide), "--drops", "1",
        "--out", str(out), "--no-plot",
    ]) == 3


def test_module_entry_point(tmp_path):
    out = tmp_path / "antenna.csv"
    proc = subprocess.run(
        [
            sys.executable, "-m", "leontn.cli",
            "antenna", "--theta-max-deg", "1", "--step-deg", "0.5",
            "--out", str(out), "--no-plot",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "wrote" in proc.stdout
    assert out.is_file()
