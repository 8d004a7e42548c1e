"""CLI round-trip tests: CSV format, determinism, config handling, plots."""

import csv
import json
from pathlib import Path

import pytest

from wideband_simo.cli import main


def run_cli(args):
    return main(args)


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


@pytest.fixture
def small_probe(tmp_path):
    out = tmp_path / "probe.csv"
    code = run_cli(
        ["probe", "--seed", "7", "--trials", "20000", "--out", str(out),
         "--config", _cfg(tmp_path, "n_list = 64, 256, 1024\nt = 0.3\n")]
    )
    assert code == 0
    return out


def _cfg(tmp_path, text, name="cfg.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_capacity_point_roundtrip(tmp_path):
    out = tmp_path / "cap.csv"
    code = run_cli(["capacity-point", "--seed", "3", "--trials", "5000", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 1
    assert float(rows[0]["genie_rate_bps"]) > 0
    assert float(rows[0]["pilot_rate_bps"]) <= float(rows[0]["genie_rate_bps"])
    meta = json.loads(Path(str(out) + ".meta.json").read_text())
    assert meta["seed"] == 3
    assert meta["command"] == "capacity-point"


def test_csv_float_format(tmp_path):
    out = tmp_path / "cap.csv"
    run_cli(["capacity-point", "--seed", "3", "--trials", "1000", "--out", str(out)])
    body = out.read_text().splitlines()
    value = body[1].split(",")[2]  # genie_rate_bps
    mantissa, exp = value.split("e")
    assert len(mantissa.split(".")[1]) == 11
    assert "E" not in value


def test_csv_no_timestamp_and_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(["capacity-point", "--seed", "5", "--trials", "2000", "--out", str(a)])
    run_cli(["capacity-point", "--seed", "5", "--trials", "2000", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_ber_sweep_thread_invariance(tmp_path):
    cfg = _cfg(tmp_path, "n_list = 16, 64\nepsilon_list = 0.25\nn_bits = 2000\n")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(["ber-sweep", "--seed", "9", "--out", str(a), "--config", cfg]) == 0
    assert run_cli(["ber-sweep", "--seed", "9", "--out", str(b), "--config", cfg,
                    "--threads", "4"]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = read_csv(a)
    assert [int(r["N"]) for r in rows] == [16, 64]


def test_rate_sweep_columns(tmp_path):
    cfg = _cfg(tmp_path, "n_list = 64, 256\nepsilon_list = 0.25, 0.75\n")
    out = tmp_path / "rate.csv"
    assert run_cli(["rate-sweep", "--out", str(out), "--config", cfg]) == 0
    rows = read_csv(out)
    assert len(rows) == 4
    assert set(rows[0]) == {"N", "epsilon", "t", "M", "K", "rate_bits_per_block", "seed"}


def test_threshold_small_run_and_plot(tmp_path):
    cfg = _cfg(
        tmp_path,
        "n_list = 16\nbw_min_mhz = 0.5\nbw_max_mhz = 10\nbw_step_mhz = 0.5\n",
    )
    out = tmp_path / "thr.csv"
    fig = tmp_path / "thr.png"
    code = run_cli(
        ["threshold", "--seed", "2", "--trials", "500", "--out", str(out),
         "--config", cfg, "--plot", str(fig)]
    )
    assert code == 0
    rows = read_csv(out)
    stars = [r for r in rows if r["is_threshold"] == "1"]
    assert len(stars) == 1
    assert fig.stat().st_size > 0
    # the starred bandwidth belongs to the swept grid
    grid_bws = {r["bandwidth_hz"] for r in rows if r["is_threshold"] == "0"}
    assert stars[0]["bandwidth_hz"] in grid_bws


def test_probe_sidecar_slope(small_probe):
    meta = json.loads(Path(str(small_probe) + ".meta.json").read_text())
    assert "fitted_slope" in meta
    rows = read_csv(small_probe)
    assert [int(r["N"]) for r in rows] == [64, 256, 1024]


def test_unknown_config_key_exit_2(tmp_path):
    cfg = _cfg(tmp_path, "bogus = 1\n")
    assert run_cli(["rate-sweep", "--out", str(tmp_path / "x.csv"), "--config", cfg]) == 2


def test_bad_config_value_exit_2(tmp_path):
    cfg = _cfg(tmp_path, "n_list = sixty-four\n")
    assert run_cli(["rate-sweep", "--out", str(tmp_path / "x.csv"), "--config", cfg]) == 2


def test_duplicate_config_key_exit_2(tmp_path):
    cfg = _cfg(tmp_path, "t = 0.4\nt = 0.45\n")
    assert run_cli(["rate-sweep", "--out", str(tmp_path / "x.csv"), "--config", cfg]) == 2


def test_invalid_family_exit_2(tmp_path):
    cfg = _cfg(tmp_path, "epsilon_list = 0.25\nt = 0.6\n")
    assert run_cli(["rate-sweep", "--out", str(tmp_path / "x.csv"), "--config", cfg]) == 2


def test_negative_seed_exit_2(tmp_path):
    assert run_cli(["capacity-point", "--seed", "-1", "--out", str(tmp_path / "x.csv")]) == 2


def test_unwritable_output_exit_3(tmp_path):
    assert run_cli(
        ["capacity-point", "--trials", "100",
         "--out", str(tmp_path / "no_such_dir" / "x.csv")]
    ) == 3


def test_config_comments_and_whitespace(tmp_path):
    cfg = _cfg(tmp_path, "# full-line comment\nn_list = 64  # trailing\n\nepsilon_list = 0.25\n")
    out = tmp_path / "r.csv"
    assert run_cli(["rate-sweep", "--out", str(out), "--config", cfg]) == 0
    assert len(read_csv(out)) == 1
