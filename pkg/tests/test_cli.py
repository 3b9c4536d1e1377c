import json
from pathlib import Path

import pytest

from bfokit.cli import main
from bfokit.fixtures import bundled_config_path

GOLDEN = Path(__file__).parent / "golden"
GOLDEN_FILES = [
    "adjusted_bfo_power_outage.csv",
    "adjusted_bfo_other_cause.csv",
    "descent_rates_power_outage.csv",
    "descent_rates_other_cause.csv",
    "descent_rates_combined.csv",
    "acceleration.json",
]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out.strip() else None, err


CONFIG = str(bundled_config_path())


class TestDescentBounds:
    def test_golden_tables_byte_identical(self, capsys, tmp_path):
        code, payload, _ = run_json(
            capsys, "descent-bounds", "--config", CONFIG,
            "--hypothesis", "both", "--out-dir", str(tmp_path),
        )
        assert code == 0
        for name in GOLDEN_FILES:
            assert (tmp_path / name).read_bytes() == (GOLDEN / name).read_bytes(), name

    def test_summary_payload(self, capsys):
        code, payload, _ = run_json(capsys, "descent-bounds", "--config", CONFIG)
        assert code == 0
        assert payload["combined_outer_fpm"]["2014-03-08T00:19:29Z"] == [2900.0, 14800.0]
        assert payload["combined_outer_fpm"]["2014-03-08T00:19:37Z"] == [13800.0, 25300.0]
        assert payload["acceleration"]["fpm_per_s"] == pytest.approx(1337.5)
        assert payload["acceleration"]["g"] == pytest.approx(0.68, abs=0.03)

    def test_single_hypothesis(self, capsys, tmp_path):
        code, payload, _ = run_json(
            capsys, "descent-bounds", "--config", CONFIG,
            "--hypothesis", "2", "--out-dir", str(tmp_path),
        )
        assert code == 0
        assert "combined_outer_fpm" not in payload
        assert not (tmp_path / "descent_rates_power_outage.csv").exists()
        assert (tmp_path / "descent_rates_other_cause.csv").read_bytes() == (
            GOLDEN / "descent_rates_other_cause.csv"
        ).read_bytes()

    def test_pretty_format_uses_thousands_separators(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "descent-bounds", "--config", CONFIG,
            "--out-dir", str(tmp_path), "--format", "pretty",
        )
        assert code == 0
        text = (tmp_path / "descent_rates_combined.csv").read_text()
        assert "14,800" in text and "25,300" in text

    def test_exact_sensitivity_flag(self, capsys):
        code, payload, _ = run_json(
            capsys, "descent-bounds", "--config", CONFIG, "--exact-sensitivity"
        )
        assert code == 0
        assert 1.70 <= payload["sensitivity_hz_per_100fpm"] <= 1.80
        assert payload["sensitivity_hz_per_100fpm"] != 1.7


class TestTrackSweep:
    def test_defaults_reproduce_south_minimum(self, capsys):
        code, payload, _ = run_json(capsys, "track-sweep", "--config", CONFIG)
        assert code == 0
        south = payload["curves"]["450kts"]["south_offset_hz"]
        assert south == pytest.approx(6.0, abs=2.0)

    def test_curve_csv_schema(self, capsys, tmp_path):
        code, payload, _ = run_json(
            capsys, "track-sweep", "--config", CONFIG,
            "--speed-kts", "450,500", "--out-dir", str(tmp_path),
        )
        assert code == 0
        for key in ("450kts", "500kts"):
            lines = (tmp_path / f"track_sweep_{key}.csv").read_text().splitlines()
            header = next(l for l in lines if not l.startswith("#"))
            assert header == "track_deg,bfo_error_hz"

    def test_peak_to_peak_ratio(self, capsys):
        code, payload, _ = run_json(
            capsys, "track-sweep", "--config", CONFIG, "--speed-kts", "450,500"
        )
        ratio = payload["curves"]["500kts"]["peak_to_peak_hz"] / payload["curves"]["450kts"]["peak_to_peak_hz"]
        assert 0.85 <= ratio <= 1.15


class TestTrend:
    def test_extrapolation(self, capsys):
        code, payload, _ = run_json(
            capsys, "trend", "--config", CONFIG, "--extrapolate", "00:19:29Z"
        )
        assert code == 0
        value = payload["extrapolations"]["2014-03-08T00:19:29Z"]
        assert 252.0 <= value <= 256.0

    def test_explicit_window(self, capsys):
        code, payload, _ = run_json(
            capsys, "trend", "--config", CONFIG, "--window", "19:41Z..00:11Z"
        )
        assert code == 0
        assert payload["window_utc"] == ["2014-03-07T19:41:00Z", "2014-03-08T00:11:00Z"]


class TestOtherCommands:
    def test_logon_drift(self, capsys):
        code, payload, _ = run_json(capsys, "logon-drift", "--config", CONFIG)
        assert code == 0
        assert payload == {
            "logon_minus_settled_hz": [17.0, 136.0],
            "ack_minus_settled_hz": [17.0, 130.0],
            "ack_below_logon_hz": [0.0, 6.0],
        }

    def test_calibrate_bias_recovers_config_bias(self, capsys, analysis_config):
        code, payload, _ = run_json(
            capsys, "calibrate-bias", "--config", CONFIG,
            "--tarmac-window", "15:55Z..16:15Z",
        )
        assert code == 0
        assert payload["measurements_used"] == 3
        assert payload["bias_hz"] == pytest.approx(analysis_config.bias_hz, abs=0.5)

    def test_predict_bfo_static_world(self, capsys, tmp_path):
        config = _static_world_config(tmp_path)
        code, payload, _ = run_json(
            capsys, "predict-bfo", "--config", str(config),
            "--time", "2014-03-07T12:00:00Z", "--lat", "0", "--lon", "64.5",
        )
        assert code == 0
        assert payload["predicted_bfo_hz"] == 0.0
        for key in ("uplink_doppler_hz", "downlink_doppler_hz", "aes_compensation_hz",
                    "sat_plus_afc_hz", "bias_hz"):
            assert payload[key] == 0.0

    def test_env_var_supplies_config(self, capsys, monkeypatch):
        monkeypatch.setenv("BFOKIT_CONFIG", CONFIG)
        code, payload, _ = run_json(capsys, "logon-drift")
        assert code == 0
        assert payload["ack_below_logon_hz"] == [0.0, 6.0]


class TestDeterminism:
    def test_repeated_runs_identical(self, capsys, tmp_path):
        outputs = []
        for run_dir in ("a", "b"):
            d = tmp_path / run_dir
            code, out, _ = run(
                capsys, "descent-bounds", "--config", CONFIG,
                "--out-dir", str(d), "--format", "json",
            )
            assert code == 0
            files = {p.name: p.read_bytes() for p in sorted(d.iterdir())}
            outputs.append((out, files))
        assert outputs[0] == outputs[1]


class TestErrorHandling:
    def test_missing_config_is_exit_2(self, capsys, monkeypatch):
        monkeypatch.delenv("BFOKIT_CONFIG", raising=False)
        code, out, err = run(capsys, "logon-drift")
        assert code == 2

    def test_nonexistent_config_is_exit_2(self, capsys):
        code, out, err = run(capsys, "logon-drift", "--config", "/nonexistent.json")
        assert code == 2
        assert "config" in err

    def test_domain_error_is_exit_3(self, capsys):
        # trend window with no measurements inside
        code, out, err = run(
            capsys, "trend", "--config", CONFIG, "--window",
            "2013-01-01T00:00:00Z..2013-01-01T01:00:00Z",
        )
        assert code == 3

    def test_usage_error_is_exit_1(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["predict-bfo", "--config", CONFIG])  # missing required flags
        assert info.value.code == 1

    def test_json_error_payload(self, capsys):
        code, out, err = run(
            capsys, "logon-drift", "--config", "/nonexistent.json", "--format", "json"
        )
        assert code == 2
        payload = json.loads(err)
        assert payload["error"]["kind"] == "parse/config"


def _static_world_config(tmp_path):
    """A minimal config: satellite frozen at the nominal slot, zero
    corrections, zero bias."""
    from bfokit.ingest import write_correction_csv, write_ephemeris_csv, write_log_csv
    from bfokit.satellite import CorrectionTable, EphemerisTable, NominalSlot, nominal_satellite_position

    t0 = 1394150400.0  # 2014-03-07T00:00:00Z
    t1 = t0 + 2 * 86400.0
    p = nominal_satellite_position(NominalSlot()).as_tuple()
    write_ephemeris_csv(
        tmp_path / "eph.csv",
        EphemerisTable([t0, t1], [p, p], [[0, 0, 0], [0, 0, 0]]),
    )
    write_correction_csv(tmp_path / "corr.csv", CorrectionTable([t0, t1], [0.0, 0.0]))
    write_log_csv(tmp_path / "log.csv", [])
    (tmp_path / "logons.csv").write_text(
        "seq_id,time_utc,msg_type,bfo_hz,ber,cn0_dbhz,comp_mode\n"
    )
    config = {
        "reference_date": "2014-03-07",
        "log_csv": "log.csv",
        "ephemeris_csv": "eph.csv",
        "correction_csv": "corr.csv",
        "logon_sequence_csv": "logons.csv",
        "arc_crossing": {"lat": -38.67, "lon": 85.11},
        "fit_window": ["19:41Z", "00:11Z"],
        "bias_hz": 0.0,
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    return path
