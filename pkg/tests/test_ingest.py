import pytest

from bfokit.errors import DomainError, ParseError
from bfokit.fixtures import fixture_path
from bfokit.ingest import (
    format_time_utc,
    ingest_logs,
    load_correction_csv,
    load_ephemeris_csv,
    load_error_samples_csv,
    load_log_csv,
    load_logon_csv,
    parse_time_utc,
    write_correction_csv,
    write_ephemeris_csv,
    write_error_samples_csv,
    write_log_csv,
    write_logon_csv,
)

from datetime import date

REF = date(2014, 3, 7)


class TestTimestamps:
    def test_full_iso(self):
        t = parse_time_utc("2014-03-07T16:42:00Z")
        assert format_time_utc(t) == "2014-03-07T16:42:00Z"

    def test_shorthand_afternoon_resolves_to_reference_date(self):
        t = parse_time_utc("19:41Z", REF)
        assert format_time_utc(t) == "2014-03-07T19:41:00Z"

    def test_shorthand_morning_resolves_to_next_day(self):
        t = parse_time_utc("00:19:29Z", REF)
        assert format_time_utc(t) == "2014-03-08T00:19:29Z"

    def test_shorthand_without_reference_rejected(self):
        with pytest.raises(DomainError):
            parse_time_utc("19:41Z")

    def test_non_utc_rejected(self):
        with pytest.raises(DomainError):
            parse_time_utc("2014-03-07T16:42:00+08:00")


class TestLogIngestion:
    def test_key_event_fixture_has_eight_events(self):
        ms = ingest_logs(fixture_path("mh370_key_events.csv"))
        assert len(ms) == 8
        stamps = [format_time_utc(m.timestamp) for m in ms]
        assert stamps == [
            "2014-03-07T16:42:00Z",
            "2014-03-07T17:07:00Z",
            "2014-03-07T17:21:13Z",
            "2014-03-07T18:22:12Z",
            "2014-03-07T18:25:27Z",
            "2014-03-07T18:39:53Z",
            "2014-03-07T19:41:03Z",
            "2014-03-08T00:19:29Z",
        ]

    def test_measurements_are_time_sorted(self, tmp_path):
        src = fixture_path("mh370_bfo_log.csv").read_text()
        lines = src.splitlines()
        # swap the last two data rows out of order
        lines[-1], lines[-2] = lines[-2], lines[-1]
        p = tmp_path / "shuffled.csv"
        p.write_text("\n".join(lines) + "\n")
        ms = ingest_logs(p)
        times = [m.timestamp for m in ms]
        assert times == sorted(times)

    def test_empty_file_warns(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        with pytest.warns(UserWarning, match="no measurements"):
            assert ingest_logs(p) == []

    def test_nan_bfo_row_rejected_with_report(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text(
            "time_utc,channel,msg_type,bfo_hz,bto_us,ber,cn0_dbhz,signal_db\n"
            "2014-03-07T16:00:00Z,R,data,100,,0,41.7,\n"
            "2014-03-07T16:01:00Z,R,data,NaN,,0,41.7,\n"
        )
        records = load_log_csv(p)
        assert len(records.measurements) == 1
        assert len(records.rejected) == 1
        assert records.rejected[0][0] == 3  # physical line number
        with pytest.warns(UserWarning, match="line 3"):
            ms = ingest_logs(p)
        assert len(ms) == 1

    def test_unknown_column_rejected(self, tmp_path):
        p = tmp_path / "cols.csv"
        p.write_text("time_utc,channel,msg_type,bfo_hz,bto_us,ber,cn0_dbhz,signal_db,extra\n")
        with pytest.raises(ParseError) as info:
            load_log_csv(p)
        assert "extra" in str(info.value)

    def test_unparsable_timestamp_is_structured_error(self, tmp_path):
        p = tmp_path / "time.csv"
        p.write_text(
            "time_utc,channel,msg_type,bfo_hz,bto_us,ber,cn0_dbhz,signal_db\n"
            "yesterday,R,data,100,,0,41.7,\n"
            "2014-03-07T16:00:00Z,R,data,100,,0,41.7,\n"
            "also-not-a-time,R,data,100,,0,41.7,\n"
        )
        with pytest.raises(ParseError) as info:
            load_log_csv(p)
        lines = [n for n, _ in info.value.problems]
        assert lines == [2, 4]


CSV_FIXTURES = [
    "mh370_bfo_log.csv",
    "mh370_key_events.csv",
    "ior_ephemeris_synthetic.csv",
    "ior_corrections_synthetic.csv",
    "logon_sequences.csv",
    "bfo_error_reference.csv",
]


class TestRoundTrip:
    @pytest.mark.parametrize("name", CSV_FIXTURES)
    def test_fixture_round_trips_bit_identically(self, name, tmp_path):
        src = fixture_path(name)
        out = tmp_path / name
        if "ephemeris" in name:
            write_ephemeris_csv(out, load_ephemeris_csv(src))
        elif "corrections" in name:
            write_correction_csv(out, load_correction_csv(src))
        elif "logon" in name:
            records = load_logon_csv(src)
            provenance = _header_comments(src)
            write_logon_csv(out, records, provenance)
        elif "error_reference" in name:
            values, provenance = load_error_samples_csv(src)
            write_error_samples_csv(out, values, provenance)
        else:
            records = load_log_csv(src)
            write_log_csv(out, records.measurements, records.provenance)
        assert out.read_bytes() == src.read_bytes()


def _header_comments(path):
    lines = []
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            lines.append(line)
        else:
            break
    return lines


class TestFixtureContent:
    def test_all_fixtures_carry_provenance(self):
        for name in CSV_FIXTURES:
            comments = _header_comments(fixture_path(name))
            assert comments, f"{name} lacks a provenance header"
            assert any("source" in c for c in comments)

    def test_final_logon_pair_recorded_values(self):
        ms = ingest_logs(fixture_path("mh370_bfo_log.csv"))
        logon = [m for m in ms if m.message_type.value == "logon_request"][-1]
        ack = [m for m in ms if m.message_type.value == "logon_ack"][-1]
        assert logon.bfo_hz == 182.0
        assert ack.bfo_hz == -2.0
        assert ack.timestamp - logon.timestamp == 8.0

    def test_ephemeris_fixture_loads(self):
        table = load_ephemeris_csv(fixture_path("ior_ephemeris_synthetic.csv"))
        assert len(table) >= 2
        t0, t1 = table.span
        assert t0 <= parse_time_utc("2014-03-07T16:00:00Z")
        assert t1 >= parse_time_utc("2014-03-08T00:19:37Z")

    def test_logon_fixture_has_seven_sequences(self):
        sequences = load_logon_csv(
            fixture_path("logon_sequences.csv"), fixture_path("logon_sequences_meta.json")
        )
        assert sorted(s.id for s in sequences) == list("1234567")
