"""Analysis configuration: file paths, channel constants and defaults.

Config files are JSON. Relative paths resolve against the config file's
directory, so the bundled fixture config works from anywhere. The
``BFOKIT_CONFIG`` environment variable supplies the default config path.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from .bfo_model import ChannelConfig
from .errors import ConfigError, DomainError
from .geodesy import GeodeticPosition
from .ingest import (
    load_correction_csv,
    load_ephemeris_csv,
    load_log_csv,
    load_logon_csv,
    parse_time_utc,
)
from .satellite import NominalSlot
from .stats import NoiseBounds

CONFIG_ENV_VAR = "BFOKIT_CONFIG"


@dataclass(frozen=True)
class AnalysisConfig:
    base_dir: Path
    log_csv: Path
    ephemeris_csv: Path
    correction_csv: Path
    logon_sequence_csv: Path
    logon_meta_json: Path | None
    channel: ChannelConfig
    slot: NominalSlot
    noise: NoiseBounds
    expected_south_hz: float
    expected_north_hz: float
    arc_crossing: GeodeticPosition
    fit_window: tuple[float, float]
    bias_hz: float
    reference_date: date
    tarmac: GeodeticPosition | None
    sensitivity_hz_per_100fpm: float

    def load_log(self):
        return load_log_csv(self.log_csv)

    def load_ephemeris(self):
        return load_ephemeris_csv(self.ephemeris_csv)

    def load_corrections(self):
        return load_correction_csv(self.correction_csv)

    def load_logon_sequences(self):
        return load_logon_csv(self.logon_sequence_csv, self.logon_meta_json)

    def parse_time(self, text: str) -> float:
        return parse_time_utc(text, self.reference_date)


def _position(obj, what) -> GeodeticPosition:
    try:
        return GeodeticPosition(
            float(obj["lat"]), float(obj["lon"]), float(obj.get("alt", 0.0))
        )
    except (KeyError, TypeError, ValueError, DomainError) as e:
        raise ConfigError(f"bad {what} position: {e}") from e


def load_config(path=None) -> AnalysisConfig:
    """Load and validate an analysis config.

    ``path`` defaults to the ``BFOKIT_CONFIG`` environment variable.
    """
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        raise ConfigError(f"no config path given and {CONFIG_ENV_VAR} is not set")
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e}") from e

    base = path.parent

    def file_path(key, required=True):
        value = raw.get(key)
        if value is None:
            if required:
                raise ConfigError(f"config is missing {key!r}")
            return None
        p = base / value
        if not p.exists():
            raise ConfigError(f"{key}: file {p} does not exist")
        return p

    try:
        reference = date.fromisoformat(raw["reference_date"])
        ch = raw.get("channel", {})
        channel = ChannelConfig(
            uplink_hz=float(ch.get("uplink_hz", ChannelConfig().uplink_hz)),
            downlink_hz=float(ch.get("downlink_hz", ChannelConfig().downlink_hz)),
            ges_position=_position(ch["ges"], "ground station")
            if "ges" in ch
            else ChannelConfig().ges_position,
        )
        slot_raw = raw.get("nominal_slot", {})
        slot = NominalSlot(
            longitude_deg=float(slot_raw.get("longitude_deg", 64.5)),
            latitude_deg=float(slot_raw.get("latitude_deg", 0.0)),
            radius_m=float(slot_raw.get("radius_m", NominalSlot().radius_m)),
        )
        nb = raw.get("noise_bounds", {"lower_hz": -28.0, "upper_hz": 18.0})
        noise = NoiseBounds(float(nb["lower_hz"]), float(nb["upper_hz"]))
        expected = raw.get("expected_bfo", {})
        window_raw = raw.get("fit_window")
        if not window_raw or len(window_raw) != 2:
            raise ConfigError("config needs a 2-element fit_window")
        window = (
            parse_time_utc(window_raw[0], reference),
            parse_time_utc(window_raw[1], reference),
        )
        if window[0] >= window[1]:
            raise ConfigError("fit_window out of order")

        cfg = AnalysisConfig(
            base_dir=base,
            log_csv=file_path("log_csv"),
            ephemeris_csv=file_path("ephemeris_csv"),
            correction_csv=file_path("correction_csv"),
            logon_sequence_csv=file_path("logon_sequence_csv"),
            logon_meta_json=file_path("logon_meta_json", required=False),
            channel=channel,
            slot=slot,
            noise=noise,
            expected_south_hz=float(expected.get("south_hz", 260.0)),
            expected_north_hz=float(expected.get("north_hz", 280.0)),
            arc_crossing=_position(raw["arc_crossing"], "arc crossing"),
            fit_window=window,
            bias_hz=float(raw.get("bias_hz", 0.0)),
            reference_date=reference,
            tarmac=_position(raw["tarmac"], "tarmac") if "tarmac" in raw else None,
            sensitivity_hz_per_100fpm=float(raw.get("sensitivity_hz_per_100fpm", 1.7)),
        )
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError, DomainError) as e:
        raise ConfigError(f"config file {path}: {e}") from e
    return cfg
