"""Forward model of the burst frequency offset (BFO).

The BFO seen at the ground station for one burst decomposes into: uplink
Doppler (aircraft -> satellite), downlink Doppler (satellite -> ground
station), the Doppler pre-compensation applied by the aircraft terminal,
the tabulated satellite-translation + ground-AFC correction, and a
per-flight oscillator bias. The terminal's pre-compensation is computed
the way the terminal itself computes it: from track angle and ground
speed only (vertical speed assumed zero), with the aircraft at sea level
and the satellite at its nominal slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError
from .geodesy import (
    EcefVector,
    GeodeticPosition,
    GroundKinematics,
    geodetic_to_ecef,
    kinematics_to_ecef_velocity,
)
from .satellite import (
    CorrectionTable,
    EphemerisTable,
    NominalSlot,
    SatelliteState,
    deterministic_correction_at,
    nominal_satellite_position,
    satellite_state_at,
)

SPEED_OF_LIGHT_MPS = 299792458.0
DEFAULT_UPLINK_HZ = 1646.6525e6
# Feeder-link and ground-station defaults are placeholders for synthetic
# scenarios; real analyses must set them in the config.
DEFAULT_DOWNLINK_HZ = 3615.0e6
DEFAULT_GES_POSITION = GeodeticPosition(-31.8044, 115.8872, 22.0)

MPS_PER_100FPM = 0.508  # 100 ft/min in m/s


@dataclass(frozen=True)
class ChannelConfig:
    """Carrier frequencies and ground-station location for one channel."""

    uplink_hz: float = DEFAULT_UPLINK_HZ
    downlink_hz: float = DEFAULT_DOWNLINK_HZ
    ges_position: GeodeticPosition = DEFAULT_GES_POSITION
    speed_of_light_mps: float = SPEED_OF_LIGHT_MPS

    def __post_init__(self):
        if self.uplink_hz <= 0 or self.downlink_hz <= 0:
            raise DomainError("carrier frequencies must be positive")


@dataclass(frozen=True)
class AircraftState:
    """Aircraft position and kinematics at a UTC timestamp (seconds)."""

    position: GeodeticPosition
    kinematics: GroundKinematics
    timestamp: float


@dataclass(frozen=True)
class BfoTerms:
    """Additive decomposition of one predicted BFO, Hz."""

    uplink_doppler_hz: float
    downlink_doppler_hz: float
    aes_compensation_hz: float
    sat_plus_afc_hz: float
    bias_hz: float

    @property
    def total_hz(self) -> float:
        return (
            self.uplink_doppler_hz
            + self.downlink_doppler_hz
            + self.aes_compensation_hz
            + self.sat_plus_afc_hz
            + self.bias_hz
        )

    def as_dict(self) -> dict[str, float]:
        return {
            "uplink_doppler_hz": self.uplink_doppler_hz,
            "downlink_doppler_hz": self.downlink_doppler_hz,
            "aes_compensation_hz": self.aes_compensation_hz,
            "sat_plus_afc_hz": self.sat_plus_afc_hz,
            "bias_hz": self.bias_hz,
        }


def _los_projection(velocity: EcefVector, from_pos: EcefVector, to_pos: EcefVector) -> float:
    """Component of ``velocity`` along the from->to line of sight."""
    los = to_pos - from_pos
    r = los.norm()
    if r < 1e-6:
        raise DomainError("line-of-sight endpoints coincide")
    return velocity.dot(los) / r


def uplink_doppler(aircraft: AircraftState, sat: SatelliteState, cfg: ChannelConfig) -> float:
    """Uplink Doppler shift, Hz.

    (F_up/c) * (v_s - v_x) . (p_x - p_s) / |p_x - p_s|. Closing geometry
    (range decreasing) gives a positive shift: a climb directly beneath
    the satellite raises the BFO.
    """
    p_x = geodetic_to_ecef(aircraft.position)
    v_x = kinematics_to_ecef_velocity(aircraft.position, aircraft.kinematics)
    rel = sat.velocity - v_x
    return cfg.uplink_hz / cfg.speed_of_light_mps * _los_projection(rel, sat.position, p_x)


def aes_compensation(aircraft: AircraftState, slot: NominalSlot, cfg: ChannelConfig) -> float:
    """Doppler pre-compensation applied by the aircraft terminal, Hz.

    Uses the terminal's own approximations: horizontal velocity only,
    aircraft at sea level, satellite fixed at the nominal slot.
    """
    k_flat = replace(aircraft.kinematics, vertical_rate_mps=0.0)
    p_flat = replace(aircraft.position, altitude_m=0.0)
    v_hat = kinematics_to_ecef_velocity(aircraft.position, k_flat)
    p_hat = geodetic_to_ecef(p_flat)
    s_hat = nominal_satellite_position(slot)
    return cfg.uplink_hz / cfg.speed_of_light_mps * _los_projection(v_hat, s_hat, p_hat)


def downlink_doppler(sat: SatelliteState, cfg: ChannelConfig) -> float:
    """Downlink Doppler shift, Hz: satellite motion projected onto the
    satellite -> ground-station line of sight. Independent of the aircraft."""
    p_ges = geodetic_to_ecef(cfg.ges_position)
    return cfg.downlink_hz / cfg.speed_of_light_mps * _los_projection(
        sat.velocity, sat.position, p_ges
    )


def predict_bfo(
    aircraft: AircraftState,
    sat: SatelliteState,
    corrections: CorrectionTable,
    bias_hz: float,
    cfg: ChannelConfig,
    slot: NominalSlot = NominalSlot(),
) -> tuple[float, BfoTerms]:
    """Predicted BFO (Hz) and its exact additive decomposition."""
    terms = BfoTerms(
        uplink_doppler_hz=uplink_doppler(aircraft, sat, cfg),
        downlink_doppler_hz=downlink_doppler(sat, cfg),
        aes_compensation_hz=aes_compensation(aircraft, slot, cfg),
        sat_plus_afc_hz=deterministic_correction_at(aircraft.timestamp, corrections),
        bias_hz=bias_hz,
    )
    return terms.total_hz, terms


def vertical_doppler(vz_mps: float, elevation_deg: float, cfg: ChannelConfig) -> float:
    """Uncompensated BFO contribution of vertical speed ``vz_mps`` (Hz):
    vz * F_up * sin(elevation) / c. Positive up."""
    return vz_mps * cfg.uplink_hz * math.sin(math.radians(elevation_deg)) / cfg.speed_of_light_mps


def descent_sensitivity(elevation_deg: float, cfg: ChannelConfig) -> float:
    """BFO change per 100 ft/min of climb rate at the given elevation,
    Hz per 100 fpm."""
    return vertical_doppler(MPS_PER_100FPM, elevation_deg, cfg)


def calibrate_bias(
    tarmac_measurements,
    ephemeris: EphemerisTable,
    corrections: CorrectionTable,
    cfg: ChannelConfig,
    slot: NominalSlot = NominalSlot(),
) -> float:
    """Oscillator bias (Hz) from measurements taken with a known static
    aircraft state, as the mean of measured minus zero-bias prediction.

    ``tarmac_measurements`` is an iterable of (BfoMeasurement, AircraftState)
    pairs.
    """
    residuals = []
    for measurement, state in tarmac_measurements:
        sat = satellite_state_at(state.timestamp, ephemeris)
        predicted, _ = predict_bfo(state, sat, corrections, 0.0, cfg, slot)
        residuals.append(measurement.bfo_hz - predicted)
    if not residuals:
        raise DomainError("bias calibration needs at least one measurement")
    return sum(residuals) / len(residuals)
