"""BFO error as a function of assumed track angle at an arc crossing.

For a fixed crossing point, time and ground speed, the predicted BFO is
evaluated for level flight on every track angle and compared against the
measured BFO. The curve's sector extrema give the track-dependent
offsets used to build expected BFOs for south and north tracks.
"""

from __future__ import annotations

from enum import Enum

from .bfo_model import AircraftState, ChannelConfig, predict_bfo
from .errors import DomainError
from .geodesy import GeodeticPosition, GroundKinematics
from .satellite import CorrectionTable, EphemerisTable, NominalSlot, satellite_state_at

KNOTS_TO_MPS = 0.514444


class TrackSector(Enum):
    SOUTH = "south"
    NORTH = "north"


def bfo_error_vs_track(
    crossing: GeodeticPosition,
    t: float,
    ground_speed_mps: float,
    measured_bfo_hz: float,
    ephemeris: EphemerisTable,
    corrections: CorrectionTable,
    bias_hz: float,
    cfg: ChannelConfig,
    slot: NominalSlot = NominalSlot(),
    step_deg: float = 1.0,
) -> list[tuple[float, float]]:
    """BFO error (predicted minus measured, Hz) for level flight at the
    crossing point, swept over track angles 0..360 inclusive.

    ``step_deg`` must divide 360. Both endpoints are emitted so the
    curve's periodicity is visible in the output.
    """
    if step_deg <= 0:
        raise DomainError("step must be positive")
    steps = 360.0 / step_deg
    if abs(steps - round(steps)) > 1e-9:
        raise DomainError(f"step {step_deg} does not divide 360")

    sat = satellite_state_at(t, ephemeris)
    curve = []
    for k in range(int(round(steps)) + 1):
        track = k * step_deg
        state = AircraftState(
            position=crossing,
            kinematics=GroundKinematics(ground_speed_mps, track % 360.0, 0.0),
            timestamp=t,
        )
        predicted, _ = predict_bfo(state, sat, corrections, bias_hz, cfg, slot)
        curve.append((track, predicted - measured_bfo_hz))
    return curve


def peak_to_peak(curve) -> float:
    errors = [e for _, e in curve]
    if not errors:
        raise DomainError("empty curve")
    return max(errors) - min(errors)


def track_offset(curve, sector: TrackSector) -> float:
    """Offset (Hz) at the curve's extremum within a track sector.

    South tracks (90..270 deg) take the minimum-BFO point, north tracks
    (270..360 and 0..90) the maximum.
    """
    points = list(curve)
    if not points:
        raise DomainError("empty curve")
    if sector is TrackSector.SOUTH:
        sel = [e for a, e in points if 90.0 <= a % 360.0 <= 270.0]
        if not sel:
            raise DomainError("curve has no south-sector points")
        return min(sel)
    sel = [e for a, e in points if a % 360.0 <= 90.0 or a % 360.0 >= 270.0]
    if not sel:
        raise DomainError("curve has no north-sector points")
    return max(sel)
