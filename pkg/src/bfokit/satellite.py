"""Relay-satellite state and ground-segment frequency corrections.

Satellite states come from an ephemeris table (cubic Hermite on position,
using the tabulated velocities as segment derivatives). The net
translation + ground-station AFC correction is a tabulated quantity,
linearly interpolated. A small analytic inclined-geosynchronous model is
included to generate synthetic tables for tests and fixtures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from bisect import bisect_right

import numpy as np

from .errors import DomainError
from .geodesy import EcefVector

GEO_RADIUS_M = 42164169.0
SIDEREAL_DAY_S = 86164.0905
# Plausibility shell for geosynchronous ephemerides, meters
GEO_SHELL_HALF_WIDTH_M = 500e3


@dataclass(frozen=True)
class SatelliteState:
    position: EcefVector
    velocity: EcefVector


@dataclass(frozen=True)
class NominalSlot:
    """The orbital slot the aircraft terminal assumes for its own Doppler
    pre-compensation: on the equator at a fixed longitude."""

    longitude_deg: float = 64.5
    latitude_deg: float = 0.0
    radius_m: float = GEO_RADIUS_M


class EphemerisTable:
    """Time-ordered (position, velocity) samples of the relay satellite.

    Immutable after construction; queries are pure.
    """

    def __init__(self, times, positions, velocities, provenance=()):
        self.times = np.asarray(times, dtype=float)
        self.positions = np.asarray(positions, dtype=float).reshape(len(self.times), 3)
        self.velocities = np.asarray(velocities, dtype=float).reshape(len(self.times), 3)
        self.provenance = tuple(provenance)
        if len(self.times) < 2:
            raise DomainError("ephemeris table needs at least 2 rows")
        if not np.all(np.diff(self.times) > 0):
            raise DomainError("ephemeris timestamps must be strictly increasing")
        if not (np.all(np.isfinite(self.positions)) and np.all(np.isfinite(self.velocities))):
            raise DomainError("ephemeris rows must be finite")
        radii = np.linalg.norm(self.positions, axis=1)
        if np.any(np.abs(radii - GEO_RADIUS_M) > GEO_SHELL_HALF_WIDTH_M):
            raise DomainError("ephemeris positions outside the geosynchronous shell")

    def __len__(self):
        return len(self.times)

    @property
    def span(self) -> tuple[float, float]:
        return float(self.times[0]), float(self.times[-1])

    def row(self, i: int) -> tuple[float, EcefVector, EcefVector]:
        return (
            float(self.times[i]),
            EcefVector(*self.positions[i]),
            EcefVector(*self.velocities[i]),
        )


class CorrectionTable:
    """Tabulated net deterministic frequency correction (Hz) vs time."""

    def __init__(self, times, values, provenance=()):
        self.times = np.asarray(times, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.provenance = tuple(provenance)
        if len(self.times) != len(self.values) or len(self.times) < 1:
            raise DomainError("correction table needs matching, non-empty columns")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise DomainError("correction timestamps must be strictly increasing")

    def __len__(self):
        return len(self.times)

    @property
    def span(self) -> tuple[float, float]:
        return float(self.times[0]), float(self.times[-1])


def _segment_index(times, t) -> int:
    if t < times[0] or t > times[-1]:
        raise DomainError(
            f"time {t} outside table span [{times[0]}, {times[-1]}] (no extrapolation)"
        )
    i = bisect_right(times.tolist(), t) - 1
    return min(i, len(times) - 2)


def satellite_state_at(t: float, e: EphemerisTable) -> SatelliteState:
    """Interpolated satellite state at UTC second ``t``.

    Cubic Hermite per segment; the returned velocity is the exact time
    derivative of the interpolated position.
    """
    i = _segment_index(e.times, t)
    t0, t1 = e.times[i], e.times[i + 1]
    dt = t1 - t0
    s = (t - t0) / dt
    p0, p1 = e.positions[i], e.positions[i + 1]
    v0, v1 = e.velocities[i], e.velocities[i + 1]

    h00 = 2 * s**3 - 3 * s**2 + 1
    h10 = s**3 - 2 * s**2 + s
    h01 = -2 * s**3 + 3 * s**2
    h11 = s**3 - s**2
    pos = h00 * p0 + h10 * dt * v0 + h01 * p1 + h11 * dt * v1

    d00 = 6 * s**2 - 6 * s
    d10 = 3 * s**2 - 4 * s + 1
    d01 = -6 * s**2 + 6 * s
    d11 = 3 * s**2 - 2 * s
    vel = (d00 * p0 + d01 * p1) / dt + d10 * v0 + d11 * v1

    return SatelliteState(EcefVector(*pos), EcefVector(*vel))


def nominal_satellite_position(slot: NominalSlot) -> EcefVector:
    """ECEF point at the slot's longitude/latitude on the geostationary radius."""
    lat = math.radians(slot.latitude_deg)
    lon = math.radians(slot.longitude_deg)
    return EcefVector(
        slot.radius_m * math.cos(lat) * math.cos(lon),
        slot.radius_m * math.cos(lat) * math.sin(lon),
        slot.radius_m * math.sin(lat),
    )


def deterministic_correction_at(t: float, c: CorrectionTable) -> float:
    """Linearly interpolated correction (Hz) at UTC second ``t``."""
    if len(c) == 1:
        if t != c.times[0]:
            raise DomainError(f"time {t} outside single-row correction table")
        return float(c.values[0])
    i = _segment_index(c.times, t)
    t0, t1 = c.times[i], c.times[i + 1]
    w = (t - t0) / (t1 - t0)
    return float((1.0 - w) * c.values[i] + w * c.values[i + 1])


@dataclass(frozen=True)
class SyntheticGeoModel:
    """Closed-form inclined, slightly eccentric geosynchronous orbit in the
    Earth-fixed frame.

    The ground track is the usual small-inclination figure eight:
    latitude ~ i*sin(M), longitude oscillating at twice the orbital rate,
    radius breathing with eccentricity. Velocities are the exact analytic
    derivatives, so tables sampled from this model are self-consistent.
    """

    longitude_deg: float = 64.5
    inclination_deg: float = 1.65
    node_time: float = 0.0  # UTC seconds of ascending node crossing
    eccentricity: float = 0.0
    perigee_time: float = 0.0
    radius_m: float = GEO_RADIUS_M

    def state_at(self, t: float) -> SatelliteState:
        n = 2.0 * math.pi / SIDEREAL_DAY_S
        inc = math.radians(self.inclination_deg)
        m = n * (t - self.node_time)
        mp = n * (t - self.perigee_time)

        lat = inc * math.sin(m)
        dlat = inc * n * math.cos(m)
        lon = (
            math.radians(self.longitude_deg)
            + (inc * inc / 4.0) * math.sin(2.0 * m)
            + 2.0 * self.eccentricity * math.sin(mp)
        )
        dlon = (inc * inc / 2.0) * n * math.cos(2.0 * m) + 2.0 * self.eccentricity * n * math.cos(mp)
        r = self.radius_m * (1.0 - self.eccentricity * math.cos(mp))
        dr = self.radius_m * self.eccentricity * n * math.sin(mp)

        sp, cp = math.sin(lat), math.cos(lat)
        sl, cl = math.sin(lon), math.cos(lon)
        pos = EcefVector(r * cp * cl, r * cp * sl, r * sp)
        vel = EcefVector(
            dr * cp * cl - r * sp * cl * dlat - r * cp * sl * dlon,
            dr * cp * sl - r * sp * sl * dlat + r * cp * cl * dlon,
            dr * sp + r * cp * dlat,
        )
        return SatelliteState(pos, vel)

    def table(self, start: float, end: float, step_s: float, provenance=()) -> EphemerisTable:
        if end <= start or step_s <= 0:
            raise DomainError("need end > start and a positive step")
        count = int(round((end - start) / step_s)) + 1
        times, positions, velocities = [], [], []
        for k in range(count):
            t = start + k * step_s
            st = self.state_at(t)
            times.append(t)
            positions.append(st.position.as_tuple())
            velocities.append(st.velocity.as_tuple())
        return EphemerisTable(times, positions, velocities, provenance)
