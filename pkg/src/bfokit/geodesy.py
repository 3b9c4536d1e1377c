"""WGS84 geodesy and satellite line-of-sight geometry.

Conventions: angles in degrees at the API surface, distances in meters,
velocities in m/s. Latitude is geodetic. ECEF is the standard
Earth-centered Earth-fixed right-handed frame (+x through 0N 0E,
+z through the north pole). Track angle is degrees clockwise from true
north; vertical rate is positive up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# WGS84 defining constants
WGS84_A = 6378137.0
WGS84_F = 1.0 / 298.257223563
WGS84_B = WGS84_A * (1.0 - WGS84_F)
WGS84_E2 = WGS84_F * (2.0 - WGS84_F)  # first eccentricity squared


@dataclass(frozen=True)
class GeodeticPosition:
    """Geodetic latitude/longitude (degrees) and height above the WGS84
    ellipsoid (meters)."""

    latitude_deg: float
    longitude_deg: float
    altitude_m: float = 0.0

    def __post_init__(self):
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise DomainError(f"latitude {self.latitude_deg} outside [-90, 90]")
        if not -180.0 < self.longitude_deg <= 180.0:
            raise DomainError(f"longitude {self.longitude_deg} outside (-180, 180]")
        if not math.isfinite(self.altitude_m):
            raise DomainError("altitude must be finite")


@dataclass(frozen=True)
class EcefVector:
    """An ECEF position (m) or velocity (m/s)."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise DomainError("ECEF components must be finite")

    def __add__(self, other: "EcefVector") -> "EcefVector":
        return EcefVector(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "EcefVector") -> "EcefVector":
        return EcefVector(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, k: float) -> "EcefVector":
        return EcefVector(self.x * k, self.y * k, self.z * k)

    __rmul__ = __mul__

    def dot(self, other: "EcefVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class GroundKinematics:
    """Horizontal speed over ground, track angle and vertical rate."""

    ground_speed_mps: float
    track_angle_deg: float
    vertical_rate_mps: float = 0.0

    def __post_init__(self):
        if self.ground_speed_mps < 0:
            raise DomainError("ground speed must be >= 0")
        if not 0.0 <= self.track_angle_deg < 360.0:
            raise DomainError(f"track angle {self.track_angle_deg} outside [0, 360)")


def geodetic_to_ecef(p: GeodeticPosition) -> EcefVector:
    """Convert a geodetic position to an ECEF position vector."""
    lat = math.radians(p.latitude_deg)
    lon = math.radians(p.longitude_deg)
    sinp, cosp = math.sin(lat), math.cos(lat)
    sinl, cosl = math.sin(lon), math.cos(lon)
    n = WGS84_A / math.sqrt(1.0 - WGS84_E2 * sinp * sinp)
    return EcefVector(
        (n + p.altitude_m) * cosp * cosl,
        (n + p.altitude_m) * cosp * sinl,
        (n * (1.0 - WGS84_E2) + p.altitude_m) * sinp,
    )


def ecef_to_geodetic(v: EcefVector) -> GeodeticPosition:
    """Invert :func:`geodetic_to_ecef`.

    Bowring's closed form seeded with a few fixed-point refinements;
    round-trips to better than 1e-9 degrees / 1e-6 m over the whole
    aircraft-to-geostationary altitude range.
    """
    x, y, z = v.x, v.y, v.z
    p = math.hypot(x, y)
    if p == 0.0 and z == 0.0:
        raise DomainError("ECEF vector at Earth center has no geodetic image")
    lon = math.degrees(math.atan2(y, x))
    if lon <= -180.0:
        lon = 180.0
    if p < 1e-9:
        # On the polar axis the longitude is arbitrary; fix it at 0.
        lat = math.copysign(90.0, z)
        return GeodeticPosition(lat, 0.0, abs(z) - WGS84_B)

    # Bowring seed
    ep2 = (WGS84_A * WGS84_A - WGS84_B * WGS84_B) / (WGS84_B * WGS84_B)
    theta = math.atan2(z * WGS84_A, p * WGS84_B)
    st, ct = math.sin(theta), math.cos(theta)
    lat = math.atan2(z + ep2 * WGS84_B * st**3, p - WGS84_E2 * WGS84_A * ct**3)

    h = 0.0
    for _ in range(4):
        sinp = math.sin(lat)
        n = WGS84_A / math.sqrt(1.0 - WGS84_E2 * sinp * sinp)
        h = p / math.cos(lat) - n
        lat = math.atan2(z, p * (1.0 - WGS84_E2 * n / (n + h)))

    return GeodeticPosition(math.degrees(lat), lon, h)


def enu_basis(p: GeodeticPosition) -> tuple[EcefVector, EcefVector, EcefVector]:
    """Unit east/north/up vectors of the local tangent frame at ``p``.

    Up is the ellipsoidal normal, not the geocentric radial.
    """
    lat = math.radians(p.latitude_deg)
    lon = math.radians(p.longitude_deg)
    sinp, cosp = math.sin(lat), math.cos(lat)
    sinl, cosl = math.sin(lon), math.cos(lon)
    east = EcefVector(-sinl, cosl, 0.0)
    north = EcefVector(-sinp * cosl, -sinp * sinl, cosp)
    up = EcefVector(cosp * cosl, cosp * sinl, sinp)
    return east, north, up


def kinematics_to_ecef_velocity(p: GeodeticPosition, k: GroundKinematics) -> EcefVector:
    """ECEF velocity of an aircraft at ``p`` with ground kinematics ``k``.

    Local east/north components are ground_speed * sin/cos(track); the
    local up component is the vertical rate.
    """
    east, north, up = enu_basis(p)
    track = math.radians(k.track_angle_deg)
    ve = k.ground_speed_mps * math.sin(track)
    vn = k.ground_speed_mps * math.cos(track)
    return ve * east + vn * north + k.vertical_rate_mps * up


def elevation_angle(aircraft: GeodeticPosition, satellite_pos: EcefVector) -> float:
    """Signed elevation (degrees) of the satellite above the aircraft's
    local horizontal plane. Negative values mean below the horizon."""
    site = geodetic_to_ecef(aircraft)
    los = satellite_pos - site
    r = los.norm()
    if r < 1e-6:
        raise DomainError("aircraft and satellite positions coincide")
    east, north, up = enu_basis(aircraft)
    e = los.dot(east)
    n = los.dot(north)
    u = los.dot(up)
    return math.degrees(math.atan2(u, math.hypot(e, n)))
