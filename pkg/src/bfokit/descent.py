"""End-of-flight descent-rate bounding from the last two logged BFOs.

Two hypotheses are carried through in parallel: the SATCOM outage that
preceded the final log-on was a power interruption (so warm-up drift
bounds must be removed from the recorded BFOs) or it was something else
(no drift adjustment). Either way the BFO noise bounds widen the result.
The gap between the expected level-flight BFO and the adjusted range,
divided by the vertical-Doppler sensitivity, bounds the descent rate per
track assumption; hypothesis envelopes give outer bounds, and midpoint
differencing across the two final messages estimates the downward
acceleration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .stats import NoiseBounds
from .warmup import DriftBounds

FPM_TO_MPS = 0.00508
G_MPS2 = 9.8
DEFAULT_SENSITIVITY_HZ_PER_100FPM = 1.7
DEFAULT_EXPECTED_SOUTH_HZ = 260.0
DEFAULT_EXPECTED_NORTH_HZ = 280.0


class Hypothesis(Enum):
    POWER_OUTAGE = "power_outage"
    OTHER_CAUSE = "other_cause"


@dataclass(frozen=True)
class BfoRange:
    lower_hz: float
    upper_hz: float

    def __post_init__(self):
        if self.lower_hz > self.upper_hz:
            raise DomainError("BFO range out of order")


def round_to_fpm(rate: float, quantum: float = 100.0) -> float:
    """Round half away from zero to the nearest ``quantum`` fpm."""
    return math.copysign(math.floor(abs(rate) / quantum + 0.5) * quantum, rate)


def drift_removed_range(recorded_hz: float, message: str, drift: DriftBounds) -> BfoRange:
    """Recorded BFO with the warm-up drift range subtracted (no noise)."""
    if message == "logon":
        dmin, dmax = drift.logon_minus_settled
    elif message == "ack":
        dmin, dmax = drift.ack_minus_settled
    else:
        raise DomainError(f"message must be 'logon' or 'ack', got {message!r}")
    return BfoRange(recorded_hz - dmax, recorded_hz - dmin)


def adjusted_bfo_range(
    recorded_hz: float,
    message: str,
    hypothesis: Hypothesis,
    drift: DriftBounds | None,
    noise: NoiseBounds,
) -> BfoRange:
    """Steady-state-equivalent BFO range for one recorded value.

    Under the power-outage hypothesis the warm-up drift range is removed
    first; under the other-cause hypothesis the recorded value stands.
    The error convention (error = predicted - measured within the noise
    bounds) then widens the range by [-noise.upper, -noise.lower].
    """
    if hypothesis is Hypothesis.POWER_OUTAGE:
        if drift is None:
            raise DomainError("power-outage hypothesis requires drift bounds")
        base = drift_removed_range(recorded_hz, message, drift)
    else:
        if message not in ("logon", "ack"):
            raise DomainError(f"message must be 'logon' or 'ack', got {message!r}")
        base = BfoRange(recorded_hz, recorded_hz)
    return BfoRange(base.lower_hz - noise.upper_hz, base.upper_hz - noise.lower_hz)


@dataclass(frozen=True)
class DescentRates:
    """Descent-rate bounds (fpm, positive down) per track assumption."""

    south_fpm: tuple[float, float]
    north_fpm: tuple[float, float]

    def __post_init__(self):
        if self.south_fpm[0] > self.south_fpm[1] or self.north_fpm[0] > self.north_fpm[1]:
            raise DomainError("descent-rate bounds out of order")

    @property
    def outer_fpm(self) -> tuple[float, float]:
        return (
            min(self.south_fpm[0], self.north_fpm[0]),
            max(self.south_fpm[1], self.north_fpm[1]),
        )


def descent_rate_bounds(
    expected_south_hz: float,
    expected_north_hz: float,
    adjusted: BfoRange,
    sensitivity_hz_per_100fpm: float = DEFAULT_SENSITIVITY_HZ_PER_100FPM,
    rounding_fpm: float | None = 100.0,
) -> DescentRates:
    """Descent-rate bounds implied by an adjusted BFO range.

    Each Hz below the expected level-flight BFO corresponds to
    100/sensitivity fpm of descent. ``rounding_fpm=None`` disables the
    nearest-100-fpm rounding used for table reproduction.
    """
    if sensitivity_hz_per_100fpm <= 0:
        raise DomainError("sensitivity must be positive")

    def rate(expected, bfo):
        r = (expected - bfo) / sensitivity_hz_per_100fpm * 100.0
        return round_to_fpm(r, rounding_fpm) if rounding_fpm else r

    return DescentRates(
        south_fpm=(rate(expected_south_hz, adjusted.upper_hz), rate(expected_south_hz, adjusted.lower_hz)),
        north_fpm=(rate(expected_north_hz, adjusted.upper_hz), rate(expected_north_hz, adjusted.lower_hz)),
    )


@dataclass(frozen=True)
class DescentBoundsTable:
    """Descent-rate bounds per timestamp, with outer bounds per row."""

    times: tuple[float, ...]
    rates: tuple[DescentRates, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.times) != len(self.rates):
            raise DomainError("times and rates must match")

    def row(self, t: float) -> DescentRates:
        for ti, r in zip(self.times, self.rates):
            if ti == t:
                return r
        raise DomainError(f"no row at time {t}")


def combine_hypotheses(h1: DescentBoundsTable, h2: DescentBoundsTable) -> DescentBoundsTable:
    """Per-timestamp envelope of two bounds tables (outer bounds)."""
    if h1.times != h2.times:
        raise DomainError("bounds tables cover different timestamps")
    combined = []
    for a, b in zip(h1.rates, h2.rates):
        combined.append(
            DescentRates(
                south_fpm=(min(a.south_fpm[0], b.south_fpm[0]), max(a.south_fpm[1], b.south_fpm[1])),
                north_fpm=(min(a.north_fpm[0], b.north_fpm[0]), max(a.north_fpm[1], b.north_fpm[1])),
            )
        )
    return DescentBoundsTable(h1.times, tuple(combined), label="combined")


@dataclass(frozen=True)
class AccelerationEstimate:
    fpm_per_s: float
    mps2: float
    g: float


def estimate_downward_acceleration(
    bounds: DescentBoundsTable, t1: float, t2: float, method: str = "midpoint"
) -> AccelerationEstimate:
    """Average downward acceleration between two bounded timestamps.

    ``method`` picks the representative rate per timestamp: the midpoint
    of the outer bounds (default), or the shared minima/maxima.
    """
    if t1 == t2:
        raise DomainError("need two distinct timestamps")
    r1, r2 = bounds.row(t1).outer_fpm, bounds.row(t2).outer_fpm
    pick = {
        "midpoint": lambda r: (r[0] + r[1]) / 2.0,
        "min": lambda r: r[0],
        "max": lambda r: r[1],
    }
    if method not in pick:
        raise DomainError(f"unknown method {method!r}")
    fpm_per_s = (pick[method](r2) - pick[method](r1)) / (t2 - t1)
    mps2 = fpm_per_s * FPM_TO_MPS
    return AccelerationEstimate(fpm_per_s, mps2, mps2 / G_MPS2)
