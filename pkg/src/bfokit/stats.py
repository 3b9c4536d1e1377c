"""BFO error statistics and quality-based outlier flagging.

The BFO error convention is predicted minus measured. Error statistics
over reference flights are summarized by sample moments and strict
min/max bounds; individual bursts are flagged untrustworthy when they
show both a non-zero bit error rate and a clear carrier-to-noise drop
relative to neighboring bursts.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

DEFAULT_CN0_DROP_DB = 3.0
DEFAULT_CN0_WINDOW = 5


class Channel(str, Enum):
    R = "R"
    T = "T"
    C = "C"
    P = "P"


class MessageType(str, Enum):
    LOGON_REQUEST = "logon_request"
    LOGON_ACK = "logon_ack"
    DATA = "data"
    PHONE = "phone"
    INTERROGATION = "interrogation"
    OTHER = "other"


@dataclass(frozen=True)
class BfoMeasurement:
    """One logged burst."""

    timestamp: float
    channel: Channel
    message_type: MessageType
    bfo_hz: float
    bto_us: float | None = None
    ber: float = 0.0
    cn0_dbhz: float = 0.0
    signal_db: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.bfo_hz):
            raise DomainError("BFO must be finite")
        if self.ber < 0:
            raise DomainError("BER must be >= 0")


@dataclass(frozen=True)
class ErrorStats:
    mean_hz: float
    std_hz: float
    min_hz: float
    max_hz: float
    count: int


@dataclass(frozen=True)
class NoiseBounds:
    """Strict bounds on the BFO error (predicted minus measured), Hz."""

    lower_hz: float
    upper_hz: float

    def __post_init__(self):
        if self.lower_hz > self.upper_hz:
            raise DomainError("noise bounds out of order")


def bfo_error(predicted_hz: float, measured_hz: float) -> float:
    """BFO error: predicted minus measured, Hz."""
    return predicted_hz - measured_hz


def compute_error_stats(errors) -> ErrorStats:
    """Sample mean/std (n-1 denominator), min and max of BFO errors."""
    values = [float(e) for e in errors]
    if len(values) < 2:
        raise DomainError("error statistics need at least 2 samples")
    return ErrorStats(
        mean_hz=statistics.fmean(values),
        std_hz=statistics.stdev(values),
        min_hz=min(values),
        max_hz=max(values),
        count=len(values),
    )


def flag_outliers(
    measurements,
    cn0_drop_threshold_db: float = DEFAULT_CN0_DROP_DB,
    window: int = DEFAULT_CN0_WINDOW,
) -> list[bool]:
    """Flag bursts whose BFO should not be trusted.

    A burst is flagged iff it has non-zero BER *and* its C/N0 sits at
    least ``cn0_drop_threshold_db`` below the median C/N0 of its
    neighboring bursts (up to ``window`` bursts centered on it, self
    excluded). Zero-BER bursts are never flagged.
    """
    ms = list(measurements)
    half = window // 2
    flags = []
    for i, m in enumerate(ms):
        if m.ber <= 0:
            flags.append(False)
            continue
        neighbors = [x.cn0_dbhz for j, x in enumerate(ms) if j != i and abs(j - i) <= half]
        if not neighbors:
            flags.append(False)
            continue
        drop = statistics.median(neighbors) - m.cn0_dbhz
        flags.append(drop >= cn0_drop_threshold_db)
    return flags
