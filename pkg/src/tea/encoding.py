"""Price series ingestion: deltas, banding, antigen construction.

A raw price series becomes a sequence of banded price changes.  Banding
rounds every change outward to the nearest multiple of the configured
band width, so a rise of $0.40 with width $1 counts as a $1 rise.  The
banded sequence is the antigen the tracker population binds against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# A category sequence is a plain tuple of banded price changes.  Tuples
# keep them hashable, which matching and the memory pool rely on.
CategorySeq = tuple[float, ...]


class EncodingError(ValueError):
    """Raised for malformed price series or banding configuration."""


@dataclass(frozen=True)
class PricePoint:
    timestamp: float
    close: float


@dataclass(frozen=True)
class Antigen:
    seq: CategorySeq
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))

    def __len__(self):
        return len(self.seq)

    def prefix(self, k: int) -> "Antigen":
        """First k values, keeping the label."""
        return Antigen(self.seq[:k], self.label)


def price_changes(series: list[PricePoint]) -> list[float]:
    """Close-to-close deltas in chronological order.

    Requires at least two points and strictly increasing timestamps.
    """
    if len(series) < 2:
        raise EncodingError("need at least 2 price points, got %d" % len(series))
    for prev, cur in zip(series, series[1:]):
        if cur.timestamp <= prev.timestamp:
            raise EncodingError(
                "timestamps must be strictly increasing "
                f"({prev.timestamp} followed by {cur.timestamp})"
            )
    return [cur.close - prev.close for prev, cur in zip(series, series[1:])]


def band(delta: float, width: float) -> float:
    """Round a price change outward onto a multiple of the band width.

    Zero stays zero; positive deltas go up to the next multiple,
    negative deltas down to the previous one, so the magnitude never
    shrinks: a $0.40 rise bands to $1, a -$0.30 move with width $0.5
    bands to -$0.5.
    """
    if width <= 0:
        raise EncodingError(f"band width must be positive, got {width}")
    if delta == 0:
        return 0.0
    # round() absorbs float noise in the quotient so banding is
    # idempotent on its own outputs (e.g. widths like 0.1).
    steps = max(1, math.ceil(round(abs(delta) / width, 9)))
    return math.copysign(round(steps * width, 9), delta)


def encode(series: list[PricePoint], width: float = 1.0, label: str = "") -> Antigen:
    """Band the deltas of a price series into an antigen."""
    deltas = price_changes(series)
    return Antigen(tuple(band(d, width) for d in deltas), label)
