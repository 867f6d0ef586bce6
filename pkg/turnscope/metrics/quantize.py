from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

BIN_WIDTH = 45
MIN_BIN = 45
MAX_BIN = 360
HALF_BIN = BIN_WIDTH / 2.0


@dataclass(frozen=True, order=True)
class AngleBin:
    value: int

    @staticmethod
    def build(value: float) -> "AngleBin":
        if not math.isfinite(value) or value % BIN_WIDTH != 0 or not MIN_BIN <= value <= MAX_BIN:
            raise ValueError(f"angle bin must be a multiple of {BIN_WIDTH} in [{MIN_BIN}, {MAX_BIN}], got {value}")
        return AngleBin(value=int(value))

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class QuantizedAngle:
    """Result of quantising a continuous angle; ``bin`` is None below half a bin."""

    bin: Optional[AngleBin]
    clamped: bool = False

    @property
    def sub_threshold(self) -> bool:
        return self.bin is None

    @property
    def label(self) -> str:
        return "sub" if self.bin is None else str(self.bin.value)


SUB_THRESHOLD = QuantizedAngle(bin=None)


def quantize_angle(theta_deg: float) -> QuantizedAngle:
    """Nearest 45° bin; exact midpoints go to the larger bin."""
    if not math.isfinite(theta_deg):
        raise ValueError(f"cannot quantize non-finite angle {theta_deg}")
    if theta_deg < 0:
        raise ValueError(f"cannot quantize negative angle {theta_deg}")
    if theta_deg < HALF_BIN:
        return SUB_THRESHOLD
    k = math.floor(theta_deg / BIN_WIDTH + 0.5)
    value = k * BIN_WIDTH
    if value > MAX_BIN:
        return QuantizedAngle(bin=AngleBin(MAX_BIN), clamped=True)
    return QuantizedAngle(bin=AngleBin(value))


def parse_bin_label(text: str) -> QuantizedAngle:
    """Inverse of ``QuantizedAngle.label``."""
    key = text.strip()
    if key == "sub":
        return SUB_THRESHOLD
    return QuantizedAngle(bin=AngleBin.build(float(key)))
