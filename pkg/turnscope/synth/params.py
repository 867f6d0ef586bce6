"""Parameter models for the synthetic turning-motion generator."""

from __future__ import annotations

from enum import Enum
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from turnscope.core.skeleton import TurnDirection, UpAxis


class RateProfile(str, Enum):
    CONSTANT = "constant"
    SMOOTHSTEP = "smoothstep"

    def progress(self, x: np.ndarray) -> np.ndarray:
        """Fraction of the turn completed at normalised time ``x`` in [0, 1]."""
        if self is RateProfile.CONSTANT:
            return x
        return x * x * (3.0 - 2.0 * x)

    @property
    def peak_factor(self) -> float:
        """Peak rate over mean rate."""
        return 1.0 if self is RateProfile.CONSTANT else 1.5


class SynthParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    turn_deg: float = Field(90.0, ge=0)
    duration_s: float = Field(1.5, gt=0)
    fps: float = Field(50.0, gt=0, allow_inf_nan=False)
    hip_width: float = Field(0.25, gt=0)
    knee_width: float = Field(0.20, gt=0)
    shoulder_width: float = Field(0.38, gt=0)
    en_bloc_lag_frames: int = Field(0, ge=0)
    pre_walk_s: float = Field(1.0, ge=0)
    post_walk_s: float = Field(1.0, ge=0)
    rate_profile: RateProfile = RateProfile.CONSTANT
    direction: TurnDirection = TurnDirection.CCW
    up_axis: UpAxis = UpAxis.Z
    walk_speed: float = Field(1.0, ge=0)
    initial_heading_deg: float = 0.0
    clip_id: str = "synth"

    @model_validator(mode="after")
    def _lag_within_turn(self) -> "SynthParams":
        if self.en_bloc_lag_frames and self.en_bloc_lag_frames >= self.turn_frames:
            raise ValueError(
                f"en_bloc_lag_frames ({self.en_bloc_lag_frames}) must be below the turn frame count ({self.turn_frames})"
            )
        return self

    @property
    def turn_frames(self) -> int:
        """Number of frame transitions spanned by the turn."""
        return max(1, int(round(self.duration_s * self.fps)))


class TurnSegment(BaseModel):
    """One turn inside a longer walk, preceded by ``lead_s`` of straight walking."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    turn_deg: float = Field(ge=0)
    duration_s: float = Field(gt=0)
    direction: TurnDirection = TurnDirection.CCW
    rate_profile: RateProfile = RateProfile.CONSTANT
    lead_s: float = Field(0.0, ge=0)


class NoiseParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    jitter_sd: float = Field(0.0, ge=0, allow_inf_nan=False)
    dropout_prob: float = Field(0.0, ge=0, lt=1)
    seed: int = Field(0, ge=0, lt=2**64)
