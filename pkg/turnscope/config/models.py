"""Validated configuration objects shared by the detection step and the CLI."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from turnscope.core.errors import ConfigError
from turnscope.core.joints import DEFAULT_PAIR_SET, JointPair, JointPairSet
from turnscope.core.skeleton import UpAxis
from turnscope.geometry.angles import StepMode

M = TypeVar("M", bound=BaseModel)


def coerce_pairs(value: Any) -> Tuple[JointPair, ...]:
    if isinstance(value, JointPairSet):
        return value.pairs
    if isinstance(value, str):
        return JointPairSet.parse(value).pairs
    return JointPairSet.build(value).pairs


def describe_validation_error(exc: ValidationError, prefix: str = "") -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err.get("loc", ()))
        if prefix:
            loc = f"{prefix}.{loc}" if loc else prefix
        parts.append(f"{loc}: {err.get('msg')}")
    return "; ".join(parts)


def validated(model: Type[M], data: Dict[str, Any], prefix: str = "") -> M:
    """Build ``model`` from ``data``, reporting failures as ConfigError naming the field."""
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(describe_validation_error(exc, prefix)) from None


class DetectConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    min_turn_deg: float = Field(45.0, gt=0)
    pairs: Tuple[JointPair, ...] = (JointPair.HIP,)
    smooth_window_frames: int = Field(5, gt=0)
    min_rate_deg_s: float = Field(5.0, gt=0)
    max_gap_frames: int = Field(10, gt=0)
    reversal_tolerance_deg: float = Field(10.0, gt=0)

    @field_validator("pairs", mode="before")
    @classmethod
    def _parse_pairs(cls, value: Any) -> Tuple[JointPair, ...]:
        return coerce_pairs(value)

    @field_validator("smooth_window_frames")
    @classmethod
    def _odd_window(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError("smooth window must be odd")
        return value

    @property
    def pair_set(self) -> JointPairSet:
        return JointPairSet.build(self.pairs)


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    pairs: Tuple[JointPair, ...] = DEFAULT_PAIR_SET.pairs
    mode: StepMode = StepMode.UNSIGNED_ARCSIN
    detect: DetectConfig = Field(default_factory=DetectConfig)
    out_dir: Path = Path("turnscope_out")
    jobs: int = Field(1, ge=1)
    seed: int = 0
    up_override: Optional[UpAxis] = None

    @field_validator("pairs", mode="before")
    @classmethod
    def _parse_pairs(cls, value: Any) -> Tuple[JointPair, ...]:
        return coerce_pairs(value)

    @field_validator("mode", mode="before")
    @classmethod
    def _parse_mode(cls, value: Any) -> StepMode:
        return value if isinstance(value, StepMode) else StepMode.parse(str(value))

    @property
    def pair_set(self) -> JointPairSet:
        return JointPairSet.build(self.pairs)
