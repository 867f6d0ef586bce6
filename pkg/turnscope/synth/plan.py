"""
JSON plan files describing a synthetic dataset.

A plan has optional ``defaults`` (SynthParams fields), explicit ``clips``,
a ``random_turns`` block, ``cohorts`` blocks and a ``noise`` block. Clip
metadata (subject, group, scenario, location) rides along so the outputs
can be evaluated and tested like real annotated data.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from turnscope.config.models import validated
from turnscope.core.annotation import Annotation, Group, Scenario
from turnscope.core.errors import ConfigError
from turnscope.core.skeleton import SkeletonSequence, TurnDirection
from turnscope.metrics.quantize import quantize_angle
from turnscope.synth.cohort import generate_cohort
from turnscope.synth.generator import TurnGroundtruth, generate_turn
from turnscope.synth.noise import add_noise, derive_seed, derived_rng
from turnscope.synth.params import NoiseParams, RateProfile, SynthParams

logger = logging.getLogger(__name__)

METADATA_KEYS = ("subject_id", "group", "scenario", "location")
RANDOM_STREAM = 1
COHORT_STREAM_BASE = 100


class RandomTurns(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    count: int = Field(ge=1)
    angle_min_deg: float = Field(45.0, ge=0)
    angle_max_deg: float = Field(225.0, ge=0)
    rate_min_deg_s: float = Field(30.0, gt=0)
    rate_max_deg_s: float = Field(90.0, gt=0)
    rate_profile: RateProfile = RateProfile.CONSTANT
    random_direction: bool = True
    subject_id: str = ""
    group: Group = Group.UNKNOWN
    scenario: Scenario = Scenario.UNKNOWN
    location: str = ""

    @model_validator(mode="after")
    def _ordered_ranges(self) -> "RandomTurns":
        if self.angle_max_deg < self.angle_min_deg:
            raise ValueError("angle_max_deg must be >= angle_min_deg")
        if self.rate_max_deg_s < self.rate_min_deg_s:
            raise ValueError("rate_max_deg_s must be >= rate_min_deg_s")
        return self


class CohortSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    group: Group
    n_subjects: int = Field(ge=2)
    turns_per_subject: int = Field(1, ge=1)
    angle_mean_deg: float = Field(gt=0)
    angle_sd_deg: float = Field(0.0, ge=0)
    rate_mean_deg_s: float = Field(gt=0)
    rate_sd_deg_s: float = Field(0.0, ge=0)
    scenario: Scenario = Scenario.UNKNOWN
    location: str = ""


class SynthPlan(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    defaults: Dict[str, Any] = Field(default_factory=dict)
    clips: List[Dict[str, Any]] = Field(default_factory=list)
    random_turns: Optional[RandomTurns] = None
    cohorts: List[CohortSpec] = Field(default_factory=list)
    noise: Optional[NoiseParams] = None


@dataclass(frozen=True, eq=False)
class PlannedClip:
    sequence: SkeletonSequence
    groundtruth: TurnGroundtruth
    subject_id: str = ""
    group: Group = Group.UNKNOWN
    scenario: Scenario = Scenario.UNKNOWN
    location: str = ""

    @property
    def clip_id(self) -> str:
        return self.sequence.clip_id

    def annotation(self) -> Optional[Annotation]:
        """Annotation with the quantized groundtruth label; None below the first bin."""
        label = quantize_angle(self.groundtruth.turn_deg).bin
        if label is None:
            return None
        return Annotation.build(
            clip_id=self.clip_id,
            label_bin=label.value,
            duration_s=self.groundtruth.duration_s,
            scenario=self.scenario,
            location=self.location,
            subject_id=self.subject_id,
            group=self.group,
            speed_deg_s=self.groundtruth.mean_rate_deg_s,
        )


def parse_plan(data: Any) -> SynthPlan:
    if not isinstance(data, dict):
        raise ConfigError("plan must be a JSON object")
    plan = validated(SynthPlan, data)
    validated(SynthParams, plan.defaults, prefix="defaults")
    return plan


def load_plan(path: str | Path) -> SynthPlan:
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{p}: cannot read plan: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    logger.info("[LOAD] plan %s", p)
    return parse_plan(data)


def _explicit_clip(plan: SynthPlan, index: int, spec: Dict[str, Any]) -> PlannedClip:
    meta = {k: spec[k] for k in METADATA_KEYS if k in spec}
    fields = {k: v for k, v in spec.items() if k not in METADATA_KEYS}
    fields.setdefault("clip_id", f"clip{index:03d}")
    params = validated(SynthParams, {**plan.defaults, **fields}, prefix=f"clips.{index}")
    try:
        group = Group(meta.get("group", Group.UNKNOWN))
        scenario = Scenario(meta.get("scenario", Scenario.UNKNOWN))
    except ValueError as exc:
        raise ConfigError(f"clips.{index}: {exc}") from None
    seq, truth = generate_turn(params)
    return PlannedClip(seq, truth, str(meta.get("subject_id", "")), group, scenario, str(meta.get("location", "")))


def _random_clips(plan: SynthPlan, block: RandomTurns, seed: int) -> List[PlannedClip]:
    rng = derived_rng(seed, RANDOM_STREAM)
    angles = rng.uniform(block.angle_min_deg, block.angle_max_deg, size=block.count)
    rates = rng.uniform(block.rate_min_deg_s, block.rate_max_deg_s, size=block.count)
    flips = rng.random(block.count) < 0.5
    out = []
    for i in range(block.count):
        direction = TurnDirection.CW if (block.random_direction and flips[i]) else TurnDirection.CCW
        fields = {
            **plan.defaults,
            "turn_deg": float(angles[i]),
            "duration_s": float(angles[i] / rates[i]) if angles[i] > 0 else plan.defaults.get("duration_s", 1.0),
            "rate_profile": block.rate_profile,
            "direction": direction,
            "clip_id": f"rand{i:03d}",
        }
        params = validated(SynthParams, fields, prefix=f"random_turns[{i}]")
        seq, truth = generate_turn(params)
        out.append(PlannedClip(seq, truth, block.subject_id, block.group, block.scenario, block.location))
    return out


def expand_plan(plan: SynthPlan, seed: int = 0) -> List[PlannedClip]:
    """Every clip the plan describes, in plan order; deterministic per seed."""
    base = validated(SynthParams, plan.defaults, prefix="defaults")
    clips = [_explicit_clip(plan, i, spec) for i, spec in enumerate(plan.clips)]
    if plan.random_turns is not None:
        clips.extend(_random_clips(plan, plan.random_turns, seed))
    for j, cohort in enumerate(plan.cohorts):
        for member in generate_cohort(
            n_subjects=cohort.n_subjects,
            per_subject_turn_count=cohort.turns_per_subject,
            angle_mean_deg=cohort.angle_mean_deg,
            angle_sd_deg=cohort.angle_sd_deg,
            rate_mean=cohort.rate_mean_deg_s,
            rate_sd=cohort.rate_sd_deg_s,
            seed=seed,
            group=cohort.group,
            base=base,
            stream=COHORT_STREAM_BASE + j,
        ):
            clips.append(
                PlannedClip(member.sequence, member.groundtruth, member.subject_id, member.group,
                            cohort.scenario, cohort.location)
            )

    seen = set()
    for clip in clips:
        if clip.clip_id in seen:
            raise ConfigError(f"duplicate clip_id {clip.clip_id!r} in plan")
        seen.add(clip.clip_id)

    if plan.noise is not None:
        noisy = []
        for i, clip in enumerate(clips):
            params = plan.noise.model_copy(update={"seed": derive_seed(seed, plan.noise.seed, i)})
            noisy.append(
                PlannedClip(add_noise(clip.sequence, params), clip.groundtruth, clip.subject_id,
                            clip.group, clip.scenario, clip.location)
            )
        clips = noisy

    logger.info("[SYNTH] plan expanded to %d clip(s)", len(clips))
    return clips
