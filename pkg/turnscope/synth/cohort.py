"""Synthetic subject cohorts for the cross-sectional group analysis."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional

from turnscope.core.annotation import Group
from turnscope.core.skeleton import SkeletonSequence, TurnDirection
from turnscope.synth.generator import TurnGroundtruth, generate_turn
from turnscope.synth.noise import derived_rng
from turnscope.synth.params import RateProfile, SynthParams

logger = logging.getLogger(__name__)

MIN_SAMPLED_ANGLE_DEG = 1.0
MIN_SAMPLED_RATE_DEG_S = 1.0

_SUBJECT_PREFIX = {Group.PD: "PD", Group.CONTROL: "CO", Group.UNKNOWN: "S"}


@dataclass(frozen=True, eq=False)
class CohortClip:
    subject_id: str
    group: Group
    sequence: SkeletonSequence
    groundtruth: TurnGroundtruth


def generate_cohort(
    n_subjects: int,
    per_subject_turn_count: int,
    angle_mean_deg: float,
    angle_sd_deg: float,
    rate_mean: float,
    rate_sd: float,
    seed: int,
    group: Group | str = Group.UNKNOWN,
    base: Optional[SynthParams] = None,
    stream: int = 0,
) -> List[CohortClip]:
    """Sample one characteristic angle and rate per subject, then render its turns.

    Turns use a constant rate profile so the generated maximum and mean rates
    coincide; directions alternate per turn. Samples are floored at
    ``MIN_SAMPLED_ANGLE_DEG`` and ``MIN_SAMPLED_RATE_DEG_S``.
    """
    if n_subjects < 2:
        raise ValueError(f"n_subjects must be >= 2, got {n_subjects}")
    if per_subject_turn_count < 1:
        raise ValueError(f"per_subject_turn_count must be >= 1, got {per_subject_turn_count}")
    if angle_sd_deg < 0 or rate_sd < 0:
        raise ValueError("standard deviations must be >= 0")
    if rate_mean <= 0:
        raise ValueError(f"rate_mean must be > 0, got {rate_mean}")

    group = Group(group)
    base = base or SynthParams()
    rng = derived_rng(seed, stream)
    angles = rng.normal(angle_mean_deg, angle_sd_deg, size=n_subjects) if angle_sd_deg > 0 else [angle_mean_deg] * n_subjects
    rates = rng.normal(rate_mean, rate_sd, size=n_subjects) if rate_sd > 0 else [rate_mean] * n_subjects

    prefix = _SUBJECT_PREFIX[group]
    clips: List[CohortClip] = []
    for i in range(n_subjects):
        subject_id = f"{prefix}{i + 1:02d}"
        angle = max(float(angles[i]), MIN_SAMPLED_ANGLE_DEG)
        rate = max(float(rates[i]), MIN_SAMPLED_RATE_DEG_S)
        for k in range(per_subject_turn_count):
            params = SynthParams.model_validate(
                {
                    **base.model_dump(),
                    "turn_deg": angle,
                    "duration_s": angle / rate,
                    "rate_profile": RateProfile.CONSTANT,
                    "direction": TurnDirection.CCW if k % 2 == 0 else TurnDirection.CW,
                    "clip_id": f"{subject_id}_t{k + 1:02d}",
                }
            )
            seq, truth = generate_turn(params)
            clips.append(CohortClip(subject_id=subject_id, group=group, sequence=seq, groundtruth=truth))

    logger.info("[SYNTH] cohort %s: %d subjects x %d turns", group.value, n_subjects, per_subject_turn_count)
    return clips
