"""
Kinematic skeleton generator with analytic turning groundtruth.

The pelvis walks along its heading; hip, knee and shoulder pairs sit
perpendicular to the heading at their configured widths, every other joint
is a rigid offset. Skeletons are built z-up and permuted for other up axes so
the ground projection is the same for every convention.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from turnscope.core.joints import NUM_JOINTS, JointId
from turnscope.core.skeleton import SkeletonSequence, TurnDirection, UpAxis
from turnscope.synth.params import RateProfile, SynthParams, TurnSegment

logger = logging.getLogger(__name__)

GROUNDTRUTH_COLUMNS = ["clip_id", "turn_deg", "start_frame", "end_frame", "mean_rate", "max_rate", "direction"]

# joint heights in body units, z-up
_HEIGHTS: Dict[JointId, float] = {
    JointId.PELVIS: 1.00,
    JointId.RIGHT_HIP: 1.00,
    JointId.LEFT_HIP: 1.00,
    JointId.RIGHT_KNEE: 0.52,
    JointId.LEFT_KNEE: 0.52,
    JointId.RIGHT_ANKLE: 0.08,
    JointId.LEFT_ANKLE: 0.08,
    JointId.SPINE: 1.22,
    JointId.THORAX: 1.45,
    JointId.NECK: 1.55,
    JointId.HEAD: 1.70,
    JointId.LEFT_SHOULDER: 1.45,
    JointId.RIGHT_SHOULDER: 1.45,
    JointId.LEFT_ELBOW: 1.18,
    JointId.RIGHT_ELBOW: 1.18,
    JointId.LEFT_WRIST: 0.92,
    JointId.RIGHT_WRIST: 0.92,
}
_HEAD_FORWARD = 0.06

# z-up (a, b, c) -> target axis order
_AXIS_ORDER = {UpAxis.Z: (0, 1, 2), UpAxis.Y: (0, 2, 1), UpAxis.X: (2, 0, 1)}


@dataclass(frozen=True, eq=False)
class TurnGroundtruth:
    clip_id: str
    turn_deg: float
    start_frame: int
    end_frame: int
    direction: TurnDirection
    mean_rate_deg_s: float
    max_rate_deg_s: float
    duration_s: float
    heading_deg: np.ndarray

    def as_row(self) -> Dict[str, object]:
        return {
            "clip_id": self.clip_id,
            "turn_deg": self.turn_deg,
            "start_frame": self.start_frame,
            "end_frame": self.end_frame,
            "mean_rate": self.mean_rate_deg_s,
            "max_rate": self.max_rate_deg_s,
            "direction": self.direction,
        }


def _lateral(heading_rad: np.ndarray) -> np.ndarray:
    """Unit vector pointing to the body's left, (T, 2)."""
    return np.stack([-np.sin(heading_rad), np.cos(heading_rad)], axis=1)


def _lagged(heading: np.ndarray, lag: int) -> np.ndarray:
    if lag <= 0:
        return heading
    if lag >= heading.size:
        return np.full_like(heading, heading[0])
    return np.concatenate([np.full(lag, heading[0]), heading[:-lag]])


def render_skeleton(
    heading_deg: np.ndarray,
    params: SynthParams,
    clip_id: str,
) -> SkeletonSequence:
    """Place all 17 joints for a per-frame pelvis heading."""
    T = heading_deg.size
    hip_h = np.radians(heading_deg)
    seg_h = np.radians(_lagged(heading_deg, params.en_bloc_lag_frames))

    forward = np.stack([np.cos(hip_h), np.sin(hip_h)], axis=1)
    step = params.walk_speed / params.fps
    pelvis = np.zeros((T, 2))
    if T > 1:
        pelvis[1:] = np.cumsum(forward[:-1] * step, axis=0)

    hip_l = _lateral(hip_h)
    seg_l = _lateral(seg_h)
    ground = np.empty((T, NUM_JOINTS, 2))
    lateral_of = {
        JointId.PELVIS: (hip_l, 0.0),
        JointId.SPINE: (hip_l, 0.0),
        JointId.THORAX: (seg_l, 0.0),
        JointId.NECK: (seg_l, 0.0),
        JointId.HEAD: (seg_l, 0.0),
        JointId.LEFT_HIP: (hip_l, params.hip_width / 2),
        JointId.RIGHT_HIP: (hip_l, -params.hip_width / 2),
        JointId.LEFT_KNEE: (seg_l, params.knee_width / 2),
        JointId.RIGHT_KNEE: (seg_l, -params.knee_width / 2),
        JointId.LEFT_ANKLE: (seg_l, params.knee_width / 2),
        JointId.RIGHT_ANKLE: (seg_l, -params.knee_width / 2),
        JointId.LEFT_SHOULDER: (seg_l, params.shoulder_width / 2),
        JointId.RIGHT_SHOULDER: (seg_l, -params.shoulder_width / 2),
        JointId.LEFT_ELBOW: (seg_l, params.shoulder_width / 2),
        JointId.RIGHT_ELBOW: (seg_l, -params.shoulder_width / 2),
        JointId.LEFT_WRIST: (seg_l, params.shoulder_width / 2),
        JointId.RIGHT_WRIST: (seg_l, -params.shoulder_width / 2),
    }
    for joint, (lateral, offset) in lateral_of.items():
        ground[:, int(joint)] = pelvis + offset * lateral
    ground[:, int(JointId.HEAD)] += _HEAD_FORWARD * np.stack([np.cos(seg_h), np.sin(seg_h)], axis=1)

    heights = np.array([_HEIGHTS[JointId(j)] for j in range(NUM_JOINTS)])
    zup = np.concatenate([ground, np.broadcast_to(heights[None, :, None], (T, NUM_JOINTS, 1))], axis=2)
    positions = zup[:, :, list(_AXIS_ORDER[params.up_axis])]
    return SkeletonSequence.build(positions, fps=params.fps, up_axis=params.up_axis, clip_id=clip_id)


def _frames(seconds: float, fps: float) -> int:
    return int(round(seconds * fps))


def heading_track(
    segments: Sequence[TurnSegment],
    params: SynthParams,
) -> Tuple[np.ndarray, List[Tuple[int, int, TurnSegment]]]:
    """Per-frame heading for a walk and the [start, end) frame span of each turn."""
    heading = [params.initial_heading_deg]
    spans: List[Tuple[int, int, TurnSegment]] = []
    for seg in segments:
        heading.extend([heading[-1]] * _frames(seg.lead_s, params.fps))
        n = max(1, _frames(seg.duration_s, params.fps))
        start = len(heading) - 1
        base = heading[-1]
        x = np.arange(1, n + 1) / n
        sign = seg.direction.sign
        heading.extend((base + sign * seg.turn_deg * seg.rate_profile.progress(x)).tolist())
        spans.append((start, start + n + 1, seg))
    heading.extend([heading[-1]] * _frames(params.post_walk_s, params.fps))
    return np.asarray(heading, dtype=np.float64), spans


def generate_walk(
    segments: Sequence[TurnSegment],
    params: SynthParams | None = None,
) -> Tuple[SkeletonSequence, List[TurnGroundtruth]]:
    """A straight walk with the given turns embedded; one groundtruth record per turn.

    Body shape, frame rate, lag, trailing walk and axis convention come from
    ``params``; its own turn fields are not used.
    """
    params = params or SynthParams()
    heading, spans = heading_track(segments, params)
    seq = render_skeleton(heading, params, params.clip_id)

    truths = []
    for k, (start, end, seg) in enumerate(spans):
        duration = (end - start - 1) / params.fps
        mean_rate = seg.turn_deg / duration
        truths.append(
            TurnGroundtruth(
                clip_id=params.clip_id if len(spans) == 1 else f"{params.clip_id}_turn{k}",
                turn_deg=seg.turn_deg,
                start_frame=start,
                end_frame=end,
                direction=seg.direction,
                mean_rate_deg_s=mean_rate,
                max_rate_deg_s=mean_rate * seg.rate_profile.peak_factor,
                duration_s=duration,
                heading_deg=heading,
            )
        )
    logger.debug("[SYNTH] %s: %d frames, %d turn(s)", params.clip_id, seq.num_frames, len(truths))
    return seq, truths


def generate_turn(p: SynthParams) -> Tuple[SkeletonSequence, TurnGroundtruth]:
    segment = TurnSegment(
        turn_deg=p.turn_deg,
        duration_s=p.duration_s,
        direction=p.direction,
        rate_profile=p.rate_profile,
        lead_s=p.pre_walk_s,
    )
    seq, truths = generate_walk([segment], p)
    return seq, truths[0]


def rotate_about_up(seq: SkeletonSequence, angle_deg: float) -> SkeletonSequence:
    """Rotate every joint about the up axis through the origin."""
    a, b = seq.up_axis.ground_indices
    c, s = math.cos(math.radians(angle_deg)), math.sin(math.radians(angle_deg))
    pos = np.array(seq.positions)
    x, y = pos[..., a].copy(), pos[..., b].copy()
    pos[..., a] = c * x - s * y
    pos[..., b] = s * x + c * y
    return seq.with_positions(pos)


__all__ = [
    "GROUNDTRUTH_COLUMNS",
    "RateProfile",
    "TurnGroundtruth",
    "generate_turn",
    "generate_walk",
    "heading_track",
    "render_skeleton",
    "rotate_about_up",
]
