"""Ground-plane projection and frontal-plane joint-pair vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from turnscope.core.errors import DegenerateVector, MissingJoint
from turnscope.core.joints import JointPair
from turnscope.core.skeleton import SkeletonFrame, SkeletonSequence, UpAxis

ABS_EPSILON = 1e-12
REL_EPSILON = 1e-9


@dataclass(frozen=True)
class BodyVector:
    x: float
    y: float
    frame_index: int
    pair: JointPair
    degenerate: bool = False

    @property
    def magnitude(self) -> float:
        return math.hypot(self.x, self.y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=np.float64)


def project_ground(frame: SkeletonFrame, up_axis: UpAxis | str) -> np.ndarray:
    """Drop the vertical component of every joint: (17, 3) -> (17, 2). Missing stays NaN."""
    up = UpAxis(up_axis)
    return frame.positions[:, list(up.ground_indices)]


def project_sequence(seq: SkeletonSequence) -> np.ndarray:
    """(T, 17, 3) -> (T, 17, 2)."""
    return seq.positions[:, :, list(seq.up_axis.ground_indices)]


def degeneracy_threshold(magnitudes: np.ndarray) -> float:
    finite = magnitudes[np.isfinite(magnitudes)]
    if finite.size == 0:
        return ABS_EPSILON
    return max(ABS_EPSILON, REL_EPSILON * float(np.median(finite)))


def pair_vector(
    frame: SkeletonFrame,
    pair: JointPair,
    up_axis: UpAxis | str,
    frame_index: int = 0,
    threshold: Optional[float] = None,
) -> BodyVector:
    """Left joint minus right joint, projected on the ground plane."""
    left, right = pair.joints
    if frame.is_missing(left) or frame.is_missing(right):
        missing = left if frame.is_missing(left) else right
        raise MissingJoint(f"frame {frame_index}: {missing.joint_name} missing for {pair.value} vector")
    ground = project_ground(frame, up_axis)
    vx, vy = (ground[int(left)] - ground[int(right)]).tolist()
    mag = math.hypot(vx, vy)
    if mag < (ABS_EPSILON if threshold is None else threshold):
        raise DegenerateVector(f"frame {frame_index}: {pair.value} vector magnitude {mag:.3g} below epsilon")
    return BodyVector(x=vx, y=vy, frame_index=frame_index, pair=pair)


def pair_vector_series(seq: SkeletonSequence, pair: JointPair) -> Tuple[np.ndarray, np.ndarray]:
    """Pair vectors for every frame and a usability mask.

    Returns ``(vectors, usable)`` where ``vectors`` is (T, 2) with NaN where a
    joint is missing, and ``usable`` is False for missing or degenerate frames.
    Degeneracy is judged against the clip's median pair magnitude.
    """
    ground = project_sequence(seq)
    left, right = pair.joints
    vectors = ground[:, int(left)] - ground[:, int(right)]
    magnitudes = np.hypot(vectors[:, 0], vectors[:, 1])
    threshold = degeneracy_threshold(magnitudes)
    with np.errstate(invalid="ignore"):
        usable = np.isfinite(magnitudes) & (magnitudes >= threshold)
    return vectors, usable
