"""
Turning angle, angular speed and maximum angular velocity from pair vectors.

For every selected joint pair the angle between the pair vector at frame t and
frame t+1 is computed; the per-transition angle is the mean over the selected
pairs and the turning angle is the sum over transitions.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from turnscope.core.errors import DegenerateVector, EmptyInput, MissingJoint, NoUsableTransition, TooShort
from turnscope.core.joints import DEFAULT_PAIR_SET, JointPairSet
from turnscope.core.skeleton import SkeletonSequence
from turnscope.geometry.vectors import ABS_EPSILON, BodyVector, pair_vector_series

logger = logging.getLogger(__name__)


class StepMode(str, Enum):
    UNSIGNED_ARCSIN = "unsigned"
    SIGNED_ATAN2 = "signed"

    @staticmethod
    def parse(text: str) -> "StepMode":
        key = text.strip().lower()
        aliases = {"unsigned_arcsin": "unsigned", "signed_atan2": "signed"}
        return StepMode(aliases.get(key, key))


@dataclass(frozen=True, eq=False)
class TurnEstimate:
    theta_deg: float
    omega_deg_s: float
    w_max_deg_s: float
    steps_deg: np.ndarray
    pair_set: JointPairSet
    mode: StepMode
    skipped_transitions: int = 0
    duration_s: float = 0.0
    net_signed_deg: Optional[float] = None

    @property
    def used_transitions(self) -> int:
        return int(self.steps_deg.size)


def _cross_dot(a: np.ndarray, b: np.ndarray):
    cross = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    dot = a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1]
    return cross, dot


def step_angles(a: np.ndarray, b: np.ndarray, mode: StepMode) -> np.ndarray:
    """Vectorised step angle between rows of ``a`` and ``b`` (N, 2), degrees."""
    cross, dot = _cross_dot(a, b)
    if mode is StepMode.UNSIGNED_ARCSIN:
        norms = np.hypot(a[..., 0], a[..., 1]) * np.hypot(b[..., 0], b[..., 1])
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.clip(np.abs(cross) / norms, 0.0, 1.0)
        return np.degrees(np.arcsin(ratio))
    out = np.degrees(np.arctan2(cross, dot))
    # (-180, 180]
    return np.where(out == -180.0, 180.0, out)


def step_angle(v_a: BodyVector, v_b: BodyVector, mode: StepMode = StepMode.UNSIGNED_ARCSIN) -> float:
    for v in (v_a, v_b):
        if v.degenerate or v.magnitude < ABS_EPSILON:
            raise DegenerateVector(f"frame {v.frame_index}: {v.pair.value} vector is degenerate")
    return float(step_angles(v_a.as_array(), v_b.as_array(), StepMode(mode)))


def max_angular_velocity(steps_deg: Sequence[float] | np.ndarray, fps: float) -> float:
    """Largest per-transition rotation rate, max(|step|) * fps, in degrees/second."""
    steps = np.asarray(steps_deg, dtype=np.float64)
    if steps.size == 0:
        raise EmptyInput("max angular velocity needs at least one step")
    return float(np.max(np.abs(steps))) * float(fps)


def transition_steps(seq: SkeletonSequence, pairs: JointPairSet, mode: StepMode):
    """Per-pair step angles and the transition usability mask.

    Returns ``(steps, usable)``: ``steps`` is (len(pairs), T-1) and ``usable``
    marks transitions where every selected pair is computable in both frames.
    """
    T = seq.num_frames
    usable = np.ones(max(T - 1, 0), dtype=bool)
    rows: List[np.ndarray] = []
    for pair in pairs:
        vectors, ok = pair_vector_series(seq, pair)
        usable &= ok[:-1] & ok[1:]
        rows.append(step_angles(vectors[:-1], vectors[1:], mode))
    return np.vstack(rows), usable


def total_angle(
    seq: SkeletonSequence,
    pairs: JointPairSet = DEFAULT_PAIR_SET,
    mode: StepMode = StepMode.UNSIGNED_ARCSIN,
) -> TurnEstimate:
    mode = StepMode(mode)
    T = seq.num_frames
    if T < 2:
        raise TooShort(f"{seq.clip_id}: need at least 2 frames, got {T}")

    per_pair, usable = transition_steps(seq, pairs, mode)
    if not usable.any():
        raise NoUsableTransition(f"{seq.clip_id}: every transition has a missing or degenerate pair vector")

    skipped = int((~usable).sum())
    if skipped:
        logger.debug("[ANGLE] %s: skipped %d of %d transitions", seq.clip_id, skipped, T - 1)

    steps = per_pair[:, usable].mean(axis=0)
    steps.setflags(write=False)
    net = math.fsum(steps.tolist())
    theta = net if mode is StepMode.UNSIGNED_ARCSIN else abs(net)
    duration = (T - 1) / seq.fps
    omega = theta / duration
    # max rate bounds the mean rate; keep it so under last-bit rounding
    w_max = max(max_angular_velocity(steps, seq.fps), omega)

    return TurnEstimate(
        theta_deg=theta,
        omega_deg_s=omega,
        w_max_deg_s=w_max,
        steps_deg=steps,
        pair_set=pairs,
        mode=mode,
        skipped_transitions=skipped,
        duration_s=duration,
        net_signed_deg=net if mode is StepMode.SIGNED_ATAN2 else None,
    )


def first_last_angle(seq: SkeletonSequence, pairs: JointPairSet = DEFAULT_PAIR_SET) -> float:
    """Mean over pairs of the angle between the first and last usable pair vectors, in [0, 180]."""
    if seq.num_frames == 0:
        raise TooShort(f"{seq.clip_id}: empty sequence")
    series = [pair_vector_series(seq, pair) for pair in pairs]
    usable = np.logical_and.reduce([ok for _, ok in series])
    frames = np.flatnonzero(usable)
    if frames.size == 0:
        any_present = any(np.isfinite(vec).all(axis=1).any() for vec, _ in series)
        if any_present:
            raise DegenerateVector(f"{seq.clip_id}: no frame with every selected pair vector non-degenerate")
        raise MissingJoint(f"{seq.clip_id}: no frame with every selected pair present")

    first, last = int(frames[0]), int(frames[-1])
    angles = []
    for vectors, _ in series:
        angles.append(abs(float(step_angles(vectors[first], vectors[last], StepMode.SIGNED_ATAN2))))
    return math.fsum(angles) / len(angles)
