"""
Segmentation of untrimmed skeleton sequences into turning episodes.

Signed step angles are taken on a smoothed pair-vector series. An episode
opens when the rotation rate passes the gate, extends while rotation keeps
the same sense, and closes on a reversal beyond tolerance or on a pause
longer than the gap limit. It is kept when its net rotation reaches the
turn threshold.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from turnscope.config.models import DetectConfig
from turnscope.core.errors import TooShort
from turnscope.core.skeleton import SkeletonSequence, TurnDirection
from turnscope.geometry.angles import StepMode, step_angles
from turnscope.geometry.vectors import degeneracy_threshold, pair_vector_series

logger = logging.getLogger(__name__)

EPISODE_COLUMNS = ["clip_id", "start_frame", "end_frame", "accumulated_deg", "direction", "mean_rate_deg_s"]


@dataclass(frozen=True)
class TurnEpisode:
    """Frames [start_frame, end_frame) of one detected turn."""

    start_frame: int
    end_frame: int
    accumulated_deg: float
    direction: TurnDirection
    mean_rate_deg_s: float
    index: int = 0

    @staticmethod
    def build(
        start_frame: int,
        end_frame: int,
        accumulated_deg: float,
        direction: TurnDirection | str,
        mean_rate_deg_s: float,
        index: int = 0,
    ) -> "TurnEpisode":
        if start_frame < 0 or end_frame - start_frame < 2:
            raise ValueError(f"episode [{start_frame}, {end_frame}) must span at least 2 frames")
        if not math.isfinite(accumulated_deg) or accumulated_deg < 0:
            raise ValueError(f"accumulated_deg must be finite and >= 0, got {accumulated_deg}")
        return TurnEpisode(
            start_frame=int(start_frame),
            end_frame=int(end_frame),
            accumulated_deg=float(accumulated_deg),
            direction=TurnDirection(direction),
            mean_rate_deg_s=float(mean_rate_deg_s),
            index=int(index),
        )

    @property
    def num_frames(self) -> int:
        return self.end_frame - self.start_frame

    def as_row(self, clip_id: str) -> dict:
        return {
            "clip_id": clip_id,
            "start_frame": self.start_frame,
            "end_frame": self.end_frame,
            "accumulated_deg": self.accumulated_deg,
            "direction": self.direction,
            "mean_rate_deg_s": self.mean_rate_deg_s,
        }


def smooth_vectors(vectors: np.ndarray, usable: np.ndarray, window: int) -> Tuple[np.ndarray, np.ndarray]:
    """Centered moving average of (T, 2) vector components over usable frames only.

    Returns the smoothed vectors and a mask of frames that had at least one
    usable neighbour inside the window and a non-degenerate smoothed vector.
    """
    T = vectors.shape[0]
    width = min(int(window), T if T % 2 else T - 1)
    width = max(width, 1)
    kernel = np.ones(width)

    weights = usable.astype(np.float64)
    values = np.where(usable[:, None], vectors, 0.0)
    counts = np.convolve(weights, kernel, mode="same")
    sums = np.stack([np.convolve(values[:, k], kernel, mode="same") for k in range(2)], axis=1)

    with np.errstate(invalid="ignore", divide="ignore"):
        smoothed = sums / counts[:, None]
    has_data = counts > 0
    smoothed[~has_data] = np.nan

    magnitudes = np.hypot(smoothed[:, 0], smoothed[:, 1])
    threshold = degeneracy_threshold(magnitudes)
    with np.errstate(invalid="ignore"):
        ok = has_data & (magnitudes >= threshold)
    return smoothed, ok


def signed_steps(seq: SkeletonSequence, cfg: DetectConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Per-transition signed step angle (mean over pairs) and a validity mask, length T-1.

    Invalid transitions carry a step of 0.
    """
    T = seq.num_frames
    valid = np.ones(T - 1, dtype=bool)
    rows: List[np.ndarray] = []
    for pair in cfg.pair_set:
        vectors, usable = pair_vector_series(seq, pair)
        smoothed, ok = smooth_vectors(vectors, usable, cfg.smooth_window_frames)
        valid &= ok[:-1] & ok[1:]
        rows.append(step_angles(smoothed[:-1], smoothed[1:], StepMode.SIGNED_ATAN2))
    steps = np.vstack(rows).mean(axis=0)
    steps = np.where(valid, steps, 0.0)
    return steps, valid


def _scan_from(
    start: int, steps: np.ndarray, valid: np.ndarray, fps: float, cfg: DetectConfig
) -> Optional[Tuple[int, int]]:
    """Find the next episode candidate at or after transition ``start``.

    Returns (first_active, last_active) transition indices, or None.
    """
    n = steps.size
    gate = cfg.min_rate_deg_s / fps

    t = start
    while t < n and not (valid[t] and abs(steps[t]) > gate):
        t += 1
    if t >= n:
        return None

    sign = 1.0 if steps[t] > 0 else -1.0
    first_active = last_active = t
    acc = peak = abs(steps[t])
    gap = 0
    for u in range(t + 1, n):
        step = sign * steps[u]
        acc += step
        peak = max(peak, acc)
        if valid[u] and step > gate:
            last_active = u
            gap = 0
            continue
        gap += 1
        if peak - acc > cfg.reversal_tolerance_deg or gap > cfg.max_gap_frames:
            break
    return first_active, last_active


def detect_turns(seq: SkeletonSequence, cfg: Optional[DetectConfig] = None) -> List[TurnEpisode]:
    cfg = cfg or DetectConfig()
    T = seq.num_frames
    if T < 2:
        raise TooShort(f"{seq.clip_id}: need at least 2 frames, got {T}")

    steps, valid = signed_steps(seq, cfg)
    episodes: List[TurnEpisode] = []
    cursor = 0
    while cursor < steps.size:
        found = _scan_from(cursor, steps, valid, seq.fps, cfg)
        if found is None:
            break
        first_active, last_active = found
        net = math.fsum(steps[first_active:last_active + 1].tolist())
        magnitude = abs(net)
        if magnitude >= cfg.min_turn_deg:
            start_frame, end_frame = first_active, last_active + 2
            duration = (end_frame - start_frame - 1) / seq.fps
            episodes.append(
                TurnEpisode.build(
                    start_frame=start_frame,
                    end_frame=end_frame,
                    accumulated_deg=magnitude,
                    direction=TurnDirection.from_sign(net),
                    mean_rate_deg_s=magnitude / duration,
                    index=len(episodes),
                )
            )
        else:
            logger.debug(
                "[DETECT] %s: candidate [%d, %d) dropped at %.3g deg",
                seq.clip_id, first_active, last_active + 2, magnitude,
            )
        cursor = last_active + 2

    logger.info("[DETECT] %s: %d episode(s) in %d frames", seq.clip_id, len(episodes), T)
    return episodes


def trim_episode(seq: SkeletonSequence, ep: TurnEpisode) -> SkeletonSequence:
    if ep.start_frame < 0 or ep.end_frame > seq.num_frames or ep.start_frame >= ep.end_frame:
        raise ValueError(
            f"{seq.clip_id}: episode [{ep.start_frame}, {ep.end_frame}) outside {seq.num_frames} frames"
        )
    return seq.slice(ep.start_frame, ep.end_frame, clip_id=f"{seq.clip_id}_ep{ep.index}")
