from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from turnscope.core.joints import NUM_JOINTS, JointId


class UpAxis(str, Enum):
    X = "x"
    Y = "y"
    Z = "z"

    @property
    def index(self) -> int:
        return "xyz".index(self.value)

    @property
    def ground_indices(self) -> tuple[int, int]:
        """Remaining coordinate indices, in original order."""
        return tuple(i for i in range(3) if i != self.index)  # type: ignore[return-value]


class TurnDirection(str, Enum):
    """Rotation sense seen from above, in the ground projection's (first, second) axis order."""

    CW = "cw"
    CCW = "ccw"

    @staticmethod
    def from_sign(value: float) -> "TurnDirection":
        return TurnDirection.CCW if value >= 0 else TurnDirection.CW

    @property
    def sign(self) -> int:
        return 1 if self is TurnDirection.CCW else -1


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


def _check_joint_rows(positions: np.ndarray) -> None:
    finite = np.isfinite(positions)
    nan = np.isnan(positions)
    present = finite.all(axis=-1)
    missing = nan.all(axis=-1)
    bad = ~(present | missing)
    if bad.any():
        idx = np.argwhere(bad)[0]
        frame = int(idx[0]) if positions.ndim == 3 else 0
        joint = JointId(int(idx[-1])).joint_name
        raise ValueError(f"frame {frame} joint {joint}: coordinates must be all finite or all missing")


@dataclass(frozen=True, eq=False)
class SkeletonFrame:
    """One pose: 17 joints x (x, y, z); NaN rows mark missing joints."""

    positions: np.ndarray

    @staticmethod
    def build(positions) -> "SkeletonFrame":
        arr = np.asarray(positions, dtype=np.float64)
        if arr.shape != (NUM_JOINTS, 3):
            raise ValueError(f"joint count mismatch: expected ({NUM_JOINTS}, 3), got {arr.shape}")
        _check_joint_rows(arr)
        return SkeletonFrame(positions=_frozen(arr))

    def joint(self, joint: JointId) -> Optional[np.ndarray]:
        row = self.positions[int(joint)]
        if np.isnan(row).any():
            return None
        return row

    def is_missing(self, joint: JointId) -> bool:
        return bool(np.isnan(self.positions[int(joint)]).any())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkeletonFrame):
            return NotImplemented
        return bool(np.array_equal(self.positions, other.positions, equal_nan=True))


@dataclass(frozen=True, eq=False)
class SkeletonSequence:
    """Timestamped skeleton frames for one clip.

    ``positions`` is a read-only (T, 17, 3) array. Frame ``t`` is sampled at
    ``t / fps`` seconds.
    """

    positions: np.ndarray
    fps: float
    up_axis: UpAxis
    clip_id: str

    @staticmethod
    def build(positions, fps: float, up_axis: UpAxis | str, clip_id: str) -> "SkeletonSequence":
        arr = np.asarray(positions, dtype=np.float64)
        if arr.size == 0:
            arr = arr.reshape(0, NUM_JOINTS, 3)
        if arr.ndim != 3 or arr.shape[1:] != (NUM_JOINTS, 3):
            raise ValueError(f"joint count mismatch: expected (T, {NUM_JOINTS}, 3), got {arr.shape}")
        fps = float(fps)
        if not math.isfinite(fps) or fps <= 0:
            raise ValueError(f"fps must be finite and > 0, got {fps}")
        _check_joint_rows(arr)
        return SkeletonSequence(
            positions=_frozen(arr),
            fps=fps,
            up_axis=UpAxis(up_axis),
            clip_id=str(clip_id),
        )

    @property
    def num_frames(self) -> int:
        return int(self.positions.shape[0])

    @property
    def duration_s(self) -> float:
        """(T - 1) / fps; zero for fewer than two frames."""
        return max(self.num_frames - 1, 0) / self.fps

    @property
    def frames(self) -> list[SkeletonFrame]:
        return [SkeletonFrame(positions=self.positions[t]) for t in range(self.num_frames)]

    def frame(self, index: int) -> SkeletonFrame:
        return SkeletonFrame(positions=self.positions[index])

    def __iter__(self) -> Iterator[SkeletonFrame]:
        for t in range(self.num_frames):
            yield SkeletonFrame(positions=self.positions[t])

    def __len__(self) -> int:
        return self.num_frames

    def missing_mask(self) -> np.ndarray:
        """(T, 17) boolean mask of missing joints."""
        return np.isnan(self.positions).any(axis=-1)

    def with_positions(self, positions, clip_id: Optional[str] = None) -> "SkeletonSequence":
        return SkeletonSequence.build(
            positions,
            fps=self.fps,
            up_axis=self.up_axis,
            clip_id=self.clip_id if clip_id is None else clip_id,
        )

    def slice(self, start: int, end: int, clip_id: Optional[str] = None) -> "SkeletonSequence":
        return self.with_positions(self.positions[start:end], clip_id=clip_id)

    def reversed(self) -> "SkeletonSequence":
        return self.with_positions(self.positions[::-1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkeletonSequence):
            return NotImplemented
        return (
            self.fps == other.fps
            and self.up_axis == other.up_axis
            and self.clip_id == other.clip_id
            and self.positions.shape == other.positions.shape
            and bool(np.array_equal(self.positions, other.positions, equal_nan=True))
        )
