from __future__ import annotations

import math
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
import pytest

from turnscope.core.joints import NUM_JOINTS, JointId
from turnscope.core.skeleton import SkeletonSequence

ANNOTATION_HEADER = "clip_id,label_deg,duration_s,scenario,location,subject_id,group"


def _pose(heading_deg: float, knee_heading_deg: float, shoulder_heading_deg: float) -> np.ndarray:
    """Upright z-up pose whose left-minus-right pair vectors point along the given headings."""
    pos = np.zeros((NUM_JOINTS, 3))
    pos[:, 2] = np.linspace(0.1, 1.7, NUM_JOINTS)
    for (left, right), heading, half in (
        ((JointId.LEFT_HIP, JointId.RIGHT_HIP), heading_deg, 0.125),
        ((JointId.LEFT_KNEE, JointId.RIGHT_KNEE), knee_heading_deg, 0.1),
        ((JointId.LEFT_SHOULDER, JointId.RIGHT_SHOULDER), shoulder_heading_deg, 0.19),
    ):
        h = math.radians(heading)
        direction = np.array([math.cos(h), math.sin(h)])
        pos[int(left), :2] = half * direction
        pos[int(right), :2] = -half * direction
    return pos


@pytest.fixture
def pose_sequence() -> Callable[..., SkeletonSequence]:
    """Factory: sequence whose pair vectors follow per-frame headings (degrees)."""

    def _build(
        hip_headings: Iterable[float],
        knee_headings: Optional[Sequence[float]] = None,
        shoulder_headings: Optional[Sequence[float]] = None,
        fps: float = 30.0,
        clip_id: str = "clip",
    ) -> SkeletonSequence:
        hips = list(hip_headings)
        knees = list(knee_headings) if knee_headings is not None else hips
        shoulders = list(shoulder_headings) if shoulder_headings is not None else hips
        frames = [_pose(h, k, s) for h, k, s in zip(hips, knees, shoulders)]
        positions = np.asarray(frames).reshape(len(frames), NUM_JOINTS, 3)
        return SkeletonSequence.build(positions, fps=fps, up_axis="z", clip_id=clip_id)

    return _build


@pytest.fixture
def write_annotations(tmp_path: Path) -> Callable[..., Path]:
    """Factory: write annotation rows (tuples in header order) and return the path."""

    def _write(rows: Sequence[Sequence[object]], name: str = "annotations.csv", extra_header: str = "") -> Path:
        header = ANNOTATION_HEADER + (f",{extra_header}" if extra_header else "")
        lines = [header] + [",".join(str(v) for v in row) for row in rows]
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write
