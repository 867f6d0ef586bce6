"""
Per-clip work units and the ordered worker pool.

Work units are plain module-level functions over picklable tasks so they can
run in worker processes; results always come back in input order.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

from turnscope.config.models import DetectConfig
from turnscope.core.errors import TurnscopeError
from turnscope.core.joints import JointPairSet, pair_set_combinations
from turnscope.core.skeleton import SkeletonSequence, UpAxis
from turnscope.detection.episodes import detect_turns, trim_episode
from turnscope.geometry.angles import StepMode, total_angle
from turnscope.io.skeleton_file import SKELETON_SUFFIX, load_sequence, save_sequence
from turnscope.metrics.quantize import quantize_angle

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

ANGLE_COLUMNS = [
    "clip_id",
    "theta_deg",
    "bin",
    "omega_deg_s",
    "w_max_deg_s",
    "skipped_transitions",
    "pairs",
    "mode",
    "error",
]


def run_ordered(fn: Callable[[T], R], tasks: Sequence[T], jobs: int = 1) -> List[R]:
    """Map ``fn`` over ``tasks``; output order is input order for any ``jobs``."""
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(fn, tasks))


def describe_error(exc: BaseException) -> str:
    return f"{type(exc).__name__}: {exc}"


def _load(path: str, up_override: Optional[UpAxis]) -> SkeletonSequence:
    seq = load_sequence(path)
    if up_override is not None and up_override != seq.up_axis:
        seq = SkeletonSequence.build(seq.positions, fps=seq.fps, up_axis=up_override, clip_id=seq.clip_id)
    return seq


def _clip_id_from_path(path: str) -> str:
    return Path(path).stem


@dataclass(frozen=True)
class AngleTask:
    path: str
    pairs: str
    mode: str
    up_override: Optional[str] = None


def analyze_clip(task: AngleTask) -> Dict[str, object]:
    """One angles-table row; failures land in the ``error`` column."""
    pair_set = JointPairSet.parse(task.pairs)
    mode = StepMode(task.mode)
    row: Dict[str, object] = {c: None for c in ANGLE_COLUMNS}
    row.update(clip_id=_clip_id_from_path(task.path), pairs=pair_set.label, mode=mode.value, error="")
    try:
        seq = _load(task.path, UpAxis(task.up_override) if task.up_override else None)
        row["clip_id"] = seq.clip_id
        est = total_angle(seq, pair_set, mode)
    except (TurnscopeError, ValueError, OSError) as exc:
        logger.warning("[ANGLE] %s: %s", task.path, describe_error(exc))
        row["error"] = describe_error(exc)
        return row
    row.update(
        theta_deg=est.theta_deg,
        bin=quantize_angle(est.theta_deg).label,
        omega_deg_s=est.omega_deg_s,
        w_max_deg_s=est.w_max_deg_s,
        skipped_transitions=est.skipped_transitions,
    )
    return row


@dataclass(frozen=True)
class DetectTask:
    path: str
    config: DetectConfig
    up_override: Optional[str] = None
    emit_dir: Optional[str] = None


@dataclass(frozen=True)
class DetectOutcome:
    path: str
    clip_id: str
    rows: List[Dict[str, object]]
    error: str = ""


def detect_clip(task: DetectTask) -> DetectOutcome:
    clip_id = _clip_id_from_path(task.path)
    try:
        seq = _load(task.path, UpAxis(task.up_override) if task.up_override else None)
        clip_id = seq.clip_id
        episodes = detect_turns(seq, task.config)
        if task.emit_dir:
            for ep in episodes:
                clip = trim_episode(seq, ep)
                save_sequence(clip, Path(task.emit_dir) / f"{clip.clip_id}{SKELETON_SUFFIX}")
    except (TurnscopeError, ValueError, OSError) as exc:
        logger.warning("[DETECT] %s: %s", task.path, describe_error(exc))
        return DetectOutcome(task.path, clip_id, [], describe_error(exc))
    return DetectOutcome(task.path, clip_id, [ep.as_row(clip_id) for ep in episodes])


@dataclass(frozen=True)
class AblationTask:
    path: str
    mode: str
    up_override: Optional[str] = None


@dataclass(frozen=True)
class AblationOutcome:
    clip_id: str
    theta_by_pairs: Dict[str, float]
    omega_by_pairs: Dict[str, float]
    error: str = ""


def ablate_clip(task: AblationTask) -> AblationOutcome:
    """Turning angle under every joint-pair combination for one clip."""
    clip_id = _clip_id_from_path(task.path)
    try:
        seq = _load(task.path, UpAxis(task.up_override) if task.up_override else None)
    except (TurnscopeError, ValueError, OSError) as exc:
        logger.warning("[ANGLE] %s: %s", task.path, describe_error(exc))
        return AblationOutcome(clip_id, {}, {}, describe_error(exc))

    thetas: Dict[str, float] = {}
    omegas: Dict[str, float] = {}
    for pair_set in pair_set_combinations():
        try:
            est = total_angle(seq, pair_set, StepMode(task.mode))
        except (TurnscopeError, ValueError) as exc:
            logger.debug("[ANGLE] %s %s: %s", seq.clip_id, pair_set.label, describe_error(exc))
            continue
        thetas[pair_set.label] = est.theta_deg
        omegas[pair_set.label] = est.omega_deg_s
    return AblationOutcome(seq.clip_id, thetas, omegas)


def expand_inputs(inputs: Iterable[str | Path]) -> List[str]:
    """Files as given; directories contribute their skeleton files in name order."""
    paths: List[str] = []
    for item in inputs:
        p = Path(item)
        if p.is_dir():
            paths.extend(str(f) for f in sorted(p.glob(f"*{SKELETON_SUFFIX}")))
        else:
            paths.append(str(p))
    return paths
