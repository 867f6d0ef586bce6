"""
Reader/writer for the ``turnskel`` text format.

    #turnskel v1 fps=<float> up=<x|y|z> joints=17 clip=<id>
    <51 numbers per frame: x y z per joint in canonical order>

A missing joint is written as ``nan nan nan``. Finite values are written with
``repr`` so a save/load cycle is bit-exact.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from turnscope.core.errors import SkeletonFormatError
from turnscope.core.joints import NUM_JOINTS, JointId
from turnscope.core.skeleton import SkeletonSequence, UpAxis

logger = logging.getLogger(__name__)

MAGIC = "#turnskel"
VERSION = "v1"
VALUES_PER_FRAME = NUM_JOINTS * 3
SKELETON_SUFFIX = ".tskel"


def _parse_header(line: str, path: str | None) -> Tuple[float, UpAxis, str]:
    parts = line.strip().split(None, 2)
    if len(parts) < 3 or parts[0] != MAGIC:
        raise SkeletonFormatError("malformed header: expected '#turnskel v1 ...'", line=1, path=path)
    if parts[1] != VERSION:
        raise SkeletonFormatError(f"malformed header: unsupported version {parts[1]!r}", line=1, path=path)

    rest = parts[2]
    fields: Dict[str, str] = {}
    clip_pos = rest.find("clip=")
    if clip_pos >= 0:
        fields["clip"] = rest[clip_pos + len("clip="):].strip()
        rest = rest[:clip_pos]
    for token in rest.split():
        if "=" not in token:
            raise SkeletonFormatError(f"malformed header: bad field {token!r}", line=1, path=path)
        key, value = token.split("=", 1)
        fields[key] = value

    for key in ("fps", "up", "joints", "clip"):
        if key not in fields:
            raise SkeletonFormatError(f"malformed header: missing field {key!r}", line=1, path=path)

    try:
        fps = float(fields["fps"])
    except ValueError:
        raise SkeletonFormatError(f"malformed header: fps {fields['fps']!r} is not a number", line=1, path=path) from None
    if not math.isfinite(fps) or fps <= 0:
        raise SkeletonFormatError(f"fps must be finite and > 0, got {fields['fps']}", line=1, path=path)

    try:
        up = UpAxis(fields["up"].lower())
    except ValueError:
        raise SkeletonFormatError(f"malformed header: up axis {fields['up']!r} not in x|y|z", line=1, path=path) from None

    if fields["joints"] != str(NUM_JOINTS):
        raise SkeletonFormatError(
            f"joint count mismatch: header declares {fields['joints']}, expected {NUM_JOINTS}", line=1, path=path
        )
    return fps, up, fields["clip"]


def _parse_frame(line: str, lineno: int, path: str | None) -> List[float]:
    tokens = line.split()
    if len(tokens) != VALUES_PER_FRAME:
        if len(tokens) % 3 == 0:
            raise SkeletonFormatError(
                f"joint count mismatch: {len(tokens) // 3} joints, expected {NUM_JOINTS}", line=lineno, path=path
            )
        raise SkeletonFormatError(
            f"expected {VALUES_PER_FRAME} values, got {len(tokens)}", line=lineno, path=path
        )
    try:
        values = [float(tok) for tok in tokens]
    except ValueError as exc:
        raise SkeletonFormatError(f"not a number: {exc}", line=lineno, path=path) from None

    for j in range(NUM_JOINTS):
        xyz = values[3 * j:3 * j + 3]
        n_nan = sum(1 for v in xyz if math.isnan(v))
        if n_nan == 3:
            continue
        if n_nan or not all(math.isfinite(v) for v in xyz):
            raise SkeletonFormatError(
                f"non-finite value for joint {JointId(j).joint_name} not marked missing", line=lineno, path=path
            )
    return values


def loads_sequence(text: str, path: str | None = None) -> SkeletonSequence:
    lines = text.splitlines()
    if not lines:
        raise SkeletonFormatError("malformed header: empty file", line=1, path=path)
    fps, up, clip_id = _parse_header(lines[0], path)

    rows: List[List[float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        rows.append(_parse_frame(line, lineno, path))

    positions = np.asarray(rows, dtype=np.float64).reshape(len(rows), NUM_JOINTS, 3)
    return SkeletonSequence.build(positions, fps=fps, up_axis=up, clip_id=clip_id)


def load_sequence(path: str | Path) -> SkeletonSequence:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise SkeletonFormatError(f"not UTF-8 text: {exc}", path=str(p)) from None
    seq = loads_sequence(text, path=str(p))
    logger.debug("[LOAD] %s frames=%d fps=%s up=%s", p, seq.num_frames, seq.fps, seq.up_axis.value)
    return seq


def _fmt(value: float) -> str:
    if math.isnan(value):
        return "nan"
    return repr(float(value))


def dumps_sequence(seq: SkeletonSequence) -> str:
    lines = [f"{MAGIC} {VERSION} fps={_fmt(seq.fps)} up={seq.up_axis.value} joints={NUM_JOINTS} clip={seq.clip_id}"]
    flat = seq.positions.reshape(seq.num_frames, VALUES_PER_FRAME)
    for row in flat:
        lines.append(" ".join(_fmt(v) for v in row.tolist()))
    return "\n".join(lines) + "\n"


def save_sequence(seq: SkeletonSequence, path: str | Path) -> None:
    p = Path(path)
    p.write_text(dumps_sequence(seq), encoding="utf-8")
    logger.debug("[SAVE] %s frames=%d", p, seq.num_frames)
