from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from turnscope.core.annotation import Annotation, Group, Scenario, parse_group, parse_scenario
from turnscope.core.errors import AnnotationError

logger = logging.getLogger(__name__)

ANNOTATION_COLUMNS = ["clip_id", "label_deg", "duration_s", "scenario", "location", "subject_id", "group"]
OPTIONAL_COLUMNS = ["speed_deg_s"]


@dataclass
class AnnotationLoad:
    records: List[Annotation]
    unknown_vocabulary: int = 0
    notes: List[str] = field(default_factory=list)


def _float(raw: str, column: str, lineno: int, path: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise AnnotationError(f"column {column!r}: not a number: {raw!r}", line=lineno, path=path) from None


def read_annotations(path: str | Path) -> AnnotationLoad:
    p = Path(path)
    result = AnnotationLoad(records=[])
    with p.open(newline="", encoding="utf-8-sig") as f:
        reader = csv.DictReader(f)
        header = [h.strip() for h in (reader.fieldnames or [])]
        missing = [c for c in ANNOTATION_COLUMNS if c not in header]
        if missing:
            raise AnnotationError(f"missing required column(s): {', '.join(missing)}", line=1, path=str(p))
        reader.fieldnames = header

        for lineno, row in enumerate(reader, start=2):
            row = {k: (v or "").strip() for k, v in row.items() if k is not None}
            label = _float(row["label_deg"], "label_deg", lineno, str(p))
            duration = _float(row["duration_s"], "duration_s", lineno, str(p))

            scenario = parse_scenario(row["scenario"]) if row["scenario"] else Scenario.UNKNOWN
            if scenario is None:
                result.unknown_vocabulary += 1
                result.notes.append(f"line {lineno}: unknown scenario {row['scenario']!r}")
                scenario = Scenario.UNKNOWN
            group = parse_group(row["group"]) if row["group"] else Group.UNKNOWN
            if group is None:
                result.unknown_vocabulary += 1
                result.notes.append(f"line {lineno}: unknown group {row['group']!r}")
                group = Group.UNKNOWN

            speed: Optional[float] = None
            if row.get("speed_deg_s"):
                speed = _float(row["speed_deg_s"], "speed_deg_s", lineno, str(p))

            try:
                result.records.append(
                    Annotation.build(
                        clip_id=row["clip_id"],
                        label_bin=label,
                        duration_s=duration,
                        scenario=scenario,
                        location=row["location"],
                        subject_id=row["subject_id"],
                        group=group,
                        speed_deg_s=speed,
                    )
                )
            except ValueError as exc:
                raise AnnotationError(str(exc), line=lineno, path=str(p)) from None

    if result.unknown_vocabulary:
        logger.warning("[LOAD] %s: %d unknown scenario/group value(s) mapped to 'unknown'", p, result.unknown_vocabulary)
    return result


def load_annotations(path: str | Path) -> List[Annotation]:
    return read_annotations(path).records


def index_annotations(records: List[Annotation]) -> Dict[str, Annotation]:
    index: Dict[str, Annotation] = {}
    for rec in records:
        if rec.clip_id in index:
            logger.warning("[LOAD] duplicate annotation for clip %s; keeping the first", rec.clip_id)
            continue
        index[rec.clip_id] = rec
    return index
