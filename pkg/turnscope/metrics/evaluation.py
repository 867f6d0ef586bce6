"""
Evaluation of predicted turning angles against 45°-bin labels.

Predictions below half a bin carry no bin; they are encoded as label 0 for the
confusion matrix, which never matches a real label bin.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from sklearn.metrics import accuracy_score, cohen_kappa_score, precision_score

from turnscope.core.annotation import Annotation, Group, Scenario
from turnscope.core.errors import EmptyInput
from turnscope.metrics.quantize import AngleBin, QuantizedAngle, quantize_angle

logger = logging.getLogger(__name__)

SUB_THRESHOLD_CODE = 0
GROUP_KEYS = ("scenario", "location", "group", "label_bin", "subject_id")
REPORT_COLUMNS = [
    "group_key",
    "n",
    "accuracy",
    "mae_deg",
    "wprec",
    "n_sub_threshold",
    "mae_omega_deg_s",
    "mean_omega_deg_s",
    "mean_duration_s",
]
AVERAGE_KEY = "Avg."
OVERALL_KEY = "all"


@dataclass(frozen=True)
class EvalRecord:
    clip_id: str
    predicted_theta_deg: float
    predicted_bin: Optional[AngleBin]
    label_bin: AngleBin
    scenario: Scenario = Scenario.UNKNOWN
    location: str = ""
    group: Group = Group.UNKNOWN
    subject_id: str = ""
    predicted_omega_deg_s: Optional[float] = None
    label_omega_deg_s: Optional[float] = None
    duration_s: Optional[float] = None

    @staticmethod
    def build(
        clip_id: str,
        predicted_theta_deg: float,
        label_bin: int | AngleBin,
        predicted_omega_deg_s: Optional[float] = None,
        annotation: Optional[Annotation] = None,
        predicted: Optional[QuantizedAngle] = None,
    ) -> "EvalRecord":
        if not math.isfinite(predicted_theta_deg) or predicted_theta_deg < 0:
            raise ValueError(f"{clip_id}: predicted angle must be finite and >= 0, got {predicted_theta_deg}")
        label = label_bin if isinstance(label_bin, AngleBin) else AngleBin.build(label_bin)
        if predicted is None:
            predicted = quantize_angle(predicted_theta_deg)
        extra = {}
        if annotation is not None:
            extra = dict(
                scenario=annotation.scenario,
                location=annotation.location,
                group=annotation.group,
                subject_id=annotation.subject_id,
                label_omega_deg_s=annotation.speed_deg_s,
                duration_s=annotation.duration_s,
            )
        return EvalRecord(
            clip_id=clip_id,
            predicted_theta_deg=float(predicted_theta_deg),
            predicted_bin=predicted.bin,
            label_bin=label,
            predicted_omega_deg_s=predicted_omega_deg_s,
            **extra,
        )

    @staticmethod
    def from_annotation(clip_id: str, predicted_theta_deg: float, annotation: Annotation,
                        predicted_omega_deg_s: Optional[float] = None,
                        predicted: Optional[QuantizedAngle] = None) -> "EvalRecord":
        return EvalRecord.build(
            clip_id,
            predicted_theta_deg,
            annotation.label_bin,
            predicted_omega_deg_s=predicted_omega_deg_s,
            annotation=annotation,
            predicted=predicted,
        )

    @property
    def correct(self) -> bool:
        return self.predicted_bin == self.label_bin

    def key_value(self, key: str) -> str:
        if key == "label_bin":
            return str(self.label_bin.value)
        value = getattr(self, key)
        return str(getattr(value, "value", value))


@dataclass(frozen=True)
class EvalRow:
    group_key: str
    n: int
    accuracy: float
    mae_deg: float
    wprec: float
    n_sub_threshold: int = 0
    mae_omega_deg_s: Optional[float] = None
    mean_omega_deg_s: Optional[float] = None
    mean_duration_s: Optional[float] = None

    def as_dict(self) -> Dict[str, object]:
        return {c: getattr(self, c) for c in REPORT_COLUMNS}


@dataclass(frozen=True)
class EvalReport:
    key: str
    rows: List[EvalRow]
    average: EvalRow
    overall: EvalRow
    unmatched: List[str] = field(default_factory=list)

    def table_rows(self) -> List[Dict[str, object]]:
        return [r.as_dict() for r in self.rows] + [self.average.as_dict(), self.overall.as_dict()]


def _require(records: Sequence[EvalRecord], what: str) -> None:
    if not records:
        raise EmptyInput(f"{what}: no records")


def label_codes(records: Sequence[EvalRecord]):
    y_true = [r.label_bin.value for r in records]
    y_pred = [r.predicted_bin.value if r.predicted_bin is not None else SUB_THRESHOLD_CODE for r in records]
    return y_true, y_pred


def bin_accuracy(records: Sequence[EvalRecord]) -> float:
    _require(records, "bin_accuracy")
    y_true, y_pred = label_codes(records)
    return float(accuracy_score(y_true, y_pred))


def mae(records: Sequence[EvalRecord]) -> float:
    """Mean |continuous prediction - label| in degrees."""
    _require(records, "mae")
    return math.fsum(abs(r.predicted_theta_deg - r.label_bin.value) for r in records) / len(records)


def weighted_precision(records: Sequence[EvalRecord]) -> float:
    """Per-bin precision weighted by each bin's label support.

    A label bin that is never predicted contributes precision 0.
    """
    _require(records, "weighted_precision")
    y_true, y_pred = label_codes(records)
    labels = sorted(set(y_true))
    return float(precision_score(y_true, y_pred, labels=labels, average="weighted", zero_division=0))


def mae_speed(records: Sequence[EvalRecord]) -> Optional[float]:
    """MAE of angular speed over records with both predicted and groundtruth speed; None if there are none."""
    pairs = [
        (r.predicted_omega_deg_s, r.label_omega_deg_s)
        for r in records
        if r.predicted_omega_deg_s is not None and r.label_omega_deg_s is not None
    ]
    if not pairs:
        return None
    return math.fsum(abs(p - l) for p, l in pairs) / len(pairs)


def _mean_of(values: Sequence[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None]
    if not present:
        return None
    return math.fsum(present) / len(present)


def cohens_kappa(rater_a: Sequence[AngleBin | int], rater_b: Sequence[AngleBin | int]) -> float:
    if len(rater_a) != len(rater_b):
        raise ValueError(f"rater length mismatch: {len(rater_a)} vs {len(rater_b)}")
    if not rater_a:
        raise EmptyInput("cohens_kappa: no ratings")
    a = [int(x) for x in rater_a]
    b = [int(x) for x in rater_b]
    if a == b:
        return 1.0
    return float(cohen_kappa_score(a, b))


def observed_agreement(rater_a: Sequence[AngleBin | int], rater_b: Sequence[AngleBin | int]) -> float:
    if not rater_a:
        raise EmptyInput("observed_agreement: no ratings")
    return sum(1 for x, y in zip(rater_a, rater_b) if int(x) == int(y)) / len(rater_a)


def evaluate(records: Sequence[EvalRecord], group_key: str = OVERALL_KEY) -> EvalRow:
    _require(records, "evaluate")
    return EvalRow(
        group_key=group_key,
        n=len(records),
        accuracy=bin_accuracy(records),
        mae_deg=mae(records),
        wprec=weighted_precision(records),
        n_sub_threshold=sum(1 for r in records if r.predicted_bin is None),
        mae_omega_deg_s=mae_speed(records),
        mean_omega_deg_s=_mean_of([r.predicted_omega_deg_s for r in records]),
        mean_duration_s=_mean_of([r.duration_s for r in records]),
    )


def _sort_key(key: str) -> Callable[[str], object]:
    return int if key == "label_bin" else str


def average_row(rows: Sequence[EvalRow]) -> EvalRow:
    """Unweighted mean over groups (the "Avg." column convention)."""
    if not rows:
        raise EmptyInput("average_row: no rows")
    k = len(rows)
    return EvalRow(
        group_key=AVERAGE_KEY,
        n=sum(r.n for r in rows),
        accuracy=math.fsum(r.accuracy for r in rows) / k,
        mae_deg=math.fsum(r.mae_deg for r in rows) / k,
        wprec=math.fsum(r.wprec for r in rows) / k,
        n_sub_threshold=sum(r.n_sub_threshold for r in rows),
        mae_omega_deg_s=_mean_of([r.mae_omega_deg_s for r in rows]),
        mean_omega_deg_s=_mean_of([r.mean_omega_deg_s for r in rows]),
        mean_duration_s=_mean_of([r.mean_duration_s for r in rows]),
    )


def grouped_eval(records: Sequence[EvalRecord], key: str) -> EvalReport:
    if key not in GROUP_KEYS:
        raise ValueError(f"unknown group key {key!r}; expected one of {', '.join(GROUP_KEYS)}")
    _require(records, "grouped_eval")

    partitions: Dict[str, List[EvalRecord]] = defaultdict(list)
    for rec in records:
        partitions[rec.key_value(key)].append(rec)

    rows = [evaluate(partitions[g], group_key=g) for g in sorted(partitions, key=_sort_key(key))]
    logger.info("[EVAL] key=%s groups=%d records=%d", key, len(rows), len(records))
    return EvalReport(key=key, rows=rows, average=average_row(rows), overall=evaluate(records))
