"""Tables behind the prediction-distribution and error-histogram figures."""

from __future__ import annotations

import math
from typing import Dict, List, Sequence

import numpy as np
from sklearn.metrics import confusion_matrix

from turnscope.core.errors import EmptyInput
from turnscope.metrics.evaluation import SUB_THRESHOLD_CODE, EvalRecord, label_codes
from turnscope.metrics.quantize import BIN_WIDTH, MAX_BIN, MIN_BIN

BIN_CODES = [SUB_THRESHOLD_CODE] + list(range(MIN_BIN, MAX_BIN + 1, BIN_WIDTH))
ERROR_BIN_WIDTH = 15.0


def _pred_column(code: int) -> str:
    return "pred_sub" if code == SUB_THRESHOLD_CODE else f"pred_{code}"


PRED_BY_BIN_COLUMNS = ["label_bin", "n", "mean_pred_deg", "sd_pred_deg", "min_pred_deg", "max_pred_deg"] + [
    _pred_column(c) for c in BIN_CODES
]
ERROR_HIST_COLUMNS = ["error_low_deg", "error_high_deg", "count"]


def prediction_distribution(records: Sequence[EvalRecord]) -> List[Dict[str, object]]:
    """One row per label bin: continuous prediction summary and predicted-bin counts."""
    if not records:
        raise EmptyInput("prediction_distribution: no records")
    y_true, y_pred = label_codes(records)
    cm = confusion_matrix(y_true, y_pred, labels=BIN_CODES)

    rows: List[Dict[str, object]] = []
    for i, code in enumerate(BIN_CODES):
        preds = np.array([r.predicted_theta_deg for r in records if r.label_bin.value == code])
        if preds.size == 0:
            continue
        row: Dict[str, object] = {
            "label_bin": code,
            "n": int(preds.size),
            "mean_pred_deg": float(np.mean(preds)),
            "sd_pred_deg": float(np.std(preds, ddof=1)) if preds.size > 1 else 0.0,
            "min_pred_deg": float(np.min(preds)),
            "max_pred_deg": float(np.max(preds)),
        }
        for j, pred_code in enumerate(BIN_CODES):
            row[_pred_column(pred_code)] = int(cm[i, j])
        rows.append(row)
    return rows


def error_histogram(records: Sequence[EvalRecord], width: float = ERROR_BIN_WIDTH) -> List[Dict[str, object]]:
    """Histogram of signed error (prediction - label), at least spanning [-180, 180]."""
    if not records:
        raise EmptyInput("error_histogram: no records")
    errors = np.array([r.predicted_theta_deg - r.label_bin.value for r in records])
    low = min(-180.0, math.floor(errors.min() / width) * width)
    high = max(180.0, math.ceil(errors.max() / width) * width)
    if high == errors.max():
        high += width
    edges = np.arange(low, high + width / 2, width)
    counts, _ = np.histogram(errors, bins=edges)
    return [
        {"error_low_deg": float(edges[k]), "error_high_deg": float(edges[k + 1]), "count": int(counts[k])}
        for k in range(counts.size)
    ]
