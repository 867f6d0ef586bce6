from turnscope.metrics.evaluation import (
    GROUP_KEYS,
    REPORT_COLUMNS,
    EvalRecord,
    EvalReport,
    EvalRow,
    bin_accuracy,
    cohens_kappa,
    evaluate,
    grouped_eval,
    mae,
    mae_speed,
    observed_agreement,
    weighted_precision,
)
from turnscope.metrics.plot_data import error_histogram, prediction_distribution
from turnscope.metrics.quantize import AngleBin, QuantizedAngle, quantize_angle

__all__ = [
    "AngleBin",
    "EvalRecord",
    "EvalReport",
    "EvalRow",
    "GROUP_KEYS",
    "QuantizedAngle",
    "REPORT_COLUMNS",
    "bin_accuracy",
    "cohens_kappa",
    "error_histogram",
    "evaluate",
    "grouped_eval",
    "mae",
    "mae_speed",
    "observed_agreement",
    "prediction_distribution",
    "quantize_angle",
    "weighted_precision",
]
