from turnscope.config.models import DetectConfig, RunConfig, coerce_pairs, validated
from turnscope.config.settings import DEFAULT_SETTINGS, AnalysisDefaults, load_settings

__all__ = [
    "AnalysisDefaults",
    "DEFAULT_SETTINGS",
    "DetectConfig",
    "RunConfig",
    "coerce_pairs",
    "load_settings",
    "validated",
]
