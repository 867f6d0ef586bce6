from turnscope.analysis.registry import MEASURES, Measure, MeasureRegistry, default_registry

__all__ = ["MEASURES", "Measure", "MeasureRegistry", "default_registry"]
