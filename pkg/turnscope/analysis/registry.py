from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional

from turnscope.io.tables import parse_optional_float


@dataclass(frozen=True)
class Measure:
    """A per-clip quantity that can be compared between groups."""

    name: str
    column: str
    unit: str
    description: str = ""

    def value(self, row: Mapping[str, str]) -> Optional[float]:
        """Value from an angle-results row; None when the clip failed."""
        if row.get("error"):
            return None
        return parse_optional_float(row.get(self.column))


class MeasureRegistry:
    def __init__(self) -> None:
        self._measures: Dict[str, Measure] = {}

    def register(self, measure: Measure) -> None:
        if measure.name in self._measures:
            raise ValueError(f"Measure already registered: {measure.name}")
        self._measures[measure.name] = measure

    def get(self, name: str) -> Measure:
        try:
            return self._measures[name]
        except KeyError:
            raise ValueError(f"unknown measure {name!r}; expected one of {', '.join(self.names())}") from None

    def names(self) -> List[str]:
        return list(self._measures)

    def all(self) -> List[Measure]:
        return list(self._measures.values())


def default_registry() -> MeasureRegistry:
    registry = MeasureRegistry()
    registry.register(Measure("angle", "theta_deg", "deg", "turning angle"))
    registry.register(Measure("w_max", "w_max_deg_s", "deg/s", "maximum angular velocity"))
    registry.register(Measure("omega", "omega_deg_s", "deg/s", "mean angular speed"))
    return registry


MEASURES = default_registry()
