from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional


class Scenario(str, Enum):
    LOOSELY_SCRIPTED = "loosely_scripted"
    CLINICAL = "clinical"
    FREE_LIVING = "free_living"
    UNKNOWN = "unknown"


class Group(str, Enum):
    PD = "PD"
    CONTROL = "control"
    UNKNOWN = "unknown"


def parse_scenario(raw: str) -> Optional[Scenario]:
    key = raw.strip().lower().replace("-", "_").replace(" ", "_")
    try:
        return Scenario(key)
    except ValueError:
        return None


def parse_group(raw: str) -> Optional[Group]:
    key = raw.strip().lower()
    if key in {"pd", "parkinson", "parkinsons"}:
        return Group.PD
    if key in {"control", "c", "hc"}:
        return Group.CONTROL
    if key == "unknown":
        return Group.UNKNOWN
    return None


MAX_LABEL_DEG = 360


def check_label_bin(value: float) -> int:
    if not math.isfinite(value) or value <= 0 or value % 45 != 0:
        raise ValueError(f"label not a 45° multiple: {value}")
    if value > MAX_LABEL_DEG:
        raise ValueError(f"label above {MAX_LABEL_DEG}°: {value}")
    return int(value)


@dataclass(frozen=True)
class Annotation:
    clip_id: str
    label_bin: int
    duration_s: float
    scenario: Scenario
    location: str
    subject_id: str
    group: Group
    speed_deg_s: Optional[float] = None

    @staticmethod
    def build(
        clip_id: str,
        label_bin: float,
        duration_s: float,
        scenario: Scenario = Scenario.UNKNOWN,
        location: str = "",
        subject_id: str = "",
        group: Group = Group.UNKNOWN,
        speed_deg_s: Optional[float] = None,
    ) -> "Annotation":
        label = check_label_bin(label_bin)
        if not math.isfinite(duration_s) or duration_s <= 0:
            raise ValueError(f"non-positive duration: {duration_s}")
        if speed_deg_s is not None and (not math.isfinite(speed_deg_s) or speed_deg_s < 0):
            raise ValueError(f"invalid speed: {speed_deg_s}")
        return Annotation(
            clip_id=clip_id,
            label_bin=label,
            duration_s=float(duration_s),
            scenario=scenario,
            location=location,
            subject_id=subject_id,
            group=group,
            speed_deg_s=speed_deg_s,
        )
