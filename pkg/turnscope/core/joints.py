from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from itertools import combinations
from typing import Iterable, List, Tuple


class JointId(IntEnum):
    """17-joint Human3.6M skeleton, in canonical file order."""

    PELVIS = 0
    RIGHT_HIP = 1
    RIGHT_KNEE = 2
    RIGHT_ANKLE = 3
    LEFT_HIP = 4
    LEFT_KNEE = 5
    LEFT_ANKLE = 6
    SPINE = 7
    THORAX = 8
    NECK = 9
    HEAD = 10
    LEFT_SHOULDER = 11
    LEFT_ELBOW = 12
    LEFT_WRIST = 13
    RIGHT_SHOULDER = 14
    RIGHT_ELBOW = 15
    RIGHT_WRIST = 16

    @property
    def joint_name(self) -> str:
        return self.name.lower()

    @staticmethod
    def from_name(name: str) -> "JointId":
        try:
            return JointId[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown joint: {name}") from None


NUM_JOINTS = len(JointId)
JOINT_NAMES: Tuple[str, ...] = tuple(j.joint_name for j in JointId)


class JointPair(str, Enum):
    HIP = "hip"
    KNEE = "knee"
    SHOULDER = "shoulder"

    @property
    def joints(self) -> Tuple[JointId, JointId]:
        """(left, right) joints; the pair vector is left minus right."""
        return _PAIR_JOINTS[self]


_PAIR_JOINTS = {
    JointPair.HIP: (JointId.LEFT_HIP, JointId.RIGHT_HIP),
    JointPair.KNEE: (JointId.LEFT_KNEE, JointId.RIGHT_KNEE),
    JointPair.SHOULDER: (JointId.LEFT_SHOULDER, JointId.RIGHT_SHOULDER),
}

_PAIR_ORDER = {pair: idx for idx, pair in enumerate(JointPair)}


@dataclass(frozen=True)
class JointPairSet:
    pairs: Tuple[JointPair, ...]

    @staticmethod
    def build(pairs: Iterable[JointPair | str]) -> "JointPairSet":
        resolved: List[JointPair] = []
        for p in pairs:
            pair = p if isinstance(p, JointPair) else JointPair(str(p).strip().lower())
            if pair in resolved:
                raise ValueError(f"duplicate joint pair: {pair.value}")
            resolved.append(pair)
        if not resolved:
            raise ValueError("joint pair set cannot be empty")
        return JointPairSet(pairs=tuple(sorted(resolved, key=_PAIR_ORDER.__getitem__)))

    @staticmethod
    def parse(text: str) -> "JointPairSet":
        """Parse a comma- or plus-separated list such as ``hip,knee``."""
        tokens = [t for t in text.replace("+", ",").split(",") if t.strip()]
        try:
            return JointPairSet.build(tokens)
        except ValueError as exc:
            raise ValueError(f"invalid joint pair set {text!r}: {exc}") from None

    @property
    def label(self) -> str:
        return "+".join(p.value for p in self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


DEFAULT_PAIR_SET = JointPairSet.build([JointPair.HIP, JointPair.KNEE])


def pair_set_combinations() -> List[JointPairSet]:
    """Every non-empty subset of {hip, knee, shoulder}, smallest first."""
    members = list(JointPair)
    out: List[JointPairSet] = []
    for size in range(1, len(members) + 1):
        for combo in combinations(members, size):
            out.append(JointPairSet.build(combo))
    return out
