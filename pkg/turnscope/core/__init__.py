from turnscope.core.annotation import Annotation, Group, Scenario
from turnscope.core.errors import (
    AnnotationError,
    ConfigError,
    DegenerateVector,
    EmptyInput,
    InsufficientSubjects,
    MissingJoint,
    NoUsableTransition,
    SkeletonFormatError,
    TooShort,
    TurnscopeError,
)
from turnscope.core.joints import (
    DEFAULT_PAIR_SET,
    JOINT_NAMES,
    NUM_JOINTS,
    JointId,
    JointPair,
    JointPairSet,
    pair_set_combinations,
)
from turnscope.core.skeleton import SkeletonFrame, SkeletonSequence, TurnDirection, UpAxis

__all__ = [
    "Annotation",
    "AnnotationError",
    "ConfigError",
    "DEFAULT_PAIR_SET",
    "DegenerateVector",
    "EmptyInput",
    "Group",
    "InsufficientSubjects",
    "JOINT_NAMES",
    "JointId",
    "JointPair",
    "JointPairSet",
    "MissingJoint",
    "NUM_JOINTS",
    "NoUsableTransition",
    "Scenario",
    "SkeletonFormatError",
    "SkeletonFrame",
    "SkeletonSequence",
    "TooShort",
    "TurnDirection",
    "TurnscopeError",
    "UpAxis",
    "pair_set_combinations",
]
