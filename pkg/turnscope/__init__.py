"""Turning-angle estimation, turn detection and group statistics for 3D skeleton sequences."""

from turnscope.core import JointPair, JointPairSet, SkeletonSequence, UpAxis
from turnscope.detection import TurnEpisode, detect_turns, trim_episode
from turnscope.geometry import StepMode, TurnEstimate, first_last_angle, total_angle
from turnscope.io import load_sequence, save_sequence
from turnscope.metrics import quantize_angle

__version__ = "0.1.0"

__all__ = [
    "JointPair",
    "JointPairSet",
    "SkeletonSequence",
    "StepMode",
    "TurnEpisode",
    "TurnEstimate",
    "UpAxis",
    "detect_turns",
    "first_last_angle",
    "load_sequence",
    "quantize_angle",
    "save_sequence",
    "total_angle",
]
