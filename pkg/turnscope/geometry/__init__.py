from turnscope.geometry.angles import (
    StepMode,
    TurnEstimate,
    first_last_angle,
    max_angular_velocity,
    step_angle,
    step_angles,
    total_angle,
    transition_steps,
)
from turnscope.geometry.vectors import BodyVector, pair_vector, pair_vector_series, project_ground, project_sequence

__all__ = [
    "BodyVector",
    "StepMode",
    "TurnEstimate",
    "first_last_angle",
    "max_angular_velocity",
    "pair_vector",
    "pair_vector_series",
    "project_ground",
    "project_sequence",
    "step_angle",
    "step_angles",
    "total_angle",
    "transition_steps",
]
