from turnscope.synth.cohort import CohortClip, generate_cohort
from turnscope.synth.generator import (
    GROUNDTRUTH_COLUMNS,
    TurnGroundtruth,
    generate_turn,
    generate_walk,
    render_skeleton,
    rotate_about_up,
)
from turnscope.synth.noise import add_noise, derive_seed, derived_rng
from turnscope.synth.params import NoiseParams, RateProfile, SynthParams, TurnSegment
from turnscope.synth.plan import PlannedClip, SynthPlan, expand_plan, load_plan, parse_plan

__all__ = [
    "CohortClip",
    "GROUNDTRUTH_COLUMNS",
    "NoiseParams",
    "PlannedClip",
    "RateProfile",
    "SynthParams",
    "SynthPlan",
    "TurnGroundtruth",
    "TurnSegment",
    "add_noise",
    "derive_seed",
    "derived_rng",
    "expand_plan",
    "generate_cohort",
    "generate_turn",
    "generate_walk",
    "load_plan",
    "parse_plan",
    "render_skeleton",
    "rotate_about_up",
]
