from turnscope.pipeline.commands import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_PARTIAL,
    EXIT_USAGE,
    CommandResult,
    cmd_ablate,
    cmd_agreement,
    cmd_angle,
    cmd_detect,
    cmd_eval,
    cmd_stats,
    cmd_synth,
)
from turnscope.pipeline.workers import ANGLE_COLUMNS, run_ordered

__all__ = [
    "ANGLE_COLUMNS",
    "CommandResult",
    "EXIT_FAILED",
    "EXIT_OK",
    "EXIT_PARTIAL",
    "EXIT_USAGE",
    "cmd_ablate",
    "cmd_agreement",
    "cmd_angle",
    "cmd_detect",
    "cmd_eval",
    "cmd_stats",
    "cmd_synth",
    "run_ordered",
]
