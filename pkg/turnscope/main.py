import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from turnscope.analysis.registry import MEASURES
from turnscope.config.models import DetectConfig, RunConfig, validated
from turnscope.config.settings import load_settings
from turnscope.core.errors import ConfigError, TurnscopeError
from turnscope.metrics.evaluation import GROUP_KEYS, OVERALL_KEY
from turnscope.pipeline.commands import (
    EXIT_FAILED,
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

logger = logging.getLogger("turnscope")


def _add_common(p: argparse.ArgumentParser, clips: bool = True) -> None:
    p.add_argument("--out", default=None, help="output directory (default: $TURNSCOPE_OUT_DIR or turnscope_out)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    if clips:
        p.add_argument("--pairs", default=None, help="joint pairs, e.g. hip,knee (default)")
        p.add_argument("--mode", default=None, choices=["unsigned", "signed"])
        p.add_argument("--up", default=None, choices=["x", "y", "z"], help="override the files' up axis")
        p.add_argument("--jobs", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turnscope", description="Turning analysis of 3D skeleton sequences")
    sub = parser.add_subparsers(dest="command", required=True)

    angle = sub.add_parser("angle", help="turning angle, speed and max angular velocity per clip")
    angle.add_argument("inputs", nargs="*", help="skeleton files or directories")
    _add_common(angle)

    detect = sub.add_parser("detect", help="segment untrimmed sequences into turning episodes")
    detect.add_argument("inputs", nargs="*")
    _add_common(detect)
    detect.add_argument("--emit-clips", action="store_true", help="write one skeleton file per episode")
    detect.add_argument("--min-turn", type=float, default=None, help="degrees (default 45)")
    detect.add_argument("--detect-pairs", default=None, help="pairs used for detection (default hip)")
    detect.add_argument("--smooth-window", type=int, default=None)
    detect.add_argument("--min-rate", type=float, default=None, help="deg/s")
    detect.add_argument("--max-gap", type=int, default=None, help="frames")
    detect.add_argument("--reversal-tolerance", type=float, default=None, help="degrees")

    ev = sub.add_parser("eval", help="evaluate an angles table against annotations")
    ev.add_argument("results")
    ev.add_argument("annotations")
    ev.add_argument("--group-by", action="append", default=None, choices=list(GROUP_KEYS) + [OVERALL_KEY])
    _add_common(ev, clips=False)

    st = sub.add_parser("stats", help="PD vs control comparison of per-subject measures")
    st.add_argument("results")
    st.add_argument("annotations")
    st.add_argument("--measure", action="append", default=None, choices=MEASURES.names())
    st.add_argument("--welch", action="store_true", help="Welch t-test instead of pooled variance")
    st.add_argument("--ci-level", type=float, default=None)
    _add_common(st, clips=False)

    syn = sub.add_parser("synth", help="generate synthetic clips from a JSON plan")
    syn.add_argument("plan")
    _add_common(syn, clips=False)

    ab = sub.add_parser("ablate", help="evaluate every joint-pair combination")
    ab.add_argument("annotations")
    ab.add_argument("inputs", nargs="*")
    _add_common(ab)

    ag = sub.add_parser("agreement", help="Cohen's kappa between two annotation files")
    ag.add_argument("annotations_a")
    ag.add_argument("annotations_b")
    _add_common(ag, clips=False)
    return parser


def _detect_config(args: argparse.Namespace) -> DetectConfig:
    fields = {
        "min_turn_deg": getattr(args, "min_turn", None),
        "pairs": getattr(args, "detect_pairs", None),
        "smooth_window_frames": getattr(args, "smooth_window", None),
        "min_rate_deg_s": getattr(args, "min_rate", None),
        "max_gap_frames": getattr(args, "max_gap", None),
        "reversal_tolerance_deg": getattr(args, "reversal_tolerance", None),
    }
    return validated(DetectConfig, {k: v for k, v in fields.items() if v is not None}, prefix="detect")


def run_config(args: argparse.Namespace) -> RunConfig:
    settings = load_settings()
    data = {
        "pairs": getattr(args, "pairs", None) or settings.pairs,
        "mode": getattr(args, "mode", None) or settings.mode,
        "detect": _detect_config(args),
        "out_dir": args.out or settings.out_dir,
        "jobs": settings.jobs if getattr(args, "jobs", None) is None else args.jobs,
        "seed": settings.seed if args.seed is None else args.seed,
        "up_override": getattr(args, "up", None),
    }
    return validated(RunConfig, data)


def dispatch(args: argparse.Namespace) -> CommandResult:
    cfg = run_config(args)
    if args.command == "angle":
        return cmd_angle(args.inputs, cfg)
    if args.command == "detect":
        return cmd_detect(args.inputs, cfg, emit_clips=args.emit_clips)
    if args.command == "eval":
        return cmd_eval(args.results, args.annotations, args.group_by or ["scenario"], cfg.out_dir)
    if args.command == "stats":
        ci_level = args.ci_level if args.ci_level is not None else load_settings().ci_level
        if not 0 < ci_level < 1:
            raise ConfigError(f"ci-level: must be in (0, 1), got {ci_level}")
        return cmd_stats(args.results, args.annotations, args.measure or ["angle"], cfg.out_dir,
                         equal_var=not args.welch, ci_level=ci_level)
    if args.command == "synth":
        return cmd_synth(args.plan, cfg.seed, cfg.out_dir)
    if args.command == "ablate":
        return cmd_ablate(args.inputs, args.annotations, cfg)
    if args.command == "agreement":
        return cmd_agreement(args.annotations_a, args.annotations_b, cfg.out_dir)
    raise ConfigError(f"unknown command {args.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        level = (args.log_level or load_settings().log_level).upper()
    except ConfigError as exc:
        print(f"turnscope: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s %(message)s")

    try:
        result = dispatch(args)
    except ConfigError as exc:
        print(f"turnscope: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TurnscopeError, ValueError, OSError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"turnscope: {exc}", file=sys.stderr)
        return EXIT_FAILED

    for path in result.written:
        print(f"[OK] wrote {path}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
