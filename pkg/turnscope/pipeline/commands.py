"""
Batch commands behind the CLI.

Each command reads its inputs, does the work (per clip through the ordered
worker pool where there is per-clip work), writes its tables under the output
directory and returns a CommandResult carrying the exit code.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from turnscope.analysis.registry import MEASURES
from turnscope.config.models import RunConfig
from turnscope.core.annotation import Annotation, Group
from turnscope.core.errors import ConfigError, EmptyInput
from turnscope.core.joints import pair_set_combinations
from turnscope.detection.episodes import EPISODE_COLUMNS
from turnscope.io.annotations import ANNOTATION_COLUMNS, OPTIONAL_COLUMNS, index_annotations, load_annotations
from turnscope.io.skeleton_file import SKELETON_SUFFIX, save_sequence
from turnscope.io.tables import read_table, render_text, write_table
from turnscope.metrics.evaluation import (
    GROUP_KEYS,
    OVERALL_KEY,
    REPORT_COLUMNS,
    EvalRecord,
    cohens_kappa,
    evaluate,
    grouped_eval,
    observed_agreement,
)
from turnscope.metrics.plot_data import (
    ERROR_HIST_COLUMNS,
    PRED_BY_BIN_COLUMNS,
    error_histogram,
    prediction_distribution,
)
from turnscope.metrics.quantize import parse_bin_label
from turnscope.pipeline.workers import (
    ANGLE_COLUMNS,
    AblationTask,
    AngleTask,
    DetectTask,
    ablate_clip,
    analyze_clip,
    detect_clip,
    expand_inputs,
    run_ordered,
)
from turnscope.stats.group_tests import STATS_COLUMNS, compare_groups, per_subject_means
from turnscope.synth.generator import GROUNDTRUTH_COLUMNS
from turnscope.synth.plan import expand_plan, load_plan

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2
EXIT_FAILED = 3

ABLATION_COLUMNS = ["selected_joints", "n", "accuracy", "mae_deg", "wprec"]
AGREEMENT_COLUMNS = ["n", "kappa", "observed_agreement"]
DETECT_ERROR_COLUMNS = ["path", "error"]


@dataclass
class CommandResult:
    exit_code: int = EXIT_OK
    written: List[Path] = field(default_factory=list)
    rows: List[Dict[str, object]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


def batch_exit_code(n_ok: int, n_failed: int) -> int:
    if n_failed == 0:
        return EXIT_OK
    return EXIT_PARTIAL if n_ok > 0 else EXIT_FAILED


def _clip_paths(inputs: Sequence[str | Path]) -> List[str]:
    paths = expand_inputs(inputs)
    if not paths:
        raise ConfigError("no input clips given")
    return paths


def _up(cfg: RunConfig) -> Optional[str]:
    return cfg.up_override.value if cfg.up_override is not None else None


def cmd_angle(inputs: Sequence[str | Path], cfg: RunConfig) -> CommandResult:
    paths = _clip_paths(inputs)
    tasks = [AngleTask(p, cfg.pair_set.label, cfg.mode.value, _up(cfg)) for p in paths]
    rows = run_ordered(analyze_clip, tasks, cfg.jobs)

    failed = sum(1 for r in rows if r["error"])
    out = write_table(cfg.out_dir / "angles.csv", ANGLE_COLUMNS, rows)
    logger.info("[ANGLE] %d clip(s), %d failed -> %s", len(rows), failed, out)
    return CommandResult(batch_exit_code(len(rows) - failed, failed), [out], rows)


def cmd_detect(inputs: Sequence[str | Path], cfg: RunConfig, emit_clips: bool = False) -> CommandResult:
    paths = _clip_paths(inputs)
    emit_dir = cfg.out_dir / "episodes" if emit_clips else None
    if emit_dir is not None:
        emit_dir.mkdir(parents=True, exist_ok=True)
    tasks = [DetectTask(p, cfg.detect, _up(cfg), str(emit_dir) if emit_dir else None) for p in paths]
    outcomes = run_ordered(detect_clip, tasks, cfg.jobs)

    rows = [row for o in outcomes for row in o.rows]
    written = [write_table(cfg.out_dir / "episodes.csv", EPISODE_COLUMNS, rows)]
    errors = [{"path": o.path, "error": o.error} for o in outcomes if o.error]
    if errors:
        written.append(write_table(cfg.out_dir / "detect_errors.csv", DETECT_ERROR_COLUMNS, errors))
    logger.info("[DETECT] %d clip(s), %d episode(s), %d failed", len(outcomes), len(rows), len(errors))
    return CommandResult(batch_exit_code(len(outcomes) - len(errors), len(errors)), written, rows)


@dataclass
class JoinedResults:
    records: List[EvalRecord]
    unmatched: List[str]
    failed: List[str]


def join_results(results_path: str | Path, annotations: Dict[str, Annotation]) -> JoinedResults:
    """Angles-table rows joined to annotations by clip_id."""
    records: List[EvalRecord] = []
    unmatched: List[str] = []
    failed: List[str] = []
    for row in read_table(results_path):
        clip_id = row.get("clip_id", "")
        if row.get("error"):
            failed.append(clip_id)
            continue
        ann = annotations.get(clip_id)
        if ann is None:
            unmatched.append(clip_id)
            continue
        omega = row.get("omega_deg_s")
        bin_label = row.get("bin")
        records.append(
            EvalRecord.from_annotation(
                clip_id,
                float(row["theta_deg"]),
                ann,
                predicted_omega_deg_s=float(omega) if omega else None,
                predicted=parse_bin_label(bin_label) if bin_label else None,
            )
        )
    return JoinedResults(records, unmatched, failed)


def _footer(joined: JoinedResults) -> str:
    lines = []
    if joined.unmatched:
        lines.append(f"unmatched clips ({len(joined.unmatched)}): {', '.join(joined.unmatched)}")
    if joined.failed:
        lines.append(f"failed clips ({len(joined.failed)}): {', '.join(joined.failed)}")
    return "\n".join(lines) + ("\n" if lines else "")


def cmd_eval(
    results_path: str | Path,
    annotations_path: str | Path,
    group_by: Sequence[str],
    out_dir: str | Path,
) -> CommandResult:
    for key in group_by:
        if key not in GROUP_KEYS and key != OVERALL_KEY:
            raise ConfigError(f"group-by: unknown key {key!r}; expected one of {', '.join(GROUP_KEYS)}")
    out_dir = Path(out_dir)
    joined = join_results(results_path, index_annotations(load_annotations(annotations_path)))
    if not joined.records:
        raise EmptyInput("no results joined with annotations")
    if joined.unmatched:
        logger.warning("[EVAL] %d result(s) without annotation", len(joined.unmatched))

    result = CommandResult()
    keys = list(group_by) or [OVERALL_KEY]
    for key in keys:
        if key == OVERALL_KEY:
            rows = [evaluate(joined.records).as_dict()]
        else:
            rows = grouped_eval(joined.records, key).table_rows()
        result.rows.extend(rows)
        result.written.append(write_table(out_dir / f"eval_{key}.csv", REPORT_COLUMNS, rows))
        text = render_text(REPORT_COLUMNS, rows, title=f"evaluation grouped by {key}") + _footer(joined)
        report = out_dir / f"eval_{key}.txt"
        report.write_text(text, encoding="utf-8")
        result.written.append(report)

    result.written.append(
        write_table(out_dir / "pred_by_bin.csv", PRED_BY_BIN_COLUMNS, prediction_distribution(joined.records))
    )
    result.written.append(write_table(out_dir / "error_hist.csv", ERROR_HIST_COLUMNS, error_histogram(joined.records)))
    result.notes = [f"unmatched:{c}" for c in joined.unmatched]
    return result


def cmd_stats(
    results_path: str | Path,
    annotations_path: str | Path,
    measures: Sequence[str],
    out_dir: str | Path,
    equal_var: bool = True,
    ci_level: float = 0.95,
) -> CommandResult:
    """PD (a) against control (b) for each measure, one datum per subject."""
    selected = [MEASURES.get(m) for m in (measures or ["angle"])]
    out_dir = Path(out_dir)
    annotations = index_annotations(load_annotations(annotations_path))
    rows = read_table(results_path)

    result = CommandResult()
    for measure in selected:
        triples = []
        for row in rows:
            ann = annotations.get(row.get("clip_id", ""))
            value = measure.value(row)
            if ann is None or value is None or ann.group is Group.UNKNOWN:
                continue
            triples.append((ann.subject_id, ann.group, value))
        if not triples:
            raise EmptyInput(f"{measure.name}: no results joined with group annotations")
        comparison = compare_groups(
            per_subject_means(triples), measure.name, Group.PD, Group.CONTROL, ci_level=ci_level, equal_var=equal_var
        )
        result.rows.extend(comparison.table_rows())

    result.written.append(write_table(out_dir / "stats.csv", STATS_COLUMNS, result.rows))
    report = out_dir / "stats.txt"
    title = "group comparison (Welch)" if not equal_var else "group comparison (pooled t-test)"
    report.write_text(render_text(STATS_COLUMNS, result.rows, title=title), encoding="utf-8")
    result.written.append(report)
    return result


def cmd_synth(plan_path: str | Path, seed: int, out_dir: str | Path) -> CommandResult:
    out_dir = Path(out_dir)
    clips = expand_plan(load_plan(plan_path), seed)
    clip_dir = out_dir / "clips"
    clip_dir.mkdir(parents=True, exist_ok=True)

    result = CommandResult()
    annotation_rows = []
    for clip in clips:
        path = clip_dir / f"{clip.clip_id}{SKELETON_SUFFIX}"
        save_sequence(clip.sequence, path)
        result.rows.append(clip.groundtruth.as_row())
        ann = clip.annotation()
        if ann is None:
            logger.info("[SYNTH] %s: %.3g deg is below the first label bin; no annotation", clip.clip_id,
                        clip.groundtruth.turn_deg)
            continue
        annotation_rows.append(
            {
                "clip_id": ann.clip_id,
                "label_deg": ann.label_bin,
                "duration_s": ann.duration_s,
                "scenario": ann.scenario,
                "location": ann.location,
                "subject_id": ann.subject_id,
                "group": ann.group,
                "speed_deg_s": ann.speed_deg_s,
            }
        )

    result.written.append(write_table(out_dir / "groundtruth.csv", GROUNDTRUTH_COLUMNS, result.rows))
    result.written.append(
        write_table(out_dir / "annotations.csv", ANNOTATION_COLUMNS + OPTIONAL_COLUMNS, annotation_rows)
    )
    logger.info("[SYNTH] wrote %d clip(s) to %s", len(clips), clip_dir)
    return result


def cmd_ablate(inputs: Sequence[str | Path], annotations_path: str | Path, cfg: RunConfig) -> CommandResult:
    """Evaluate every joint-pair combination against the same annotations."""
    paths = _clip_paths(inputs)
    annotations = index_annotations(load_annotations(annotations_path))
    outcomes = run_ordered(ablate_clip, [AblationTask(p, cfg.mode.value, _up(cfg)) for p in paths], cfg.jobs)

    result = CommandResult()
    for pair_set in pair_set_combinations():
        records = [
            EvalRecord.from_annotation(
                o.clip_id,
                o.theta_by_pairs[pair_set.label],
                annotations[o.clip_id],
                predicted_omega_deg_s=o.omega_by_pairs[pair_set.label],
            )
            for o in outcomes
            if pair_set.label in o.theta_by_pairs and o.clip_id in annotations
        ]
        if not records:
            logger.warning("[EVAL] %s: no evaluable clips", pair_set.label)
            result.rows.append({"selected_joints": pair_set.label, "n": 0})
            continue
        row = evaluate(records, group_key=pair_set.label)
        result.rows.append(
            {"selected_joints": pair_set.label, "n": row.n, "accuracy": row.accuracy, "mae_deg": row.mae_deg,
             "wprec": row.wprec}
        )

    if all(r["n"] == 0 for r in result.rows):
        raise EmptyInput("ablation: no clip joined with annotations")
    failed = sum(1 for o in outcomes if o.error)
    result.exit_code = batch_exit_code(len(outcomes) - failed, failed)
    result.written.append(write_table(cfg.out_dir / "ablation.csv", ABLATION_COLUMNS, result.rows))
    return result


def cmd_agreement(annotations_a: str | Path, annotations_b: str | Path, out_dir: str | Path) -> CommandResult:
    """Cohen's kappa between two raters' label bins over their shared clips."""
    a = index_annotations(load_annotations(annotations_a))
    b = index_annotations(load_annotations(annotations_b))
    shared = [clip for clip in a if clip in b]
    if not shared:
        raise EmptyInput("agreement: the two annotation files share no clip")
    only = sorted(set(a) ^ set(b))
    if only:
        logger.warning("[EVAL] agreement: %d clip(s) annotated by one rater only", len(only))

    rater_a = [a[c].label_bin for c in shared]
    rater_b = [b[c].label_bin for c in shared]
    row = {"n": len(shared), "kappa": cohens_kappa(rater_a, rater_b),
           "observed_agreement": observed_agreement(rater_a, rater_b)}
    out = write_table(Path(out_dir) / "agreement.csv", AGREEMENT_COLUMNS, [row])
    return CommandResult(EXIT_OK, [out], [row], [f"single-rater:{c}" for c in only])
