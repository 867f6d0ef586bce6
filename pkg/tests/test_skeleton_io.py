"""
Skeleton data model and file formats.

Covers the turnskel reader/writer, annotation tables and the canonical
joint order.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from turnscope.core.annotation import Group, Scenario
from turnscope.core.errors import AnnotationError, SkeletonFormatError
from turnscope.core.joints import JOINT_NAMES, JointId, JointPair, JointPairSet, pair_set_combinations
from turnscope.core.skeleton import SkeletonFrame, SkeletonSequence, UpAxis
from turnscope.io.annotations import index_annotations, load_annotations, read_annotations
from turnscope.io.skeleton_file import dumps_sequence, load_sequence, loads_sequence, save_sequence
from turnscope.io.tables import format_float, render_csv

HEADER = "#turnskel v1 fps=30 up=z joints=17 clip=demo"


def _frame_line(values=None) -> str:
    values = values if values is not None else [float(i) for i in range(51)]
    return " ".join(str(v) for v in values)


class TestJoints:
    def test_canonical_order(self):
        assert JOINT_NAMES == (
            "pelvis", "right_hip", "right_knee", "right_ankle", "left_hip", "left_knee", "left_ankle",
            "spine", "thorax", "neck", "head", "left_shoulder", "left_elbow", "left_wrist",
            "right_shoulder", "right_elbow", "right_wrist",
        )
        assert len(JointId) == 17
        assert all(JointId.from_name(n) == i for i, n in enumerate(JOINT_NAMES))

    def test_pair_lookups(self):
        assert JointPair.HIP.joints == (JointId.LEFT_HIP, JointId.RIGHT_HIP)
        assert [int(j) for j in JointPair.KNEE.joints] == [5, 2]
        assert [int(j) for j in JointPair.SHOULDER.joints] == [11, 14]

    def test_pair_set_rules(self):
        assert JointPairSet.parse("knee,hip").label == "hip+knee"
        with pytest.raises(ValueError):
            JointPairSet.parse("hip,hip")
        with pytest.raises(ValueError):
            JointPairSet.build([])
        labels = [s.label for s in pair_set_combinations()]
        assert len(labels) == 7
        assert labels[0] == "hip" and labels[-1] == "hip+knee+shoulder"


class TestSkeletonTypes:
    def test_partial_joint_rejected(self):
        pos = np.zeros((17, 3))
        pos[4, 1] = np.nan
        with pytest.raises(ValueError):
            SkeletonFrame.build(pos)

    def test_fps_must_be_positive(self):
        with pytest.raises(ValueError):
            SkeletonSequence.build(np.zeros((2, 17, 3)), fps=0, up_axis="z", clip_id="x")
        with pytest.raises(ValueError):
            SkeletonSequence.build(np.zeros((2, 17, 3)), fps=math.inf, up_axis="z", clip_id="x")

    def test_sequence_is_read_only(self):
        seq = SkeletonSequence.build(np.zeros((2, 17, 3)), fps=30, up_axis="y", clip_id="x")
        with pytest.raises(ValueError):
            seq.positions[0, 0, 0] = 1.0
        assert seq.up_axis is UpAxis.Y
        assert seq.duration_s == pytest.approx(1 / 30)


class TestLoadSequence:
    def test_two_valid_frames(self, tmp_path):
        path = tmp_path / "demo.tskel"
        path.write_text("\n".join([HEADER, _frame_line(), _frame_line()]) + "\n")
        seq = load_sequence(path)
        assert seq.num_frames == 2
        assert seq.fps == 30
        assert seq.clip_id == "demo"
        assert seq.positions[1, 16, 2] == 50.0

    def test_sixteen_joints_rejected(self):
        text = "\n".join([HEADER, _frame_line([0.0] * 48)])
        with pytest.raises(SkeletonFormatError, match="joint count mismatch") as info:
            loads_sequence(text)
        assert info.value.line == 2

    def test_missing_joint_preserved(self):
        frames = [[float(i) for i in range(51)] for _ in range(7)]
        left_hip = int(JointId.LEFT_HIP)
        frames[5][3 * left_hip:3 * left_hip + 3] = [math.nan] * 3
        text = "\n".join([HEADER] + [_frame_line(f) for f in frames])
        seq = loads_sequence(text)
        assert seq.frame(5).is_missing(JointId.LEFT_HIP)
        assert not seq.frame(4).is_missing(JointId.LEFT_HIP)
        assert seq.num_frames == 7

    @pytest.mark.parametrize(
        "header, message",
        [
            ("#turnskel v1 fps=0 up=z joints=17 clip=a", "fps must be finite"),
            ("#turnskel v1 fps=-3 up=z joints=17 clip=a", "fps must be finite"),
            ("turnskel fps=30", "malformed header"),
            ("#turnskel v1 fps=30 up=w joints=17 clip=a", "malformed header"),
            ("#turnskel v1 fps=30 up=z joints=16 clip=a", "joint count mismatch"),
        ],
    )
    def test_bad_headers(self, header, message):
        with pytest.raises(SkeletonFormatError, match=message):
            loads_sequence(header + "\n" + _frame_line())

    def test_partial_nan_reported_with_line(self):
        values = [0.0] * 51
        values[0] = math.nan
        with pytest.raises(SkeletonFormatError, match="not marked missing") as info:
            loads_sequence("\n".join([HEADER, _frame_line(), _frame_line(values)]))
        assert info.value.line == 3

    def test_clip_id_may_contain_spaces(self):
        seq = loads_sequence("#turnskel v1 fps=25 up=y joints=17 clip=walk 03 b\n" + _frame_line())
        assert seq.clip_id == "walk 03 b"


class TestRoundTrip:
    def test_bit_exact(self, tmp_path):
        rng = np.random.default_rng(7)
        pos = rng.normal(size=(12, 17, 3)) * 1e3
        pos[3, 2] = np.nan
        seq = SkeletonSequence.build(pos, fps=29.97, up_axis="y", clip_id="rt")
        path = tmp_path / "rt.tskel"
        save_sequence(seq, path)
        back = load_sequence(path)
        assert back == seq
        assert np.isnan(back.positions[3, 2]).all()
        assert dumps_sequence(back) == path.read_text()

    def test_empty_sequence(self, tmp_path):
        seq = SkeletonSequence.build(np.zeros((0, 17, 3)), fps=50, up_axis="z", clip_id="empty")
        path = tmp_path / "empty.tskel"
        save_sequence(seq, path)
        back = load_sequence(path)
        assert back.num_frames == 0
        assert back == seq


class TestAnnotations:
    def test_valid_record(self, write_annotations):
        path = write_annotations([("clip7", 180, "2.350", "clinical", "hall", "S3", "PD")])
        (ann,) = load_annotations(path)
        assert ann.label_bin == 180
        assert ann.duration_s == pytest.approx(2.35)
        assert ann.scenario is Scenario.CLINICAL
        assert ann.group is Group.PD

    def test_label_not_multiple(self, write_annotations):
        path = write_annotations([("c", 100, 1.0, "clinical", "hall", "S3", "PD")])
        with pytest.raises(AnnotationError, match="label not a 45° multiple") as info:
            load_annotations(path)
        assert info.value.line == 2

    def test_label_above_largest_bin(self, write_annotations):
        path = write_annotations(
            [("a", 360, 1.0, "clinical", "hall", "S3", "PD"), ("b", 405, 3.0, "clinical", "hall", "S3", "PD")]
        )
        with pytest.raises(AnnotationError, match="label above 360") as info:
            load_annotations(path)
        assert info.value.line == 3

    def test_zero_duration(self, write_annotations):
        path = write_annotations([("c", 90, 0, "clinical", "hall", "S3", "PD")])
        with pytest.raises(AnnotationError, match="non-positive duration"):
            load_annotations(path)

    def test_missing_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("clip_id,label_deg\nc,90\n")
        with pytest.raises(AnnotationError, match="missing required column"):
            load_annotations(path)

    def test_unknown_vocabulary_counted(self, write_annotations):
        path = write_annotations(
            [("a", 90, 1.0, "bowling", "hall", "S1", "PD"), ("b", 90, 1.0, "clinical", "hall", "S2", "elderly")]
        )
        result = read_annotations(path)
        assert result.unknown_vocabulary == 2
        assert result.records[0].scenario is Scenario.UNKNOWN
        assert result.records[1].group is Group.UNKNOWN

    def test_optional_speed_column(self, write_annotations):
        path = write_annotations([("a", 90, 1.5, "clinical", "hall", "S1", "PD", 60)], extra_header="speed_deg_s")
        (ann,) = load_annotations(path)
        assert ann.speed_deg_s == 60.0

    def test_duplicates_keep_first(self, write_annotations):
        path = write_annotations([("a", 90, 1.0, "", "", "S1", ""), ("a", 180, 1.0, "", "", "S1", "")])
        index = index_annotations(load_annotations(path))
        assert index["a"].label_bin == 90


class TestTables:
    @pytest.mark.parametrize(
        "value, text",
        [(90.0, "90"), (0.1 + 0.2, "0.3"), (2 / 3, "0.666667"), (123456.5, "123456"), (123457.5, "123458"),
         (-1.72612345, "-1.72612"), (0.0, "0"), (math.nan, "nan")],
    )
    def test_six_significant_half_even(self, value, text):
        assert format_float(value) == text

    def test_csv_has_header_and_blank_for_none(self):
        text = render_csv(["a", "b"], [{"a": 1.5, "b": None}])
        assert text == "a,b\n1.5,\n"
