from __future__ import annotations

import numpy as np
import pytest

from turnscope.config.models import DetectConfig, validated
from turnscope.core.errors import ConfigError, TooShort
from turnscope.core.skeleton import TurnDirection
from turnscope.detection.episodes import TurnEpisode, detect_turns, trim_episode
from turnscope.geometry.angles import StepMode, total_angle
from turnscope.synth.generator import generate_walk
from turnscope.synth.noise import add_noise
from turnscope.synth.params import NoiseParams, RateProfile, SynthParams, TurnSegment

BODY = SynthParams(post_walk_s=2.0, clip_id="walk")


def _walk(*segments, post_walk_s=2.0):
    return generate_walk(list(segments), BODY.model_copy(update={"post_walk_s": post_walk_s}))


class TestDetectConfig:
    def test_defaults(self):
        cfg = DetectConfig()
        assert cfg.min_turn_deg == 45
        assert cfg.pair_set.label == "hip"
        assert cfg.smooth_window_frames == 5

    @pytest.mark.parametrize(
        "field, value",
        [("min_turn_deg", 0), ("smooth_window_frames", 4), ("max_gap_frames", -1), ("min_rate_deg_s", -5)],
    )
    def test_invalid(self, field, value):
        with pytest.raises(ConfigError, match=field):
            validated(DetectConfig, {field: value}, prefix="detect")

    def test_pairs_from_text(self):
        assert DetectConfig(pairs="knee,hip").pair_set.label == "hip+knee"


class TestDetectTurns:
    def test_straight_walk(self):
        seq, truths = _walk(post_walk_s=4.0)
        assert truths == []
        assert detect_turns(seq, DetectConfig()) == []

    def test_single_ninety(self):
        seq, (truth,) = _walk(TurnSegment(turn_deg=90, duration_s=1.5, lead_s=2.0))
        cfg = DetectConfig()
        (ep,) = detect_turns(seq, cfg)
        assert 85 <= ep.accumulated_deg <= 95
        assert ep.direction is TurnDirection.CCW
        assert abs(ep.start_frame - truth.start_frame) <= cfg.smooth_window_frames
        assert abs(ep.end_frame - truth.end_frame) <= cfg.smooth_window_frames
        assert ep.end_frame - ep.start_frame >= 2

    def test_sub_threshold_wiggle(self):
        swings = []
        for k in range(6):
            direction = TurnDirection.CCW if k % 2 == 0 else TurnDirection.CW
            swings.append(TurnSegment(turn_deg=30, duration_s=0.5, direction=direction, lead_s=0.2))
        seq, _ = _walk(*swings)
        assert detect_turns(seq, DetectConfig()) == []

    def test_two_turns_opposite_directions(self):
        seq, truths = _walk(
            TurnSegment(turn_deg=180, duration_s=2.0, lead_s=1.0),
            TurnSegment(turn_deg=90, duration_s=1.5, direction=TurnDirection.CW, lead_s=3.0),
        )
        episodes = detect_turns(seq, DetectConfig())
        assert [e.direction for e in episodes] == [TurnDirection.CCW, TurnDirection.CW]
        for ep, truth in zip(episodes, truths):
            assert ep.accumulated_deg == pytest.approx(truth.turn_deg, abs=5)
        assert episodes[0].end_frame <= episodes[1].start_frame
        assert [e.index for e in episodes] == [0, 1]

    def test_too_short(self, pose_sequence):
        with pytest.raises(TooShort):
            detect_turns(pose_sequence([0.0]), DetectConfig())

    def test_deterministic_and_threshold_monotone(self):
        seq, _ = _walk(
            TurnSegment(turn_deg=60, duration_s=1.0, lead_s=1.0),
            TurnSegment(turn_deg=120, duration_s=1.5, rate_profile=RateProfile.SMOOTHSTEP, lead_s=1.5),
        )
        first = detect_turns(seq, DetectConfig())
        assert detect_turns(seq, DetectConfig()) == first
        counts = [len(detect_turns(seq, DetectConfig(min_turn_deg=t))) for t in (10, 45, 70, 100, 150)]
        assert counts == sorted(counts, reverse=True)
        assert counts[:2] == [2, 2]
        assert counts[-1] == 0

    def test_trimmed_episode_is_self_consistent(self):
        seq, _ = _walk(
            TurnSegment(turn_deg=135, duration_s=2.0, lead_s=1.0),
            TurnSegment(turn_deg=70, duration_s=1.0, direction=TurnDirection.CW, lead_s=1.0),
        )
        cfg = DetectConfig()
        episodes = detect_turns(seq, cfg)
        assert len(episodes) == 2
        for ep in episodes:
            est = total_angle(trim_episode(seq, ep), cfg.pair_set, StepMode.SIGNED_ATAN2)
            assert est.theta_deg >= cfg.min_turn_deg - cfg.reversal_tolerance_deg

    def test_survives_dropout(self):
        seq, (truth,) = _walk(TurnSegment(turn_deg=90, duration_s=1.5, lead_s=2.0))
        noisy = add_noise(seq, NoiseParams(dropout_prob=0.05, seed=11))
        (ep,) = detect_turns(noisy, DetectConfig())
        assert ep.accumulated_deg == pytest.approx(90, abs=5)


class TestTrimEpisode:
    @pytest.fixture
    def seq(self, pose_sequence):
        return pose_sequence(np.linspace(0, 99, 100), clip_id="long")

    def test_inner_span(self, seq):
        clip = trim_episode(seq, TurnEpisode.build(10, 40, 30.0, "ccw", 30.0, index=3))
        assert clip.num_frames == 30
        assert clip.clip_id == "long_ep3"
        assert clip.fps == seq.fps and clip.up_axis == seq.up_axis
        np.testing.assert_array_equal(clip.positions, seq.positions[10:40])

    def test_whole_sequence(self, seq):
        clip = trim_episode(seq, TurnEpisode.build(0, 100, 99.0, "ccw", 30.0))
        np.testing.assert_array_equal(clip.positions, seq.positions)

    def test_out_of_range(self, seq):
        with pytest.raises(ValueError):
            trim_episode(seq, TurnEpisode.build(90, 120, 30.0, "ccw", 30.0))

    def test_episode_needs_two_frames(self):
        with pytest.raises(ValueError):
            TurnEpisode.build(5, 6, 50.0, "cw", 10.0)
