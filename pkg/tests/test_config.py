from __future__ import annotations

from pathlib import Path

import pytest

from turnscope.config import DEFAULT_SETTINGS, DetectConfig, RunConfig, load_settings, validated
from turnscope.core.errors import ConfigError
from turnscope.core.joints import DEFAULT_PAIR_SET, JointPair
from turnscope.core.skeleton import UpAxis
from turnscope.geometry.angles import StepMode
from turnscope.main import build_parser, run_config


class TestSettings:
    def test_defaults_without_env(self):
        assert load_settings(env={}) == DEFAULT_SETTINGS

    def test_env_overrides(self):
        s = load_settings(env={"TURNSCOPE_JOBS": "4", "TURNSCOPE_SEED": "9", "TURNSCOPE_LOG_LEVEL": "debug",
                               "TURNSCOPE_OUT_DIR": "/tmp/x"})
        assert (s.jobs, s.seed, s.log_level, s.out_dir) == (4, 9, "DEBUG", "/tmp/x")

    def test_blank_values_fall_back(self):
        assert load_settings(env={"TURNSCOPE_JOBS": " "}).jobs == DEFAULT_SETTINGS.jobs

    @pytest.mark.parametrize("env", [{"TURNSCOPE_JOBS": "many"}, {"TURNSCOPE_JOBS": "0"}, {"TURNSCOPE_SEED": "1.5"}])
    def test_invalid(self, env):
        with pytest.raises(ConfigError, match="TURNSCOPE_"):
            load_settings(env=env)


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.pair_set == DEFAULT_PAIR_SET
        assert cfg.mode is StepMode.UNSIGNED_ARCSIN
        assert cfg.detect.pairs == (JointPair.HIP,)

    def test_parses_strings(self):
        cfg = RunConfig(pairs="shoulder+hip", mode="signed_atan2", up_override="y", out_dir="out")
        assert cfg.pair_set.label == "hip+shoulder"
        assert cfg.mode is StepMode.SIGNED_ATAN2
        assert cfg.up_override is UpAxis.Y
        assert cfg.out_dir == Path("out")

    def test_errors_name_the_field(self):
        with pytest.raises(ConfigError, match="jobs"):
            validated(RunConfig, {"jobs": 0})
        with pytest.raises(ConfigError, match="mode"):
            validated(RunConfig, {"mode": "sideways"})
        with pytest.raises(ConfigError, match="extra"):
            validated(RunConfig, {"extra": 1})

    def test_detect_prefix(self):
        with pytest.raises(ConfigError, match=r"detect\.min_turn_deg"):
            validated(DetectConfig, {"min_turn_deg": 0}, prefix="detect")


class TestCliConfig:
    def test_flags_override_env(self, monkeypatch):
        monkeypatch.setenv("TURNSCOPE_JOBS", "3")
        monkeypatch.setenv("TURNSCOPE_SEED", "5")
        args = build_parser().parse_args(["angle", "x.tskel", "--jobs", "2", "--pairs", "knee"])
        cfg = run_config(args)
        assert (cfg.jobs, cfg.seed) == (2, 5)
        assert cfg.pair_set.label == "knee"

    def test_zero_jobs_flag_is_rejected(self, monkeypatch):
        monkeypatch.delenv("TURNSCOPE_JOBS", raising=False)
        args = build_parser().parse_args(["angle", "x.tskel", "--jobs", "0"])
        with pytest.raises(ConfigError, match="jobs"):
            run_config(args)

    def test_detect_flags(self):
        args = build_parser().parse_args(["detect", "x.tskel", "--min-turn", "60", "--detect-pairs", "hip,knee"])
        cfg = run_config(args)
        assert cfg.detect.min_turn_deg == 60
        assert cfg.detect.pair_set == DEFAULT_PAIR_SET
