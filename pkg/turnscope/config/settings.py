"""
Runtime defaults for turnscope.

Values come from the dataclass below, overridden by TURNSCOPE_* environment
variables (a local .env file is honoured), overridden in turn by CLI flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from dotenv import load_dotenv

from turnscope.core.errors import ConfigError

load_dotenv()

ENV_LOG_LEVEL = "TURNSCOPE_LOG_LEVEL"
ENV_JOBS = "TURNSCOPE_JOBS"
ENV_SEED = "TURNSCOPE_SEED"
ENV_OUT_DIR = "TURNSCOPE_OUT_DIR"


@dataclass(frozen=True)
class AnalysisDefaults:
    log_level: str = "WARNING"
    jobs: int = 1  # worker processes for per-clip work
    seed: int = 0
    out_dir: str = "turnscope_out"
    pairs: str = "hip,knee"
    mode: str = "unsigned"
    ci_level: float = 0.95


# Global instance
DEFAULT_SETTINGS = AnalysisDefaults()


def _int_env(env: Mapping[str, str], name: str, fallback: int) -> int:
    raw = env.get(name)
    if raw is None or raw.strip() == "":
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name}: expected an integer, got {raw!r}") from None


def load_settings(env: Optional[Mapping[str, str]] = None, base: AnalysisDefaults = DEFAULT_SETTINGS) -> AnalysisDefaults:
    env = os.environ if env is None else env
    settings = replace(
        base,
        log_level=(env.get(ENV_LOG_LEVEL) or base.log_level).upper(),
        jobs=_int_env(env, ENV_JOBS, base.jobs),
        seed=_int_env(env, ENV_SEED, base.seed),
        out_dir=env.get(ENV_OUT_DIR) or base.out_dir,
    )
    if settings.jobs < 1:
        raise ConfigError(f"{ENV_JOBS}: must be >= 1, got {settings.jobs}")
    return settings
