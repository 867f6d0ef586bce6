"""Student-t distribution helpers built on the regularized incomplete beta function."""

from __future__ import annotations

import math

from scipy import special, stats


def _tail_mass(t: float, df: float) -> float:
    """P(|T| >= |t|) for T ~ t(df)."""
    if math.isinf(t):
        return 0.0
    x = df / (df + t * t)
    return float(min(max(special.betainc(df / 2.0, 0.5, x), 0.0), 1.0))


def student_t_cdf(t: float, df: float) -> float:
    if df <= 0 or math.isnan(t):
        raise ValueError(f"student_t_cdf: invalid arguments t={t}, df={df}")
    if t == 0:
        return 0.5
    half = 0.5 * _tail_mass(t, df)
    return 1.0 - half if t > 0 else half


def two_tailed_p(t: float, df: float) -> float:
    if df <= 0 or math.isnan(t):
        raise ValueError(f"two_tailed_p: invalid arguments t={t}, df={df}")
    if t == 0:
        return 1.0
    return _tail_mass(t, df)


def t_critical(df: float, level: float = 0.95) -> float:
    """Two-sided critical value: P(|T| <= t_crit) == level."""
    if not 0.0 < level < 1.0:
        raise ValueError(f"confidence level must be in (0, 1), got {level}")
    return float(stats.t.ppf(0.5 + level / 2.0, df))
