from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import stats as sps

from turnscope.analysis.registry import MEASURES, Measure, MeasureRegistry
from turnscope.core.annotation import Group
from turnscope.core.errors import EmptyInput, InsufficientSubjects
from turnscope.geometry.angles import total_angle
from turnscope.stats import (
    GroupStats,
    compare_groups,
    per_subject_means,
    student_t_cdf,
    summarize_group,
    t_critical,
    t_test_from_samples,
    t_test_from_summary,
    two_tailed_p,
)
from turnscope.synth.cohort import generate_cohort


class TestStudentT:
    def test_cdf_at_zero(self):
        assert student_t_cdf(0.0, 7) == 0.5

    @pytest.mark.parametrize("t", [0.1, 1.0, 2.5, 7.0])
    @pytest.mark.parametrize("df", [1, 4.5, 30])
    def test_symmetry(self, t, df):
        assert student_t_cdf(t, df) + student_t_cdf(-t, df) == pytest.approx(1.0, abs=1e-12)

    def test_table_value(self):
        assert two_tailed_p(2.228, 10) == pytest.approx(0.05, abs=5e-4)

    def test_matches_scipy(self):
        for t, df in [(-3.1, 5), (0.4, 12), (1.9, 40)]:
            assert student_t_cdf(t, df) == pytest.approx(sps.t.cdf(t, df), abs=1e-8)

    def test_critical_value(self):
        assert t_critical(10, 0.95) == pytest.approx(2.228, abs=1e-3)
        with pytest.raises(ValueError):
            t_critical(10, 1.0)

    def test_invalid_df(self):
        with pytest.raises(ValueError):
            two_tailed_p(1.0, 0)


class TestSummaries:
    def test_summarize(self):
        g = summarize_group([1, 2, 3])
        assert (g.n, g.mean, g.sd) == (3, 2.0, 1.0)
        assert summarize_group([4, 4, 4]).sd == 0.0

    def test_too_few(self):
        with pytest.raises(InsufficientSubjects):
            summarize_group([1.0])
        with pytest.raises(InsufficientSubjects):
            GroupStats.build(1, 0.0, 0.0)

    def test_per_subject_means(self):
        means = per_subject_means([("S1", "PD", 80.0), ("S2", "control", 50.0), ("S1", "PD", 100.0)])
        assert [(m.subject_id, m.value) for m in means] == [("S1", 90.0), ("S2", 50.0)]

    def test_subject_in_two_groups(self):
        with pytest.raises(ValueError, match="S1"):
            per_subject_means([("S1", "PD", 80.0), ("S1", "control", 100.0)])

    def test_empty(self):
        with pytest.raises(EmptyInput):
            per_subject_means([])


class TestTTest:
    def test_published_angle_row(self):
        r = t_test_from_summary(GroupStats.build(11, 92.65, 13.21), GroupStats.build(11, 103.75, 16.75))
        assert r.t_stat == pytest.approx(-1.73, abs=0.01)
        assert r.cohens_d == pytest.approx(-0.74, abs=0.01)
        assert r.df == 20

    def test_published_max_velocity_row(self):
        r = t_test_from_summary(GroupStats.build(11, 127.86, 29.77), GroupStats.build(11, 160.19, 36.49))
        assert r.t_stat == pytest.approx(-2.28, abs=0.01)
        assert r.cohens_d == pytest.approx(-0.97, abs=0.01)
        assert r.p_two_tailed == pytest.approx(0.034, abs=0.002)
        assert r.significant

    def test_identical_groups(self):
        r = t_test_from_samples([1, 2, 3], [1, 2, 3])
        assert (r.t_stat, r.p_two_tailed, r.cohens_d) == (0.0, 1.0, 0.0)

    def test_zero_variance_marker(self):
        r = t_test_from_samples([0, 0, 0, 0], [1, 1, 1, 1])
        assert r.t_stat == -math.inf
        assert r.p_two_tailed == 0.0

    def test_antisymmetric(self):
        a, b = GroupStats.build(9, 10.0, 2.0), GroupStats.build(12, 12.5, 3.0)
        ab, ba = t_test_from_summary(a, b), t_test_from_summary(b, a)
        assert ab.t_stat == pytest.approx(-ba.t_stat)
        assert ab.cohens_d == pytest.approx(-ba.cohens_d)
        assert ab.p_two_tailed == pytest.approx(ba.p_two_tailed)

    def test_location_scale_equivariance(self):
        rng = np.random.default_rng(2)
        a, b = rng.normal(0, 1, 10), rng.normal(0.5, 1, 13)
        base = t_test_from_samples(a, b)
        moved = t_test_from_samples(3.0 * a + 7.0, 3.0 * b + 7.0)
        assert moved.t_stat == pytest.approx(base.t_stat, rel=1e-9)
        assert moved.cohens_d == pytest.approx(base.cohens_d, rel=1e-9)
        assert moved.ci_low == pytest.approx(3.0 * base.ci_low, rel=1e-9)

    def test_ci_agrees_with_p(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            r = t_test_from_samples(rng.normal(0, 1, 6), rng.normal(rng.uniform(0, 2), 1, 7))
            assert r.significant == (not r.ci_low <= 0.0 <= r.ci_high)

    def test_samples_match_summary(self):
        a, b = [3.0, 5.5, 4.0, 6.1], [7.2, 6.0, 8.8]
        direct = t_test_from_samples(a, b)
        summary = t_test_from_summary(summarize_group(a), summarize_group(b))
        assert direct == summary

    def test_matches_scipy_both_variants(self):
        a, b = [3.0, 5.5, 4.0, 6.1, 2.2], [7.2, 6.0, 8.8, 5.1]
        for equal_var in (True, False):
            ours = t_test_from_samples(a, b, equal_var=equal_var)
            ref = sps.ttest_ind(a, b, equal_var=equal_var)
            assert ours.t_stat == pytest.approx(ref.statistic, rel=1e-9)
            assert ours.p_two_tailed == pytest.approx(ref.pvalue, abs=1e-8)

    def test_welch_df(self):
        r = t_test_from_summary(GroupStats.build(5, 0, 1), GroupStats.build(20, 1, 4), equal_var=False)
        assert 19 < r.df < 24
        assert not r.equal_var

    def test_p_uniform_under_null(self):
        rng = np.random.default_rng(11)
        ps = [t_test_from_samples(rng.normal(0, 1, 8), rng.normal(0, 1, 8)).p_two_tailed for _ in range(4000)]
        assert sps.kstest(ps, "uniform").statistic < 0.035


class TestCohortComparison:
    @staticmethod
    def _subjects(clips, measure):
        records = []
        for clip in clips:
            est = total_angle(clip.sequence)
            records.append((clip.subject_id, clip.group, getattr(est, measure)))
        return per_subject_means(records)

    def test_angle_means_recovered(self):
        pd = generate_cohort(11, 2, 92.65, 13.21, 120.0, 20.0, seed=1, group=Group.PD, stream=0)
        co = generate_cohort(11, 2, 103.75, 16.75, 150.0, 25.0, seed=1, group=Group.CONTROL, stream=1)
        comparison = compare_groups(self._subjects(pd + co, "theta_deg"), "angle", Group.PD, Group.CONTROL)
        assert comparison.a.n == comparison.b.n == 11
        assert abs(comparison.a.mean - 92.65) < 3 * 13.21 / math.sqrt(11)
        assert abs(comparison.b.mean - 103.75) < 3 * 16.75 / math.sqrt(11)
        sampled = [c.groundtruth.turn_deg for c in pd[::2]]
        assert comparison.a.mean == pytest.approx(np.mean(sampled), abs=1e-6)

    def test_max_velocity_direction(self):
        pd = generate_cohort(30, 1, 92.65, 13.21, 127.86, 29.77, seed=4, group=Group.PD, stream=0)
        co = generate_cohort(30, 1, 103.75, 16.75, 160.19, 36.49, seed=4, group=Group.CONTROL, stream=1)
        comparison = compare_groups(self._subjects(pd + co, "w_max_deg_s"), "w_max", Group.PD, Group.CONTROL)
        assert comparison.result.t_stat < 0
        rows = comparison.table_rows()
        assert [r["group"] for r in rows] == ["PD", "control"]
        assert rows[1]["t"] is None

    def test_single_group(self):
        pd = generate_cohort(3, 1, 90, 5, 100, 5, seed=0, group=Group.PD)
        with pytest.raises(InsufficientSubjects):
            compare_groups(self._subjects(pd, "theta_deg"), "angle", Group.PD, Group.CONTROL)


class TestMeasureRegistry:
    def test_default_measures(self):
        assert MEASURES.names() == ["angle", "w_max", "omega"]
        assert MEASURES.get("w_max").column == "w_max_deg_s"

    def test_value_skips_failed_rows(self):
        angle = MEASURES.get("angle")
        assert angle.value({"theta_deg": "91.5", "error": ""}) == 91.5
        assert angle.value({"theta_deg": "", "error": "TooShort: x"}) is None

    def test_duplicate_and_unknown(self):
        registry = MeasureRegistry()
        registry.register(Measure("angle", "theta_deg", "deg"))
        with pytest.raises(ValueError, match="already registered"):
            registry.register(Measure("angle", "theta_deg", "deg"))
        with pytest.raises(ValueError, match="angle"):
            registry.get("speed")
