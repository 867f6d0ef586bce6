from turnscope.stats.group_tests import (
    STATS_COLUMNS,
    GroupComparison,
    GroupStats,
    SubjectMean,
    TTestResult,
    compare_groups,
    per_subject_means,
    summarize_group,
    t_test_from_samples,
    t_test_from_summary,
)
from turnscope.stats.student_t import student_t_cdf, t_critical, two_tailed_p

__all__ = [
    "GroupComparison",
    "GroupStats",
    "STATS_COLUMNS",
    "SubjectMean",
    "TTestResult",
    "compare_groups",
    "per_subject_means",
    "student_t_cdf",
    "summarize_group",
    "t_critical",
    "t_test_from_samples",
    "t_test_from_summary",
    "two_tailed_p",
]
