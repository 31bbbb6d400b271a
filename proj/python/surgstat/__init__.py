"""Surgical duration fitting, capacity planning and schedule simulation."""

from ._core import (
    SurgstatError,
    anderson_darling_normal,
    bootstrap_percentile,
    breakdown_day_probability,
    exact_multinomial,
    fit_family,
    fixture_durations,
    lilliefors,
    lognormal_moments,
    lognormal_sum_percentile,
    max_patients,
    normality_test,
    select_best,
    shapiro_wilk,
    simulate_week,
    two_sample_t,
)

__all__ = [
    "SurgstatError",
    "anderson_darling_normal",
    "bootstrap_percentile",
    "breakdown_day_probability",
    "exact_multinomial",
    "fit_family",
    "fixture_durations",
    "lilliefors",
    "lognormal_moments",
    "lognormal_sum_percentile",
    "max_patients",
    "normality_test",
    "select_best",
    "shapiro_wilk",
    "simulate_week",
    "two_sample_t",
]
