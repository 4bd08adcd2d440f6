"""Analytic and empirical privacy metrics."""

from privacy_analysis.load import LoadReport, load_report, metrics_report, observed_params
from privacy_analysis.metrics import (
    NetworkParams,
    expected_load,
    guess_prob_advanced,
    guess_prob_naive,
    total_snodes,
)

__all__ = [
    "LoadReport",
    "NetworkParams",
    "expected_load",
    "guess_prob_advanced",
    "guess_prob_naive",
    "load_report",
    "metrics_report",
    "observed_params",
    "total_snodes",
]
