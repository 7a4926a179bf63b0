"""Exact and estimated most-likely union sizes for three overlapping sets."""
from .errors import CrowdModeError, DomainError, InvariantError, PoleError, PrecisionError
from .exact_core import Scenario, argmax_scan, distribution, event_count, f_value, weights
from .estimator import g_exact, g_table, delta_cases
from .poly_lab import p_poly, q_and_r, reduced_pair, ratio_at
from .q_analysis import critical_points, conj2_evidence, fit_coefficients, q_function
from .general_case import d8_table, formula_n, general_division, p_delta_poly
from .simulator import SampleConfig, sample_distribution

__version__ = "0.1.0"

__all__ = [
    "CrowdModeError", "DomainError", "InvariantError", "PoleError", "PrecisionError",
    "Scenario", "argmax_scan", "distribution", "event_count", "f_value", "weights",
    "g_exact", "g_table", "delta_cases",
    "p_poly", "q_and_r", "reduced_pair", "ratio_at",
    "critical_points", "conj2_evidence", "fit_coefficients", "q_function",
    "d8_table", "formula_n", "general_division", "p_delta_poly",
    "SampleConfig", "sample_distribution",
]
