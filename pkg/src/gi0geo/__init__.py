"""Distances between G0_I speckle laws and texture edge detection for SAR intensity data."""

from .distances import (
    CRITICAL_5PCT,
    DistanceValue,
    TestStatistic,
    gd_curve,
    gd_same_scale,
    gd_same_texture,
    td,
    test_statistic,
)
from .edge import EdgeTrace, StripSpec, detect_edge, detect_edges_in_rows, simulate_strip
from .errors import DomainError, Gi0Error
from .experiments import ExperimentConfig, figure_curves, mc_edge_curves, mc_empirical_pvalues
from .estimation import ALPHA_MAX, ALPHA_MIN, FitResult, estimate_enl, fit_alpha_fixed_gamma, fit_ml, log_likelihood
from .model import ModelParams, cdf, fisher_matrix, log_pdf, moment, pdf, sample, scale_transform, texture_class
from .special import digamma, trigamma, trigamma_difference

__version__ = "0.1.0"
