"""gatdist: the generalised asymmetric t (GAT) distribution toolkit.

A six-parameter heavy-tailed law extending the t-distribution with scale
asymmetry, tail-power asymmetry and a tail-onset parameter, plus the
split-t distribution as a comparison baseline, maximum-likelihood fitting
with a nested model ladder, financial risk measures, and bootstrap
goodness of fit.
"""

from .gat import (GatParams, MomentReport, RiskReport, ShapeConstants, cdf,
                  central_moment, expected_shortfall, from_t, log_pdf, mad,
                  mean, mode, pdf, pit, quantile, risk_report, sample,
                  shape_constants, su_proxy, var_at)
from .split_t import AstParams, ast_cdf, ast_log_pdf, ast_pdf, ast_sample
from .specfun import inc_beta, log_beta, log_gamma, reg_inc_beta
from .streams import RandomStream, sample_beta, sample_gamma
from .fit import (FitOptions, FitResult, ModelSpec, RegressionSpec,
                  fit_ladder, fit_mle, fit_regression, select_aic, std_errors)
from .gof import (BootstrapInvalidError, DegenerateDataError, GofReport,
                  anderson_darling, bootstrap_p)
from . import datasets

__version__ = "0.1.0"

__all__ = [
    "GatParams", "ShapeConstants", "MomentReport", "RiskReport",
    "shape_constants", "log_pdf", "pdf", "pit", "cdf", "quantile", "mode",
    "central_moment", "mean", "mad", "sample", "var_at",
    "expected_shortfall", "risk_report", "from_t", "su_proxy",
    "AstParams", "ast_log_pdf", "ast_pdf", "ast_cdf", "ast_sample",
    "log_gamma", "log_beta", "reg_inc_beta", "inc_beta",
    "RandomStream", "sample_gamma", "sample_beta",
    "ModelSpec", "FitOptions", "FitResult", "RegressionSpec", "fit_mle",
    "fit_ladder", "fit_regression", "std_errors", "select_aic",
    "GofReport", "anderson_darling", "bootstrap_p",
    "DegenerateDataError", "BootstrapInvalidError",
    "datasets",
]
