"""Resilience (proportional reversed hazard) family of ROC curves."""
from .empirical import (StepFunction, TwoSampleData, dominance_check, ecdf, empirical_roc,
                        loglog_diagnostics, loglog_series, pooled_ecdf, rojo_pair)
from .estimators import (InferenceReport, ThetaEstimate, clamp_to_family, combined_counts,
                         estimate, mw_auc, mw_estimate, pl_estimate, pl_information, pl_score,
                         rojo_auc, rojo_estimate)
from .model import (RocPoint, auc_from_theta, optimal_cutpoint, roc_value, sigma2_tau,
                    sigma2_theta, summary_indices, theta_from_auc, youden_from_theta)

__version__ = "0.1.0"
