"""Graphon estimation by feature-assisted neighborhood smoothing."""

from ._core import (
    ConfigError,
    NumericalError,
    ParseError,
    cross_validate,
    d0_hat,
    d0_mod,
    fans_estimate,
    graphon_matrix,
    kendall_tau,
    loo_link_predict,
    mse_mae,
    nbs_estimate,
    paired_t_test,
    roc_auc,
    s_hat,
    sas_estimate,
    screen_features,
    simulate,
    usvt_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "NumericalError",
    "ParseError",
    "cross_validate",
    "d0_hat",
    "d0_mod",
    "fans_estimate",
    "graphon_matrix",
    "kendall_tau",
    "loo_link_predict",
    "mse_mae",
    "nbs_estimate",
    "paired_t_test",
    "roc_auc",
    "s_hat",
    "sas_estimate",
    "screen_features",
    "simulate",
    "usvt_estimate",
]
