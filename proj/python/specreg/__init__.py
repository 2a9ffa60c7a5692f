"""Bayesian regression with spectrally modelled, time-varying errors."""

from ._specreg import (
    InvalidInput,
    NumericError,
    ar2_scaling_factor,
    evaluate_synthetic,
    fit,
    forecast_baseline,
    periodogram,
    simulate,
    true_log_spectrum,
)

__all__ = [
    "InvalidInput",
    "NumericError",
    "ar2_scaling_factor",
    "evaluate_synthetic",
    "fit",
    "forecast_baseline",
    "periodogram",
    "simulate",
    "true_log_spectrum",
]
