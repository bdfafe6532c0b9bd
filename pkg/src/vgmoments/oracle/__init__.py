"""Independent numerical ground truth for the closed-form moments."""

from .montecarlo import (
    DEFAULT_SEED,
    MonteCarloSettings,
    moment_by_monte_carlo,
    monte_carlo_moments,
    sample_product_mean,
    sample_vg,
)
from .quadrature import QuadratureResult, QuadratureSettings, bessel_moment_by_quadrature, moment_by_quadrature
from .series import moment_by_direct_series
from .verify import MethodValue, VerificationCase, VerificationReport, evaluate, verify, verify_case

__all__ = [
    "DEFAULT_SEED",
    "MethodValue",
    "MonteCarloSettings",
    "QuadratureResult",
    "QuadratureSettings",
    "VerificationCase",
    "VerificationReport",
    "bessel_moment_by_quadrature",
    "evaluate",
    "moment_by_direct_series",
    "moment_by_monte_carlo",
    "moment_by_quadrature",
    "monte_carlo_moments",
    "sample_product_mean",
    "sample_vg",
    "verify",
    "verify_case",
]
