"""Moments and absolute moments of the variance-gamma distribution."""

from .errors import (
    DomainError,
    LocationError,
    NonConvergenceError,
    OrderError,
    ParameterError,
    ParityError,
    SingularityError,
    ToleranceNotMetError,
)
from .normprod import (
    ProductNormalParams,
    product_abs_moment,
    product_raw_moment,
    vg_params_of_product_mean,
)
from .signedlog import SignedLogValue
from .vg import (
    Kind,
    Method,
    MomentQuery,
    VGParams,
    abs_moment,
    abs_moment_expansion,
    pdf,
    raw_moment,
    raw_moment_expansion,
    raw_moment_odd,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "Kind",
    "LocationError",
    "Method",
    "MomentQuery",
    "NonConvergenceError",
    "OrderError",
    "ParameterError",
    "ParityError",
    "ProductNormalParams",
    "SignedLogValue",
    "SingularityError",
    "ToleranceNotMetError",
    "VGParams",
    "abs_moment",
    "abs_moment_expansion",
    "pdf",
    "product_abs_moment",
    "product_raw_moment",
    "raw_moment",
    "raw_moment_expansion",
    "raw_moment_odd",
    "validate",
    "vg_params_of_product_mean",
]
