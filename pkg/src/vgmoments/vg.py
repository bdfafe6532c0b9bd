"""Variance-gamma distribution: density and closed-form moments.

``VG(nu, alpha, beta, mu)`` has density

    p(x) = M exp(beta (x - mu)) |x - mu|^nu K_nu(alpha |x - mu|)

with ``nu > -1/2`` and ``0 <= |beta| < alpha``.  The moment formulas need
``mu = 0``; each one reduces to a gamma-function prefactor times a single
Gauss hypergeometric function of ``beta^2 / alpha^2`` and is assembled in
log space.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import LocationError, NonConvergenceError, OrderError, ParameterError, ParityError, SingularityError
from .signedlog import ONE, ZERO, SignedLogValue
from .specfun import Hyp2F1Args, bessel_k, hyp2f1, log_gamma

_LOG_2 = math.log(2.0)
_HALF_LOG_PI = 0.5 * math.log(math.pi)
EXPANSION_ORDERS = (0, 2, 4)


class Kind(str, enum.Enum):
    RAW = "raw"
    ABSOLUTE = "absolute"


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    SERIES_EXPANSION = "series_expansion"
    ORACLE_QUADRATURE = "oracle_quadrature"
    ORACLE_DIRECT_SERIES = "oracle_direct_series"
    ORACLE_MONTE_CARLO = "oracle_monte_carlo"


@dataclass(frozen=True)
class VGParams:
    """Parameters of VG(nu, alpha, beta, mu); validated on construction."""

    nu: float
    alpha: float
    beta: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        _check(self)

    @property
    def k_star(self) -> float:
        """Absolute moments of order k exist exactly when k > k_star."""
        return max(-1.0, -2.0 * self.nu - 1.0)

    @property
    def skew_ratio_sq(self) -> float:
        return (self.beta / self.alpha) ** 2

    @property
    def log_normalizer(self) -> float:
        """ln M, the log of the density's normalising constant."""
        nu, alpha, beta = self.nu, self.alpha, self.beta
        return (
            (nu + 0.5) * math.log((alpha - beta) * (alpha + beta))
            - _HALF_LOG_PI
            - nu * math.log(2.0 * alpha)
            - log_gamma(nu + 0.5)
        )


def _check(p) -> None:
    for name in ("nu", "alpha", "beta", "mu"):
        if not math.isfinite(getattr(p, name)):
            raise ParameterError(name, f"{name} must be finite, got {getattr(p, name)!r}")
    if not p.nu > -0.5:
        raise ParameterError("nu", f"nu must satisfy nu > -1/2, got {p.nu!r}")
    if not p.alpha > 0:
        raise ParameterError("alpha", f"alpha must satisfy alpha > 0, got {p.alpha!r}")
    if not abs(p.beta) < p.alpha:
        raise ParameterError(
            "beta", f"beta must satisfy |beta| < alpha, got beta={p.beta!r}, alpha={p.alpha!r}"
        )


def validate(params: VGParams) -> VGParams:
    """Re-check the parameter constraints and return ``params`` unchanged."""
    _check(params)
    return params


@dataclass(frozen=True)
class MomentQuery:
    k: float
    kind: Kind = Kind.ABSOLUTE
    method: Method = Method.CLOSED_FORM

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "method", Method(self.method))

    @property
    def ell(self) -> float:
        return math.ceil(self.k / 2) + 0.5

    @property
    def m(self) -> int:
        return int(self.k) % 2

    def check(self, k_star: float) -> None:
        if self.kind is Kind.ABSOLUTE:
            _check_abs_order(self.k, k_star)
        else:
            _as_moment_integer(self.k)


def _check_abs_order(k, k_star) -> None:
    if not k > k_star:
        raise OrderError(f"absolute moment of order {k!r} requires k > k_* = {k_star!r}")


def _as_moment_integer(k) -> int:
    if isinstance(k, bool) or not float(k).is_integer() or k < 0:
        raise ParityError(f"raw moments need a non-negative integer order, got {k!r}")
    return int(k)


def _require_centered(params: VGParams) -> None:
    validate(params)
    if params.mu != 0:
        raise LocationError(f"moment formulas require mu = 0, got mu={params.mu!r}")


def _log_common(params: VGParams) -> float:
    # (1 - beta^2/alpha^2)^(nu+1/2) / (sqrt(pi) Gamma(nu+1/2))
    nu = params.nu
    return (nu + 0.5) * math.log1p(-params.skew_ratio_sq) - _HALF_LOG_PI - log_gamma(nu + 0.5)


def pdf(params: VGParams, x: float) -> SignedLogValue:
    """Density at ``x`` in log form.

    At ``x = mu`` the density is the finite limit ``M 2^(nu-1) Gamma(nu) / alpha^nu``
    when ``nu > 0`` and infinite otherwise, which raises SingularityError.
    """
    validate(params)
    nu, alpha = params.nu, params.alpha
    d = x - params.mu
    if d == 0:
        if nu <= 0:
            raise SingularityError(f"density is infinite at x = mu when nu <= 0 (nu={nu!r})")
        return SignedLogValue(
            1,
            params.log_normalizer + (nu - 1) * _LOG_2 + log_gamma(nu) - nu * math.log(alpha),
        )
    ad = abs(d)
    return SignedLogValue(
        1,
        params.log_normalizer
        + params.beta * d
        + nu * math.log(ad)
        + bessel_k(nu, alpha * ad).log_abs,
    )


def pdf_value(params: VGParams, x: float) -> float:
    return float(pdf(params, x))


def _times_hyp2f1(prefactor: SignedLogValue, args: Hyp2F1Args) -> SignedLogValue:
    """prefactor * 2F1(args); a non-converged partial sum is rescaled the same way."""
    try:
        return prefactor * hyp2f1(args)
    except NonConvergenceError as exc:
        if exc.partial is not None:
            exc.partial = prefactor * exc.partial
        raise


def abs_moment(params: VGParams, k: float) -> SignedLogValue:
    """E|X|^k for real k > k_*."""
    _require_centered(params)
    _check_abs_order(k, params.k_star)
    nu, alpha = params.nu, params.alpha
    a = (k + 1) / 2
    log_pref = k * (_LOG_2 - math.log(alpha)) + _log_common(params) + log_gamma(nu + a) + log_gamma(a)
    return _times_hyp2f1(SignedLogValue(1, log_pref), Hyp2F1Args(a, nu + a, 0.5, params.skew_ratio_sq))


def raw_moment_odd(params: VGParams, k: int) -> SignedLogValue:
    """E[X^k] for odd positive integer k; carries the sign of beta."""
    _require_centered(params)
    kk = _as_moment_integer(k)
    if kk % 2 != 1:
        raise ParityError(f"raw_moment_odd needs an odd order, got {k!r}")
    if params.beta == 0:
        return ZERO
    nu, alpha, beta = params.nu, params.alpha, params.beta
    a = kk / 2 + 1
    log_pref = (
        (kk + 1) * _LOG_2
        + math.log(abs(beta))
        - (kk + 1) * math.log(alpha)
        + _log_common(params)
        + log_gamma(nu + a)
        + log_gamma(a)
    )
    return _times_hyp2f1(
        SignedLogValue(1 if beta > 0 else -1, log_pref), Hyp2F1Args(a, nu + a, 1.5, params.skew_ratio_sq)
    )


def raw_moment(params: VGParams, k: int) -> SignedLogValue:
    """E[X^k] for integer k >= 0 via the unified even/odd formula."""
    _require_centered(params)
    kk = _as_moment_integer(k)
    if kk == 0:
        return ONE
    nu, alpha, beta = params.nu, params.alpha, params.beta
    ell = math.ceil(kk / 2) + 0.5
    m = kk % 2
    if m == 1 and beta == 0:
        return ZERO
    log_pref = (
        kk * (_LOG_2 - math.log(alpha))
        + (m * math.log(2.0 * abs(beta) / alpha) if m else 0.0)
        + _log_common(params)
        + log_gamma(nu + ell)
        + log_gamma(ell)
    )
    sign = -1 if (m == 1 and beta < 0) else 1
    return _times_hyp2f1(SignedLogValue(sign, log_pref), Hyp2F1Args(ell, nu + ell, 0.5 + m, params.skew_ratio_sq))


def symmetric_abs_moment(nu: float, alpha: float, k: float) -> SignedLogValue:
    """E|Y|^k for Y ~ VG(nu, alpha, 0, 0): the beta = 0 special case."""
    params = VGParams(nu, alpha)
    _check_abs_order(k, params.k_star)
    return SignedLogValue(
        1,
        k * (_LOG_2 - math.log(alpha))
        - _HALF_LOG_PI
        + log_gamma(nu + (k + 1) / 2)
        + log_gamma((k + 1) / 2)
        - log_gamma(nu + 0.5),
    )


def _check_expansion_order(order) -> int:
    if order not in EXPANSION_ORDERS:
        raise ValueError(f"expansion order must be one of {EXPANSION_ORDERS}, got {order!r}")
    return int(order)


def abs_moment_coefficients(nu: float, k: float) -> tuple[float, float, float]:
    """Coefficients of 1, (beta/alpha)^2, (beta/alpha)^4 in the small-skew bracket."""
    c2 = k * (k + 2 * nu + 2) / 2
    c4 = k * (k**3 + 4 * k**2 * (nu + 2) + 4 * k * (nu**2 + 3 * nu + 4) - 8 * nu**2 + 8 * nu + 12) / 24
    return 1.0, c2, c4


def raw_moment_coefficients(nu: float, k: int) -> tuple[float, float, float]:
    ell = math.ceil(k / 2) + 0.5
    m = k % 2
    c2 = 2 * ell * (ell + nu) / (2 * m + 1) - nu - 0.5
    c4 = (
        2 * ell * (ell + 1) * (ell + nu) * (ell + nu + 1) / (4 * m * m + 8 * m + 3)
        - ell * (2 * nu + 1) * (ell + nu) / (2 * m + 1)
        + (4 * nu * nu - 1) / 8
    )
    return 1.0, c2, c4


def _bracket(coeffs, x, order) -> float:
    return math.fsum(c * x**i for i, c in enumerate(coeffs[: order // 2 + 1]))


def abs_moment_expansion(params: VGParams, k: float, order: int) -> SignedLogValue:
    """Small-skew expansion of E|X|^k truncated after (beta/alpha)^order."""
    order = _check_expansion_order(order)
    _require_centered(params)
    _check_abs_order(k, params.k_star)
    nu, alpha = params.nu, params.alpha
    bracket = _bracket(abs_moment_coefficients(nu, k), params.skew_ratio_sq, order)
    log_pref = (
        k * (_LOG_2 - math.log(alpha))
        - _HALF_LOG_PI
        - log_gamma(nu + 0.5)
        + log_gamma(nu + (k + 1) / 2)
        + log_gamma((k + 1) / 2)
    )
    return SignedLogValue(1, log_pref) * SignedLogValue.from_float(bracket)


def raw_moment_expansion(params: VGParams, k: int, order: int) -> SignedLogValue:
    """Small-skew expansion of E[X^k] truncated after (beta/alpha)^order."""
    order = _check_expansion_order(order)
    _require_centered(params)
    kk = _as_moment_integer(k)
    if kk == 0:
        return ONE
    nu, alpha, beta = params.nu, params.alpha, params.beta
    ell = math.ceil(kk / 2) + 0.5
    m = kk % 2
    if m == 1 and beta == 0:
        return ZERO
    bracket = _bracket(raw_moment_coefficients(nu, kk), params.skew_ratio_sq, order)
    log_pref = (
        kk * (_LOG_2 - math.log(alpha))
        + (math.log(2.0 * abs(beta) / alpha) if m else 0.0)
        - _HALF_LOG_PI
        - log_gamma(nu + 0.5)
        + log_gamma(nu + ell)
        + log_gamma(ell)
    )
    sign = -1 if (m == 1 and beta < 0) else 1
    return SignedLogValue(sign, log_pref) * SignedLogValue.from_float(bracket)
