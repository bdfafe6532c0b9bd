"""Moments of the mean of n products of correlated zero-mean normals.

If ``(U, V)`` is bivariate normal with standard deviations ``sigma_u``,
``sigma_v`` and correlation ``rho``, and ``Zbar_n`` averages ``n`` independent
copies of ``Z = U V``, then with ``s = sigma_u sigma_v``

    Zbar_n ~ VG((n-1)/2, n / (s (1 - rho^2)), n rho / (s (1 - rho^2)), 0).

Moments are available both from the dedicated closed forms below and by
pushing the parameters through :func:`vg_params_of_product_mean`; the two
paths are kept side by side so that each checks the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import vg
from .errors import OrderError, ParameterError
from .signedlog import ONE, ZERO, SignedLogValue
from .specfun import Hyp2F1Args, log_gamma

_HALF_LOG_PI = 0.5 * math.log(math.pi)


@dataclass(frozen=True)
class ProductNormalParams:
    sigma_u: float = 1.0
    sigma_v: float = 1.0
    rho: float = 0.0
    n: int = 1

    def __post_init__(self):
        for name in ("sigma_u", "sigma_v", "rho"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(name, f"{name} must be finite")
        if not self.sigma_u > 0:
            raise ParameterError("sigma_u", f"sigma_u must be positive, got {self.sigma_u!r}")
        if not self.sigma_v > 0:
            raise ParameterError("sigma_v", f"sigma_v must be positive, got {self.sigma_v!r}")
        if not abs(self.rho) < 1:
            raise ParameterError("rho", f"rho must satisfy |rho| < 1, got {self.rho!r}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ParameterError("n", f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def s(self) -> float:
        return self.sigma_u * self.sigma_v


def vg_params_of_product_mean(p: ProductNormalParams) -> vg.VGParams:
    scale = p.s * (1 - p.rho * p.rho)
    return vg.VGParams(nu=(p.n - 1) / 2, alpha=p.n / scale, beta=p.n * p.rho / scale, mu=0.0)


def _log_common(p: ProductNormalParams, k: float) -> float:
    # (2s/n)^k (1 - rho^2)^(n/2 + k) / (sqrt(pi) Gamma(n/2))
    n = p.n
    return (
        k * math.log(2 * p.s / n)
        + (n / 2 + k) * math.log1p(-p.rho * p.rho)
        - _HALF_LOG_PI
        - log_gamma(n / 2)
    )


def product_abs_moment(p: ProductNormalParams, k: float) -> SignedLogValue:
    """E|Zbar_n|^k for k > -1."""
    if not k > -1:
        raise OrderError(f"absolute moment of order {k!r} requires k > -1")
    n = p.n
    log_pref = _log_common(p, k) + log_gamma((n + k) / 2) + log_gamma((k + 1) / 2)
    return vg._times_hyp2f1(
        SignedLogValue(1, log_pref), Hyp2F1Args((k + 1) / 2, (n + k) / 2, 0.5, p.rho * p.rho)
    )


def product_raw_moment(p: ProductNormalParams, k: int) -> SignedLogValue:
    """E[Zbar_n^k] for integer k >= 0; its sign is sign(rho)^(k mod 2)."""
    kk = vg._as_moment_integer(k)
    if kk == 0:
        return ONE
    m = kk % 2
    if m == 1 and p.rho == 0:
        return ZERO
    ell = math.ceil(kk / 2) + 0.5
    shape = (p.n - 1) / 2
    log_pref = (
        _log_common(p, kk)
        + (math.log(2 * abs(p.rho)) if m else 0.0)
        + log_gamma(shape + ell)
        + log_gamma(ell)
    )
    sign = -1 if (m == 1 and p.rho < 0) else 1
    return vg._times_hyp2f1(SignedLogValue(sign, log_pref), Hyp2F1Args(ell, shape + ell, 0.5 + m, p.rho * p.rho))


def product_abs_moment_via_vg(p: ProductNormalParams, k: float) -> SignedLogValue:
    return vg.abs_moment(vg_params_of_product_mean(p), k)


def product_raw_moment_via_vg(p: ProductNormalParams, k: int) -> SignedLogValue:
    return vg.raw_moment(vg_params_of_product_mean(p), k)
