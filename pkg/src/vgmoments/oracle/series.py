"""Moments as the term-by-term series in beta^2.

Expanding ``exp(beta t)`` under the moment integral and integrating each
power against ``K_nu`` gives a series whose terms are gamma-function
products.  It shares no code with the hypergeometric evaluation used by the
closed forms, which is the point.
"""

from __future__ import annotations

import math

from ..errors import NonConvergenceError, ParameterError
from ..signedlog import ONE, ZERO, SignedLogValue
from ..specfun import bessel_k_moment_integral
from ..vg import Kind, VGParams, _as_moment_integer, _check_abs_order, _require_centered

MAX_SKEW_RATIO = 0.95
REL_EPS = 1e-16
QUIET_TERMS = 3
TERM_BUDGET = 100_000


def moment_by_direct_series(params: VGParams, k: float, kind: Kind | str = Kind.ABSOLUTE) -> SignedLogValue:
    kind = Kind(kind)
    _require_centered(params)
    nu, alpha, beta = params.nu, params.alpha, params.beta
    if abs(beta / alpha) > MAX_SKEW_RATIO:
        raise ParameterError(
            "beta", f"direct series needs |beta/alpha| <= {MAX_SKEW_RATIO}, got {beta / alpha!r}"
        )
    if kind is Kind.ABSOLUTE:
        _check_abs_order(k, params.k_star)
        odd = False
    else:
        k = _as_moment_integer(k)
        if k == 0:
            return ONE
        odd = k % 2 == 1
    if odd and beta == 0:
        return ZERO

    # j-th term: 2M beta^(2j+o) / (2j+o)! * int_0^inf t^(nu+k+2j+o) K_nu(alpha t) dt, o = odd
    o = 1 if odd else 0
    r0 = nu + k + 1 + o
    log_first = (
        math.log(2.0)
        + params.log_normalizer
        + (o * math.log(abs(beta)) if o else 0.0)
        - r0 * math.log(alpha)
        + bessel_k_moment_integral(r0, nu).log_abs
    )
    if beta == 0:
        return SignedLogValue(1, log_first)

    log_x = 2.0 * math.log(abs(beta) / alpha) + 2.0 * math.log(2.0)
    g1 = (k + 1 + o) / 2
    g2 = nu + g1
    log_term = log_first
    total = SignedLogValue(1, log_first)
    quiet = 0
    for j in range(TERM_BUDGET):
        log_term += (
            log_x
            + math.log((g1 + j) * (g2 + j))
            - math.log((2 * j + 1 + o) * (2 * j + 2 + o))
        )
        total = total + SignedLogValue(1, log_term)
        if log_term - total.log_abs < math.log(REL_EPS):
            quiet += 1
            if quiet >= QUIET_TERMS:
                break
        else:
            quiet = 0
    else:
        raise NonConvergenceError(
            f"direct moment series did not converge within {TERM_BUDGET} terms",
            partial=total,
            terms=TERM_BUDGET,
        )
    sign = -1 if (odd and beta < 0) else 1
    return SignedLogValue(sign, total.log_abs)
