"""Modified Bessel function of the second kind, real order, in log space.

The order is reduced to ``mu = nu - round(nu)`` with ``|mu| <= 1/2``.  The
pair ``K_mu, K_{mu+1}`` comes from Temme's series when ``x <= 2`` and from
Steed's continued fraction otherwise, then forward recurrence in the order
(stable for K) climbs to ``nu``.  Magnitudes are carried as a float times a
separately tracked log scale, so ``exp(-x)`` never underflows and large
orders at tiny arguments never overflow.
"""

import math

from ..errors import DomainError, NonConvergenceError
from ..signedlog import SignedLogValue
from .gamma import log_gamma

TEMME_MAX_X = 2.0
_EPS = 1e-16
_MAX_ITER = 100_000
_RESCALE = 1e250

# Taylor coefficients of 1/Gamma(z) = sum_k C[k] z^(k+1) (Abramowitz & Stegun 6.1.34)
_RECIP_GAMMA_TAYLOR = (
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
)


def _temme_gammas(mu):
    """Return (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) for |mu| <= 1/2.

    gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu) and
    gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2, both from the Taylor
    series of 1/Gamma(1+z) so that gam1 stays accurate as mu -> 0.
    """
    # Horner over mu^2 separately for the even and odd powers
    even = 0.0
    for c in reversed(_RECIP_GAMMA_TAYLOR[0::2]):
        even = even * mu * mu + c
    odd = 0.0
    for c in reversed(_RECIP_GAMMA_TAYLOR[1::2]):
        odd = odd * mu * mu + c
    gampl = even + mu * odd
    gammi = even - mu * odd
    return -odd, even, gampl, gammi


def _k_pair_temme(mu, x):
    """K_mu(x) and K_{mu+1}(x) for x <= 2, as plain floats."""
    x2 = 0.5 * x
    pimu = math.pi * mu
    fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = mu * d
    fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
    gam1, gam2, gampl, gammi = _temme_gammas(mu)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    total = ff
    e = math.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    d = x2 * x2
    total1 = p
    mu2 = mu * mu
    for i in range(1, _MAX_ITER):
        ff = (i * ff + p + q) / (i * i - mu2)
        c *= d / i
        p /= i - mu
        q /= i + mu
        delta = c * ff
        total += delta
        total1 += c * (p - i * ff)
        if abs(delta) < abs(total) * _EPS:
            break
    else:
        raise NonConvergenceError(f"Temme series for K_{mu}({x}) did not converge")
    return total, total1 * 2.0 / x


def _k_pair_steed(mu, x):
    """exp(x) K_mu(x) and exp(x) K_{mu+1}(x) for x > 2 (Steed's CF2)."""
    mu2 = mu * mu
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu2
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _MAX_ITER):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    else:
        raise NonConvergenceError(f"continued fraction for K_{mu}({x}) did not converge")
    h = a1 * h
    kmu = math.sqrt(math.pi / (2.0 * x)) / s
    k1 = kmu * (mu + x + 0.5 - h) / x
    return kmu, k1


def bessel_k(nu: float, x: float) -> SignedLogValue:
    """K_nu(x) for real nu and x > 0; always strictly positive."""
    if not x > 0:
        raise DomainError(f"bessel_k requires x > 0, got {x!r}")
    nu = abs(nu)
    steps = int(nu + 0.5)
    mu = nu - steps
    if x <= TEMME_MAX_X:
        kmu, k1 = _k_pair_temme(mu, x)
        log_scale = 0.0
    else:
        kmu, k1 = _k_pair_steed(mu, x)
        log_scale = -x
    two_over_x = 2.0 / x
    for i in range(1, steps + 1):
        kmu, k1 = k1, (mu + i) * two_over_x * k1 + kmu
        if k1 > _RESCALE:
            kmu /= _RESCALE
            k1 /= _RESCALE
            log_scale += math.log(_RESCALE)
    return SignedLogValue(1, math.log(kmu) + log_scale)


def log_bessel_k(nu: float, x: float) -> float:
    """``ln K_nu(x)`` as a float."""
    return bessel_k(nu, x).log_abs


def bessel_k_moment_integral(r: float, nu: float) -> SignedLogValue:
    """Closed form of the integral of t^(r-1) K_nu(t) over (0, inf).

    Equals ``2^(r-2) Gamma((r-nu)/2) Gamma((r+nu)/2)`` for ``r > |nu|``.
    """
    if not r > abs(nu):
        raise DomainError(f"integral requires r > |nu|, got r={r!r}, nu={nu!r}")
    return SignedLogValue(
        1,
        (r - 2.0) * math.log(2.0) + log_gamma((r - nu) / 2.0) + log_gamma((r + nu) / 2.0),
    )
