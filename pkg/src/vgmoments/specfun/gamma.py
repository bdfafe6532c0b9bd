"""Log-gamma and the ascending factorial."""

import math

from ..errors import DomainError
from ..signedlog import ONE, ZERO, SignedLogValue

# Lanczos approximation, g = 607/128 with 15 terms (Godfrey's coefficient set).
# Relative error of Gamma(x) is below 1e-15 for x >= 1/2.
LANCZOS_G = 607.0 / 128.0
LANCZOS_COEFFICIENTS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.91893853320467274178


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``.

    Arguments below 1/2 are shifted up by one with ``lnG(x) = lnG(x+1) - ln x``;
    negative arguments are rejected rather than reflected.
    """
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if math.isinf(x):
        return math.inf
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    if x == 1.0 or x == 2.0:
        return 0.0
    z = x - 1.0
    series = LANCZOS_COEFFICIENTS[0]
    for i in range(1, len(LANCZOS_COEFFICIENTS)):
        series += LANCZOS_COEFFICIENTS[i] / (z + i)
    t = z + LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(series)


def pochhammer_log(u: float, j: int) -> SignedLogValue:
    """Ascending factorial ``u (u+1) ... (u+j-1)`` in sign/log form."""
    if j < 0 or int(j) != j:
        raise DomainError(f"pochhammer_log requires a non-negative integer j, got {j!r}")
    if j == 0:
        return ONE
    sign = 1
    logs = []
    for i in range(int(j)):
        f = u + i
        if f == 0:
            return ZERO
        if f < 0:
            sign = -sign
        logs.append(math.log(abs(f)))
    return SignedLogValue(sign, math.fsum(logs))
