"""Real-valued special functions returning sign/log values."""

from .bessel import bessel_k, bessel_k_moment_integral, log_bessel_k
from .gamma import log_gamma, pochhammer_log
from .hypergeometric import Hyp2F1Args, hyp2f1, hyp2f1_value

__all__ = [
    "Hyp2F1Args",
    "bessel_k",
    "bessel_k_moment_integral",
    "hyp2f1",
    "hyp2f1_value",
    "log_bessel_k",
    "log_gamma",
    "pochhammer_log",
]
