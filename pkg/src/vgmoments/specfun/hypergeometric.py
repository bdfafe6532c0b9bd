"""Gauss hypergeometric function 2F1(a, b; c; x) on 0 <= x < 1."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError, NonConvergenceError
from ..signedlog import SignedLogValue

SERIES_REL_EPS = 1e-16
SERIES_QUIET_TERMS = 3
SERIES_TERM_BUDGET = 100_000
DIRECT_SERIES_MAX_X = 0.5
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class Hyp2F1Args:
    a: float
    b: float
    c: float
    x: float

    def __post_init__(self):
        if self.c <= 0 and self.c == math.floor(self.c):
            raise DomainError(f"c must not be a non-positive integer, got {self.c!r}")
        if not 0.0 <= self.x < 1.0:
            raise DomainError(f"x must lie in [0, 1), got {self.x!r}")


@dataclass(frozen=True)
class _SeriesSum:
    value: float
    abs_sum: float
    terms: int

    @property
    def rel_error(self) -> float:
        # rounding in the term recurrence grows roughly linearly with the index
        if self.value == 0.0:
            return math.inf
        return _EPS * (self.terms + 1) * self.abs_sum / abs(self.value)


def _sum_series(a: float, b: float, c: float, x: float) -> _SeriesSum:
    """Power series of 2F1 summed term by term.

    Stops once the last SERIES_QUIET_TERMS terms are all below
    SERIES_REL_EPS times the partial sum and the term ratio is already
    below one, so a transient small term cannot end the sum early.
    """
    term = 1.0
    terms = [1.0]
    partial = 1.0
    quiet = 0
    for j in range(SERIES_TERM_BUDGET):
        term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * x
        if term == 0.0:
            break
        terms.append(term)
        partial += term
        if abs(term) < SERIES_REL_EPS * abs(partial):
            ratio = abs((a + j + 1) * (b + j + 1) * x / ((c + j + 1) * (j + 2)))
            quiet = quiet + 1 if ratio < 1.0 else 0
            if quiet >= SERIES_QUIET_TERMS:
                break
        else:
            quiet = 0
    else:
        raise NonConvergenceError(
            f"2F1({a}, {b}; {c}; {x}) series did not converge in {SERIES_TERM_BUDGET} terms",
            partial=SignedLogValue.from_float(math.fsum(terms)),
            terms=SERIES_TERM_BUDGET,
        )
    abs_sum = math.fsum(abs(t) for t in terms)
    return _SeriesSum(math.fsum(terms), abs_sum, len(terms))


def hyp2f1(args: Hyp2F1Args) -> SignedLogValue:
    """Evaluate 2F1 in sign/log form.

    For x <= 1/2 the defining series is summed directly.  Above that, the
    Euler transform ``(1-x)^(c-a-b) 2F1(c-a, c-b; c; x)`` is tried as well and
    whichever series has the smaller rounding estimate wins.
    """
    a, b, c, x = args.a, args.b, args.c, args.x
    if x == 0.0 or a == 0.0 or b == 0.0:
        return SignedLogValue(1, 0.0)

    direct = None
    try:
        direct = _sum_series(a, b, c, x)
    except NonConvergenceError as exc:
        if x <= DIRECT_SERIES_MAX_X:
            raise
        direct_failure = exc
    if x <= DIRECT_SERIES_MAX_X:
        return _encode(direct.value, 0.0)

    euler = None
    try:
        euler = _sum_series(c - a, c - b, c, x)
    except NonConvergenceError:
        if direct is None:
            # report the partial sum of the defining series, not of the transform
            raise direct_failure from None
    log_prefactor = (c - a - b) * math.log1p(-x)
    if direct is None or (euler is not None and euler.rel_error < direct.rel_error):
        return _encode(euler.value, log_prefactor)
    return _encode(direct.value, 0.0)


def hyp2f1_value(a: float, b: float, c: float, x: float) -> float:
    """Plain-float convenience wrapper around :func:`hyp2f1`."""
    return float(hyp2f1(Hyp2F1Args(a, b, c, x)))


def _encode(value: float, log_prefactor: float) -> SignedLogValue:
    if value == 0.0:
        return SignedLogValue(0, -math.inf)
    return SignedLogValue(1 if value > 0 else -1, math.log(abs(value)) + log_prefactor)
