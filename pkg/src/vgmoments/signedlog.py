"""Sign / log-magnitude number representation.

Gamma-function products in the moment formulas leave the double range long
before the moments themselves become uninteresting, so every numerical
routine in this package returns a :class:`SignedLogValue` instead of a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import mpmath


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as ``sign * exp(log_abs)``.

    ``sign == 0`` is exact zero and ``log_abs`` is then ignored (it is
    normalised to ``-inf`` on construction so equality behaves).
    """

    sign: int
    log_abs: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0:
            object.__setattr__(self, "log_abs", -math.inf)
        elif math.isnan(self.log_abs):
            raise ValueError("log_abs is NaN")

    @classmethod
    def from_float(cls, x: float) -> SignedLogValue:
        if x == 0:
            return cls(0, -math.inf)
        if math.isnan(x):
            raise ValueError("cannot encode NaN")
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, log_abs: float, sign: int = 1) -> SignedLogValue:
        if log_abs == -math.inf:
            return cls(0, -math.inf)
        return cls(sign, log_abs)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return self.sign * math.inf

    def __neg__(self) -> SignedLogValue:
        return SignedLogValue(-self.sign, self.log_abs)

    def __abs__(self) -> SignedLogValue:
        return SignedLogValue(abs(self.sign), self.log_abs)

    def __mul__(self, other) -> SignedLogValue:
        other = _coerce(other)
        if self.sign == 0 or other.sign == 0:
            return ZERO
        return SignedLogValue(self.sign * other.sign, self.log_abs + other.log_abs)

    __rmul__ = __mul__

    def __truediv__(self, other) -> SignedLogValue:
        other = _coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero SignedLogValue")
        if self.sign == 0:
            return ZERO
        return SignedLogValue(self.sign * other.sign, self.log_abs - other.log_abs)

    def __add__(self, other) -> SignedLogValue:
        other = _coerce(other)
        if other.sign == 0:
            return self
        if self.sign == 0:
            return other
        big, small = (self, other) if self.log_abs >= other.log_abs else (other, self)
        gap = small.log_abs - big.log_abs
        if big.sign == small.sign:
            return SignedLogValue(big.sign, big.log_abs + math.log1p(math.exp(gap)))
        if gap == 0.0:
            return ZERO
        return SignedLogValue(big.sign, big.log_abs + math.log1p(-math.exp(gap)))

    __radd__ = __add__

    def __sub__(self, other) -> SignedLogValue:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> SignedLogValue:
        return _coerce(other) - self

    def pow(self, p: float) -> SignedLogValue:
        """Real power of a non-negative value."""
        if self.sign < 0:
            raise ValueError("real power of a negative value")
        if self.sign == 0:
            return ZERO if p > 0 else ONE
        return SignedLogValue(1, p * self.log_abs)

    def to_decimal(self, digits: int = 17) -> str:
        """Decimal rendering valid far outside the double range."""
        if self.sign == 0:
            return "0"
        with mpmath.workdps(digits + 15):
            v = mpmath.exp(mpmath.mpf(self.log_abs))
            s = mpmath.nstr(v, digits, min_fixed=-4, max_fixed=digits)
        return s if self.sign > 0 else "-" + s

    @classmethod
    def parse_decimal(cls, text: str) -> SignedLogValue:
        """Inverse of :meth:`to_decimal`."""
        with mpmath.workdps(40):
            v = mpmath.mpf(text.strip())
            if v == 0:
                return ZERO
            return cls(1 if v > 0 else -1, float(mpmath.log(abs(v))))


ZERO = SignedLogValue(0, -math.inf)
ONE = SignedLogValue(1, 0.0)


def _coerce(x) -> SignedLogValue:
    if isinstance(x, SignedLogValue):
        return x
    return SignedLogValue.from_float(float(x))


def log_sum(values: Iterable[SignedLogValue]) -> SignedLogValue:
    """Signed log-sum-exp over an iterable of values."""
    values = [v for v in values if v.sign != 0]
    if not values:
        return ZERO
    peak = max(v.log_abs for v in values)
    total = math.fsum(v.sign * math.exp(v.log_abs - peak) for v in values)
    if total == 0.0:
        return ZERO
    return SignedLogValue(1 if total > 0 else -1, peak + math.log(abs(total)))


def relative_deviation(a: SignedLogValue, b: SignedLogValue) -> float:
    """``|a - b| / min(|a|, |b|)``, evaluated without leaving log space.

    Two exact zeros deviate by 0; a zero against a non-zero, or values of
    opposite sign, deviate by ``inf``.
    """
    if a.sign == 0 and b.sign == 0:
        return 0.0
    if a.sign != b.sign:
        return math.inf
    return math.expm1(abs(a.log_abs - b.log_abs))
