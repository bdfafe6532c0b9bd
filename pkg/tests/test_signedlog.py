import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vgmoments.signedlog import ONE, ZERO, SignedLogValue, log_sum, relative_deviation

finite = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e300, max_value=1e300)


@given(finite)
def test_float_round_trip(x):
    v = SignedLogValue.from_float(x)
    # exp(log x) carries ~|ln x| ulps of rounding
    assert float(v) == pytest.approx(x, rel=4e-16 * (1 + abs(v.log_abs)), abs=0.0)
    again = SignedLogValue.from_float(float(v))
    assert again.sign == v.sign
    if v.sign:
        assert again.log_abs == pytest.approx(v.log_abs, rel=1e-15, abs=1e-15)


def test_zero_ignores_log():
    assert SignedLogValue(0, 3.0) == ZERO
    assert ZERO.log_abs == -math.inf
    assert float(ZERO) == 0.0


def test_invalid_sign():
    with pytest.raises(ValueError):
        SignedLogValue(2, 0.0)


@given(finite, finite)
def test_addition_matches_floats(a, b):
    s = SignedLogValue.from_float(a) + SignedLogValue.from_float(b)
    assert float(s) == pytest.approx(a + b, rel=1e-12, abs=1e-300 + 1e-12 * (abs(a) + abs(b)))


def test_exact_cancellation():
    v = SignedLogValue(1, 5.0)
    assert (v - v) == ZERO


def test_products_beyond_double_range():
    big = SignedLogValue(1, 800.0)
    assert float(big) == math.inf
    assert (big * big / big) == big
    assert (-big * big).sign == -1


def test_log_sum_mixed_signs():
    vals = [SignedLogValue.from_float(x) for x in (3.0, -1.0, 0.5, 0.0)]
    assert float(log_sum(vals)) == pytest.approx(2.5)
    assert log_sum([]) == ZERO


def test_relative_deviation():
    assert relative_deviation(ZERO, ZERO) == 0.0
    assert relative_deviation(ZERO, ONE) == math.inf
    assert relative_deviation(ONE, -ONE) == math.inf
    assert relative_deviation(ONE, SignedLogValue.from_float(1.5)) == pytest.approx(0.5)


@pytest.mark.parametrize("log_abs", [-1000.0, -3.2, 0.0, 1e-12, 2.5, 700.0, 12345.678])
@pytest.mark.parametrize("sign", [1, -1])
def test_decimal_round_trip(sign, log_abs):
    v = SignedLogValue(sign, log_abs)
    text = v.to_decimal()
    back = SignedLogValue.parse_decimal(text)
    assert back.sign == sign
    # 17 significant digits pin the value to ~5e-17 relative
    assert abs(math.expm1(back.log_abs - log_abs)) < 1e-15


def test_decimal_of_one():
    assert float(ONE.to_decimal()) == 1.0
    assert ZERO.to_decimal() == "0"
