import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from vgmoments import vg
from vgmoments.errors import LocationError, OrderError, ParameterError, ParityError, SingularityError
from vgmoments.oracle.quadrature import moment_by_quadrature
from vgmoments.oracle.series import moment_by_direct_series
from vgmoments.oracle.suites import ALPHA_GRID, NU_GRID, SKEW_GRID, grid_params
from vgmoments.vg import Kind, MomentQuery, VGParams


def rel(a, b):
    return abs(math.expm1(a.log_abs - b.log_abs)) if a.sign == b.sign else math.inf


# ------------------------------------------------------------------ params

def test_validate_interior_point():
    p = VGParams(0.5, 1.0, 0.0, 0.0)
    assert vg.validate(p) is p


@pytest.mark.parametrize(
    "kwargs, constraint",
    [
        (dict(nu=-0.5, alpha=1.0, beta=0.0), "nu"),
        (dict(nu=1.0, alpha=1.0, beta=1.0), "beta"),
        (dict(nu=1.0, alpha=1.0, beta=-1.2), "beta"),
        (dict(nu=1.0, alpha=0.0, beta=0.0), "alpha"),
        (dict(nu=1.0, alpha=-2.0, beta=0.0), "alpha"),
        (dict(nu=math.nan, alpha=1.0, beta=0.0), "nu"),
    ],
)
def test_validate_names_violated_constraint(kwargs, constraint):
    with pytest.raises(ParameterError) as info:
        VGParams(**kwargs)
    assert info.value.constraint == constraint
    assert constraint in str(info.value)


def test_derived_quantities():
    assert VGParams(0.5, 1.0).k_star == -1.0
    assert VGParams(-0.3, 1.0).k_star == pytest.approx(-0.4)
    p = VGParams(2.0, 3.0, 1.5)
    m = (3.0**2 - 1.5**2) ** 2.5 / (math.sqrt(math.pi) * 6.0**2 * math.gamma(2.5))
    assert math.exp(p.log_normalizer) == pytest.approx(m, rel=1e-14)


def test_moment_query_fields():
    q = MomentQuery(5, "raw", "oracle_quadrature")
    assert q.kind is Kind.RAW and q.ell == 3.5 and q.m == 1
    with pytest.raises(ParityError):
        MomentQuery(2.5, Kind.RAW).check(-1.0)
    with pytest.raises(OrderError):
        MomentQuery(-0.5, Kind.ABSOLUTE).check(-0.4)
    MomentQuery(0, Kind.RAW).check(-1.0)


# --------------------------------------------------------------------- pdf

@pytest.mark.parametrize("x", [0.5, 2.0])
def test_pdf_symmetric_when_unskewed(x):
    p = VGParams(0.5, 1.0)
    assert vg.pdf(p, x) == vg.pdf(p, -x)


def test_pdf_half_order_is_laplace():
    assert vg.pdf_value(VGParams(0.5, 1.0), 1.0) == pytest.approx(0.5 * math.exp(-1), rel=1e-14)


def test_pdf_integrates_to_one():
    p = VGParams(2.0, 3.0, 1.5, -1.0)
    f = lambda x: vg.pdf_value(p, x)
    left, _ = integrate.quad(f, -math.inf, -1.0, epsabs=0, epsrel=1e-12, limit=200)
    right, _ = integrate.quad(f, -1.0, math.inf, epsabs=0, epsrel=1e-12, limit=200)
    assert left + right == pytest.approx(1.0, abs=1e-9)


def test_pdf_at_location():
    p = VGParams(1.5, 2.0, 0.5, 0.3)
    limit = math.exp(p.log_normalizer) * 2**0.5 * math.gamma(1.5) / 2.0**1.5
    assert vg.pdf_value(p, 0.3) == pytest.approx(limit, rel=1e-13)
    assert vg.pdf_value(p, 0.3 + 1e-9) == pytest.approx(limit, rel=1e-8)
    for nu in (0.0, -0.2):
        with pytest.raises(SingularityError):
            vg.pdf(VGParams(nu, 1.0), 0.0)


# -------------------------------------------------------- closed-form moments

@pytest.mark.parametrize("params", list(grid_params())[::7])
def test_unit_moment(params):
    assert abs(float(vg.abs_moment(params, 0)) - 1) <= 1e-12
    assert vg.raw_moment(params, 0) == vg.raw_moment(VGParams(1.0, 1.0), 0)


def test_abs_moment_symmetric_example():
    assert float(vg.abs_moment(VGParams(1.0, 2.0), 3)) == pytest.approx(4 / math.pi, rel=1e-14)


def test_abs_moment_skewed_example_against_quadrature():
    p = VGParams(1.0, 2.0, 1.0)
    assert rel(vg.abs_moment(p, 2.5), moment_by_quadrature(p, 2.5, Kind.ABSOLUTE)) <= 1e-8


def test_raw_moment_odd_examples():
    assert vg.raw_moment_odd(VGParams(2.0, 1.0, 0.0), 3).is_zero
    assert float(vg.raw_moment_odd(VGParams(1.0, 2.0, 1.0), 1)) == pytest.approx(1.0, rel=1e-14)
    p = VGParams(0.5, 3.0, -2.0)
    v = vg.raw_moment_odd(p, 3)
    assert v.sign == -1
    assert rel(v, moment_by_quadrature(p, 3, Kind.RAW)) <= 1e-8


@pytest.mark.parametrize("k", [2, 4, 1.5, 0])
def test_raw_moment_odd_rejects_even_or_fractional(k):
    with pytest.raises(ParityError):
        vg.raw_moment_odd(VGParams(1.0, 2.0, 1.0), k)


def test_raw_moment_examples():
    assert float(vg.raw_moment(VGParams(1.0, 2.0, 1.0), 1)) == pytest.approx(1.0, rel=1e-14)
    p = VGParams(1.5, 2.0, 0.5)
    closed = vg.raw_moment(p, 4)
    assert rel(closed, moment_by_direct_series(p, 4, Kind.RAW)) <= 1e-8
    assert rel(closed, moment_by_quadrature(p, 4, Kind.RAW)) <= 1e-8


def test_moment_errors():
    p = VGParams(-0.3, 1.0, 0.5)
    with pytest.raises(OrderError):
        vg.abs_moment(p, -0.4)
    with pytest.raises(ParityError):
        vg.raw_moment(p, 2.5)
    with pytest.raises(ParityError):
        vg.raw_moment(p, -1)
    with pytest.raises(LocationError):
        vg.abs_moment(VGParams(1.0, 1.0, 0.0, 0.5), 2)
    with pytest.raises(LocationError):
        vg.raw_moment(VGParams(1.0, 1.0, 0.0, 0.5), 2)


def test_abs_moment_near_threshold_is_finite():
    p = VGParams(-0.3, 1.0, 0.2)
    v = vg.abs_moment(p, -0.39)
    assert v.sign == 1 and math.isfinite(v.log_abs)


def test_large_orders_stay_in_log_space():
    p = VGParams(25.0, 0.5, 0.2)
    v = vg.abs_moment(p, 300)
    assert float(v) == math.inf and math.isfinite(v.log_abs)
    # agrees with the independent series path even there
    assert rel(v, moment_by_direct_series(p, 300, Kind.ABSOLUTE)) <= 1e-10


# -------------------------------------------------------------- invariants

GRID_K = (0, 1, 2, 3, 4, 7)


@pytest.mark.parametrize("nu", NU_GRID)
def test_raw_formula_consistency_grid(nu):
    for ratio, alpha, k in itertools.product(SKEW_GRID, ALPHA_GRID, GRID_K):
        p = VGParams(nu, alpha, ratio * alpha)
        raw = vg.raw_moment(p, k)
        other = vg.abs_moment(p, k) if k % 2 == 0 else vg.raw_moment_odd(p, k)
        if k % 2 and ratio == 0:
            assert raw.is_zero and other.is_zero
        else:
            assert rel(raw, other) <= 1e-12, (p, k)


def _absmom_formula(nu, alpha, k):
    # beta = 0: 2^k Gamma(nu+(k+1)/2) Gamma((k+1)/2) / (sqrt(pi) alpha^k Gamma(nu+1/2))
    return (
        2**k * math.gamma(nu + (k + 1) / 2) * math.gamma((k + 1) / 2)
        / (math.sqrt(math.pi) * alpha**k * math.gamma(nu + 0.5))
    )


def test_symmetric_reduction():
    rng = random.Random(5)
    for _ in range(20):
        nu = rng.uniform(-0.45, 6.0)
        alpha = rng.uniform(0.3, 5.0)
        k = rng.uniform(max(-1.0, -2 * nu - 1) + 0.05, 9.0)
        expected = _absmom_formula(nu, alpha, k)
        assert float(vg.abs_moment(VGParams(nu, alpha), k)) == pytest.approx(expected, rel=1e-13)
        assert float(vg.symmetric_abs_moment(nu, alpha, k)) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("params", [p for p in grid_params() if p.beta > 0])
def test_skew_reflection(params):
    flipped = VGParams(params.nu, params.alpha, -params.beta)
    for k in (0.5, 1, 2.5, 4):
        assert vg.abs_moment(params, k) == vg.abs_moment(flipped, k)
    for k in (1, 3, 7):
        assert vg.raw_moment(params, k) == -vg.raw_moment(flipped, k)


@pytest.mark.parametrize("params", list(grid_params()))
def test_jensen_and_log_convexity(params):
    for k in range(1, 8):
        assert float(vg.raw_moment(params, k)) <= float(vg.abs_moment(params, k)) * (1 + 1e-13)
        assert abs(float(vg.raw_moment(params, k))) <= float(vg.abs_moment(params, k)) * (1 + 1e-13)
    for k in (0.5, 1, 2, 3, 4, 7):
        if k - 0.5 > params.k_star:
            mid = vg.abs_moment(params, k).log_abs
            lo = vg.abs_moment(params, k - 0.5).log_abs
            hi = vg.abs_moment(params, k + 0.5).log_abs
            assert 2 * mid <= lo + hi + 1e-12


def test_first_moment_closed_form():
    for p in grid_params():
        expected = (2 * p.nu + 1) * p.beta / (p.alpha**2 - p.beta**2)
        got = float(vg.raw_moment(p, 1))
        assert got == pytest.approx(expected, rel=1e-12, abs=0.0)


@settings(max_examples=60, deadline=None)
@given(
    nu=st.floats(-0.45, 8.0),
    alpha=st.floats(0.2, 6.0),
    ratio=st.floats(-0.9, 0.9),
    k=st.integers(0, 8),
)
def test_second_moment_matches_mixture_variance(nu, alpha, ratio, k):
    # E[X^2] = (2 nu + 1)/psi + (2 nu + 1)(2 nu + 3) beta^2 / psi^2 with psi = alpha^2 - beta^2
    p = VGParams(nu, alpha, ratio * alpha)
    psi = alpha**2 - p.beta**2
    lam = nu + 0.5
    expected = 2 * lam / psi + 4 * lam * (lam + 1) * p.beta**2 / psi**2
    assert float(vg.raw_moment(p, 2)) == pytest.approx(expected, rel=1e-12)
    raw = vg.raw_moment(p, k)
    assert raw.sign in ((1,) if k % 2 == 0 else (-1, 0, 1))


# ------------------------------------------------------------- expansions

def test_expansion_order_validation():
    with pytest.raises(ValueError):
        vg.abs_moment_expansion(VGParams(1.0, 1.0, 0.1), 2, 3)
    with pytest.raises(ValueError):
        vg.raw_moment_expansion(VGParams(1.0, 1.0, 0.1), 2, 6)


@pytest.mark.parametrize("order", [0, 2, 4])
def test_expansions_exact_without_skew(order):
    p = VGParams(1.3, 2.0)
    for k in (0.5, 1, 2, 3.5):
        assert rel(vg.abs_moment_expansion(p, k, order), vg.abs_moment(p, k)) <= 1e-14
    for k in (2, 4, 6):
        assert rel(vg.raw_moment_expansion(p, k, order), vg.raw_moment(p, k)) <= 1e-14
    for k in (1, 3):
        assert vg.raw_moment_expansion(p, k, order).is_zero


def test_abs_expansion_second_order_example():
    p = VGParams(1.0, 1.0, 0.05)
    pref = vg.abs_moment_expansion(p, 2, 0)
    assert float(vg.abs_moment_expansion(p, 2, 2)) == pytest.approx(float(pref) * 1.015, rel=1e-15)
    dev = abs(math.expm1(vg.abs_moment_expansion(p, 2, 2).log_abs - vg.abs_moment(p, 2).log_abs))
    # fourth order in beta/alpha: the leftover is the beta^4 term over the exact value
    _, c2, c4 = vg.abs_moment_coefficients(1.0, 2)
    x = 0.05**2
    assert dev / x**2 == pytest.approx(c4 / (1 + c2 * x + c4 * x**2), rel=0.01)


def _rel_dev(expansion, exact):
    return abs(math.expm1(expansion.log_abs - exact.log_abs))


@pytest.mark.parametrize(
    "nu, alpha, beta, k, order, kind",
    [
        (1.0, 1.0, 0.05, 2, 2, "abs"),
        (2.0, 1.0, 0.1, 3, 4, "abs"),
        (1.0, 1.0, 0.05, 1, 2, "raw"),
        (0.5, 2.0, 0.02, 2, 4, "raw"),
    ],
)
def test_expansion_remainder_halving(nu, alpha, beta, k, order, kind):
    devs = []
    for b in (beta, beta / 2):
        p = VGParams(nu, alpha, b)
        if kind == "abs":
            devs.append(_rel_dev(vg.abs_moment_expansion(p, k, order), vg.abs_moment(p, k)))
        else:
            devs.append(_rel_dev(vg.raw_moment_expansion(p, k, order), vg.raw_moment(p, k)))
    expected = 4.0 ** (order // 2 + 1)
    assert devs[0] / devs[1] == pytest.approx(expected, rel=0.1)


def test_expansion_coefficients_symbolic():
    sympy = pytest.importorskip("sympy")
    k, nu, x = sympy.symbols("k nu x")
    half = sympy.Rational(1, 2)

    def bracket(a, b, c):
        f = 1 + a * b / c * x + a * (a + 1) * b * (b + 1) / (c * (c + 1) * 2) * x**2
        return sympy.expand(sympy.series((1 - x) ** (nu + half), x, 0, 3).removeO() * f)

    abs_series = bracket((k + 1) / 2, nu + (k + 1) / 2, half)
    for kv, nv in ((0.7, 1.3), (2.0, 0.5), (3.0, -0.25)):
        c = vg.abs_moment_coefficients(nv, kv)
        for power in (1, 2):
            exact = float(abs_series.coeff(x, power).subs({k: kv, nu: nv}))
            assert c[power] == pytest.approx(exact, rel=1e-12)
    for kk in (1, 2, 3, 4, 7):
        ell = sympy.ceiling(sympy.Rational(kk, 2)) + half
        m = kk % 2
        raw_series = bracket(ell, nu + ell, half + m)
        for nv in (0.5, 2.0):
            c = vg.raw_moment_coefficients(nv, kk)
            for power in (1, 2):
                exact = float(raw_series.coeff(x, power).subs({nu: nv}))
                assert c[power] == pytest.approx(exact, rel=1e-12)
