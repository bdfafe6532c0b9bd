"""Named verification suites run by ``vgmoments verify --suite NAME``."""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterator

from .. import vg
from ..normprod import ProductNormalParams
from ..signedlog import SignedLogValue
from ..specfun import Hyp2F1Args, bessel_k, bessel_k_moment_integral, hyp2f1, log_gamma, pochhammer_log
from ..vg import Kind, Method, VGParams
from .montecarlo import MonteCarloSettings
from .quadrature import QuadratureSettings, bessel_moment_by_quadrature
from .verify import (
    REFERENCE,
    VG_REPRESENTATION,
    VerificationCase,
    VerificationReport,
    comparison_report,
    iter_verify,
)

NU_GRID = (-0.3, 0.0, 0.5, 2.0, 5.5)
SKEW_GRID = (0.0, 0.2, -0.2, 0.6, -0.6, 0.9, -0.9)
ALPHA_GRID = (0.5, 1.0, 4.0)
ABS_ORDERS = (0.5, 1.0, 2.0, 3.0, 4.0, 7.0)
RAW_ORDERS = (0, 1, 2, 3, 4, 7)

SUITES = ("grid", "corollary", "expansion", "specfun")
SUITE_SEED = 12345


def grid_params() -> Iterator[VGParams]:
    for nu, ratio, alpha in itertools.product(NU_GRID, SKEW_GRID, ALPHA_GRID):
        yield VGParams(nu, alpha, ratio * alpha)


def grid_cases(methods=None) -> Iterator[VerificationCase]:
    methods = methods or (Method.CLOSED_FORM, Method.ORACLE_QUADRATURE, Method.ORACLE_DIRECT_SERIES)
    for params in grid_params():
        for k in ABS_ORDERS:
            yield VerificationCase(params, k, Kind.ABSOLUTE, methods, label="grid")
        for k in RAW_ORDERS:
            yield VerificationCase(params, k, Kind.RAW, methods, label="grid")


def random_product_params(count: int, seed: int = SUITE_SEED) -> list[ProductNormalParams]:
    rng = random.Random(seed)
    return [
        ProductNormalParams(
            sigma_u=rng.uniform(0.2, 3.0),
            sigma_v=rng.uniform(0.2, 3.0),
            rho=rng.uniform(-0.95, 0.95),
            n=rng.randint(1, 10),
        )
        for _ in range(count)
    ]


def corollary_cases(include_monte_carlo: bool = True) -> Iterator[VerificationCase]:
    pair = (Method.CLOSED_FORM, VG_REPRESENTATION)
    for p in random_product_params(50):
        for k in range(6):
            yield VerificationCase(p, k, Kind.RAW, pair, tolerance=1e-12, label="corollary:representation")
        for k in (0.5, 1.0, 2.5, 4.0):
            yield VerificationCase(p, k, Kind.ABSOLUTE, pair, tolerance=1e-12, label="corollary:representation")

    # E[Zbar_n] = rho s for every n
    for p in random_product_params(8, SUITE_SEED + 1):
        for n in range(1, 9):
            q = ProductNormalParams(p.sigma_u, p.sigma_v, p.rho, n)
            yield VerificationCase(
                q, 1, Kind.RAW, pair, tolerance=1e-12,
                reference=SignedLogValue.from_float(q.rho * q.s), label="corollary:mean",
            )
    # Isserlis: E[Z^2] = s^2 (1 + 2 rho^2)
    for p in random_product_params(10, SUITE_SEED + 2):
        q = ProductNormalParams(p.sigma_u, p.sigma_v, p.rho, 1)
        yield VerificationCase(
            q, 2, Kind.RAW, pair, tolerance=1e-12,
            reference=SignedLogValue.from_float(q.s**2 * (1 + 2 * q.rho**2)), label="corollary:isserlis",
        )
    # independent factors: E|UV|^k = (2s)^k Gamma((k+1)/2)^2 / pi
    for k in (0.5, 1.0, 1.5, 2.0, 3.0, 5.0):
        q = ProductNormalParams(1.3, 0.7, 0.0, 1)
        ref = SignedLogValue(1, k * math.log(2 * q.s) + 2 * log_gamma((k + 1) / 2) - math.log(math.pi))
        yield VerificationCase(
            q, k, Kind.ABSOLUTE, pair, tolerance=1e-12, reference=ref, label="corollary:independent"
        )

    if include_monte_carlo:
        mc = (Method.CLOSED_FORM, Method.ORACLE_MONTE_CARLO)
        for rho, n in itertools.product((0.0, 0.5, -0.5), (1, 4)):
            q = ProductNormalParams(1.0, 1.0, rho, n)
            for k in (1, 2, 3):
                yield VerificationCase(q, k, Kind.RAW, mc, label="corollary:monte_carlo")


def expansion_reports(base_ratio: float = 0.05) -> Iterator[VerificationReport]:
    """Halving beta must shrink the relative truncation error by 4^(order/2 + 1)."""
    for kind, nu, k, order in itertools.product(
        (Kind.ABSOLUTE, Kind.RAW), (0.5, 2.0), (1, 2, 3, 4), vg.EXPANSION_ORDERS
    ):
        devs = []
        for ratio in (base_ratio, base_ratio / 2):
            params = VGParams(nu, 1.0, ratio)
            if kind is Kind.ABSOLUTE:
                exact = vg.abs_moment(params, k)
                approx = vg.abs_moment_expansion(params, k, order)
            else:
                exact = vg.raw_moment(params, k)
                approx = vg.raw_moment_expansion(params, k, order)
            devs.append(abs(math.expm1(approx.log_abs - exact.log_abs)))
        observed = devs[0] / devs[1]
        expected = 4.0 ** (order // 2 + 1)
        yield comparison_report(
            f"expansion:{kind.value}:nu={nu}:k={k}:order={order}",
            [
                ("observed_ratio", SignedLogValue.from_float(observed), None),
                ("expected_ratio", SignedLogValue.from_float(expected), None),
            ],
            tolerance=0.3,
        )


def specfun_reports(quadrature: QuadratureSettings | None = None) -> Iterator[VerificationReport]:
    rng = random.Random(SUITE_SEED)
    for _ in range(200):
        a, b = rng.uniform(-5, 5), rng.uniform(-5, 5)
        c = rng.choice((0.5, 1.5))
        x = rng.uniform(0, 0.99)
        lhs = hyp2f1(Hyp2F1Args(a, b, c, x))
        rhs = hyp2f1(Hyp2F1Args(c - a, c - b, c, x)) * SignedLogValue(1, (c - a - b) * math.log1p(-x))
        yield comparison_report(
            f"specfun:euler:a={a:.4g}:b={b:.4g}:c={c}:x={x:.4g}",
            [("hyp2f1", lhs, None), ("euler_transform", rhs, None)],
            tolerance=1e-9,
        )
    for u, j in itertools.product((0.3, 1.7, 5.5, 12.25), (0, 1, 5, 20, 50)):
        yield comparison_report(
            f"specfun:pochhammer:u={u}:j={j}",
            [
                ("pochhammer", pochhammer_log(u, j), None),
                ("gamma_ratio", SignedLogValue(1, log_gamma(u + j) - log_gamma(u)), None),
            ],
            tolerance=1e-12,
        )
    for nu, gap in itertools.product((0.0, 0.5, 1.3, 4.0), (0.2, 1.0, 3.0)):
        r = abs(nu) + gap
        quad = bessel_moment_by_quadrature(r, nu, quadrature)
        yield comparison_report(
            f"specfun:bessel_integral:r={r}:nu={nu}",
            [
                ("closed_form", bessel_k_moment_integral(r, nu), None),
                ("oracle_quadrature", quad.value, quad.rel_error),
            ],
            tolerance=1e-8,
        )
    for nu, x in itertools.product((0.0, 0.5, 2.0, 7.5), (50.0, 100.0, 500.0)):
        bound = (2 * (4 * nu * nu - 1) / 8 + 1) / x
        yield comparison_report(
            f"specfun:bessel_asymptotic:nu={nu}:x={x}",
            [
                ("bessel_k", bessel_k(nu, x), None),
                ("large_x_form", SignedLogValue(1, 0.5 * math.log(math.pi / (2 * x)) - x), None),
            ],
            tolerance=abs(bound),
        )


def run_suite(
    name: str,
    quadrature: QuadratureSettings | None = None,
    monte_carlo: MonteCarloSettings | None = None,
) -> Iterator[VerificationReport]:
    if name == "grid":
        return iter_verify(grid_cases(), quadrature=quadrature)
    if name == "corollary":
        return iter_verify(corollary_cases(), monte_carlo=monte_carlo)
    if name == "expansion":
        return expansion_reports()
    if name == "specfun":
        return specfun_reports(quadrature)
    raise KeyError(name)


__all__ = [
    "ABS_ORDERS",
    "ALPHA_GRID",
    "NU_GRID",
    "RAW_ORDERS",
    "REFERENCE",
    "SKEW_GRID",
    "SUITES",
    "corollary_cases",
    "expansion_reports",
    "grid_cases",
    "grid_params",
    "random_product_params",
    "run_suite",
    "specfun_reports",
]
