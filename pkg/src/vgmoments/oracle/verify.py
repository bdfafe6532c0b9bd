"""Cross-method verification of moment values."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from .. import normprod, vg
from ..normprod import ProductNormalParams
from ..signedlog import SignedLogValue, relative_deviation
from ..vg import Kind, Method, MomentQuery, VGParams
from .montecarlo import MonteCarloSettings, moment_by_monte_carlo
from .quadrature import QuadratureSettings, moment_by_quadrature
from .series import moment_by_direct_series

DEFAULT_TOLERANCE = 1e-7
MC_SIGMAS = 4.0
VG_REPRESENTATION = "vg_representation"
REFERENCE = "reference"

Target = Union[VGParams, ProductNormalParams]
Evaluator = Callable[[Target, float, Kind], "tuple[SignedLogValue, Optional[float]]"]


@dataclass(frozen=True)
class MethodValue:
    method: str
    value: Optional[SignedLogValue]
    uncertainty: Optional[float] = None
    error: Optional[str] = None


@dataclass(frozen=True)
class VerificationCase:
    """One moment to be computed by several methods and compared.

    ``reference`` adds an externally known value (an identity or textbook
    result) as one more participant in the comparison.
    """

    target: Target
    k: float
    kind: Kind = Kind.ABSOLUTE
    methods: tuple = (Method.CLOSED_FORM, Method.ORACLE_QUADRATURE, Method.ORACLE_DIRECT_SERIES)
    tolerance: float = DEFAULT_TOLERANCE
    reference: Optional[SignedLogValue] = None
    label: str = ""
    order: int = 4


@dataclass
class VerificationReport:
    label: str
    query: Optional[MomentQuery]
    params: Optional[Target]
    values: list = field(default_factory=list)
    max_pairwise_rel_dev: float = 0.0
    tolerance: float = DEFAULT_TOLERANCE
    max_mc_sigmas: Optional[float] = None
    passed: bool = True
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "k": None if self.query is None else self.query.k,
            "kind": None if self.query is None else self.query.kind.value,
            "params": None if self.params is None else vars(self.params),
            "values": [
                {
                    "method": v.method,
                    "value": None if v.value is None else v.value.to_decimal(),
                    "sign": None if v.value is None else v.value.sign,
                    "log_abs": None if v.value is None or v.value.sign == 0 else v.value.log_abs,
                    "uncertainty": v.uncertainty,
                    "error": v.error,
                }
                for v in self.values
            ],
            "max_pairwise_rel_dev": _json_float(self.max_pairwise_rel_dev),
            "tolerance": self.tolerance,
            "max_mc_sigmas": _json_float(self.max_mc_sigmas),
            "passed": self.passed,
            "failures": list(self.failures),
        }


def _json_float(x):
    if x is None or math.isfinite(x):
        return x
    return "inf" if x > 0 else "-inf"


def evaluate(
    target: Target,
    k: float,
    kind: Kind | str,
    method: Method | str,
    *,
    order: int = 4,
    quadrature: QuadratureSettings | None = None,
    monte_carlo: MonteCarloSettings | None = None,
) -> tuple[SignedLogValue, Optional[float]]:
    """Compute one moment by one method; returns (value, uncertainty).

    The uncertainty is the relative error estimate for quadrature, the
    standard error for Monte Carlo and ``None`` otherwise.
    """
    kind = Kind(kind)
    if method == VG_REPRESENTATION:
        if not isinstance(target, ProductNormalParams):
            raise TypeError("vg_representation applies to product-normal targets only")
        mapped = normprod.vg_params_of_product_mean(target)
        value = vg.abs_moment(mapped, k) if kind is Kind.ABSOLUTE else vg.raw_moment(mapped, k)
        return value, None
    method = Method(method)

    if method is Method.ORACLE_MONTE_CARLO:
        return moment_by_monte_carlo(target, k, kind, monte_carlo)

    if isinstance(target, ProductNormalParams):
        if method is Method.CLOSED_FORM:
            if kind is Kind.ABSOLUTE:
                return normprod.product_abs_moment(target, k), None
            return normprod.product_raw_moment(target, k), None
        target = normprod.vg_params_of_product_mean(target)

    if method is Method.CLOSED_FORM:
        value = vg.abs_moment(target, k) if kind is Kind.ABSOLUTE else vg.raw_moment(target, k)
        return value, None
    if method is Method.SERIES_EXPANSION:
        if kind is Kind.ABSOLUTE:
            return vg.abs_moment_expansion(target, k, order), None
        return vg.raw_moment_expansion(target, k, order), None
    if method is Method.ORACLE_QUADRATURE:
        res = moment_by_quadrature(target, k, kind, quadrature, full_output=True)
        return res.value, res.rel_error
    if method is Method.ORACLE_DIRECT_SERIES:
        return moment_by_direct_series(target, k, kind), None
    raise ValueError(f"unknown method {method!r}")


def _method_name(method) -> str:
    return method.value if isinstance(method, Method) else str(method)


def verify_case(
    case: VerificationCase,
    *,
    evaluators: dict | None = None,
    quadrature: QuadratureSettings | None = None,
    monte_carlo: MonteCarloSettings | None = None,
) -> VerificationReport:
    evaluators = evaluators or {}
    kind = Kind(case.kind)
    report = VerificationReport(
        label=case.label,
        query=MomentQuery(case.k, kind, Method.CLOSED_FORM),
        params=case.target,
        tolerance=case.tolerance,
    )
    for method in case.methods:
        name = _method_name(method)
        try:
            if name in evaluators:
                value, unc = evaluators[name](case.target, case.k, kind)
            else:
                value, unc = evaluate(
                    case.target, case.k, kind, method, order=case.order,
                    quadrature=quadrature, monte_carlo=monte_carlo,
                )
            report.values.append(MethodValue(name, value, unc))
        except (ValueError, ArithmeticError) as exc:
            report.values.append(MethodValue(name, None, None, f"{type(exc).__name__}: {exc}"))
            report.failures.append(f"{name} raised {type(exc).__name__}: {exc}")
    if case.reference is not None:
        report.values.append(MethodValue(REFERENCE, case.reference))
    _compare(report)
    return report


def _compare(report: VerificationReport) -> None:
    mc_name = Method.ORACLE_MONTE_CARLO.value
    good = [v for v in report.values if v.value is not None]
    exact = [v for v in good if v.method != mc_name]
    sampled = [v for v in good if v.method == mc_name]

    worst = 0.0
    for a, b in itertools.combinations(exact, 2):
        dev = relative_deviation(a.value, b.value)
        worst = max(worst, dev)
        if not dev <= report.tolerance:
            report.failures.append(f"{a.method} vs {b.method}: rel dev {dev:.3g} > {report.tolerance:.3g}")
    report.max_pairwise_rel_dev = worst

    if sampled:
        worst_z = 0.0
        for mc in sampled:
            for ref in exact:
                gap = abs(float(mc.value) - float(ref.value))
                if mc.uncertainty:
                    z = gap / mc.uncertainty
                else:
                    z = 0.0 if relative_deviation(mc.value, ref.value) <= report.tolerance else math.inf
                worst_z = max(worst_z, z)
                if not z <= MC_SIGMAS:
                    report.failures.append(
                        f"{mc.method} vs {ref.method}: {z:.3g} standard errors > {MC_SIGMAS:g}"
                    )
        report.max_mc_sigmas = worst_z
    report.passed = not report.failures


def verify(
    cases: Iterable[VerificationCase],
    *,
    evaluators: dict | None = None,
    quadrature: QuadratureSettings | None = None,
    monte_carlo: MonteCarloSettings | None = None,
) -> list[VerificationReport]:
    """Verify every case; reports come back in input order.

    A failure in one case is recorded in its report and never aborts the batch.
    """
    return list(
        iter_verify(cases, evaluators=evaluators, quadrature=quadrature, monte_carlo=monte_carlo)
    )


def iter_verify(cases, *, evaluators=None, quadrature=None, monte_carlo=None):
    for case in cases:
        yield verify_case(case, evaluators=evaluators, quadrature=quadrature, monte_carlo=monte_carlo)


def comparison_report(label: str, values: list, tolerance: float) -> VerificationReport:
    """Report comparing ready-made values, for identity checks outside the moment API."""
    report = VerificationReport(label=label, query=None, params=None, tolerance=tolerance)
    report.values = [MethodValue(name, value, unc) for name, value, unc in values]
    _compare(report)
    return report
