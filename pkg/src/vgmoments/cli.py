"""Command-line interface: ``vgmoments {moment,table,verify,product}``.

Records go to stdout as JSON lines or CSV; diagnostics go to stderr.
Exit codes: 0 success, 1 numerical failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import sys
import time
from typing import Sequence

from . import normprod
from .errors import NonConvergenceError, ToleranceNotMetError
from .normprod import ProductNormalParams
from .oracle.montecarlo import DEFAULT_SEED, MonteCarloSettings
from .oracle.quadrature import QuadratureSettings
from .oracle.suites import SUITES, run_suite
from .oracle.verify import evaluate
from .signedlog import SignedLogValue, relative_deviation
from .vg import Kind, Method, VGParams

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2

METHODS = {
    "closed": Method.CLOSED_FORM,
    "series": Method.SERIES_EXPANSION,
    "quad": Method.ORACLE_QUADRATURE,
    "direct": Method.ORACLE_DIRECT_SERIES,
    "mc": Method.ORACLE_MONTE_CARLO,
}
KINDS = {"raw": Kind.RAW, "abs": Kind.ABSOLUTE}

MOMENT_FIELDS = ["command", "nu", "alpha", "beta", "mu", "k", "kind", "method", "order",
                 "value", "sign", "log_abs", "uncertainty", "elapsed_s", "status", "error"]
PRODUCT_FIELDS = ["command", "sigma_u", "sigma_v", "rho", "n", "k", "kind", "method",
                  "value", "sign", "log_abs", "value_vg", "sign_vg", "log_abs_vg", "rel_dev",
                  "elapsed_s", "status", "error"]
VERIFY_FIELDS = ["label", "k", "kind", "params", "max_pairwise_rel_dev", "tolerance",
                 "max_mc_sigmas", "passed", "failures"]


class UsageError(Exception):
    pass


def _number(text: str, flag: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"--{flag}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"--{flag}: must be finite, got {text!r}")
    return value


def _integer(text: str, flag: str) -> int:
    value = _number(text, flag)
    if not value.is_integer():
        raise UsageError(f"--{flag}: not an integer: {text!r}")
    return int(value)


def _expand_sweep(text: str, flag: str) -> list[str]:
    """Comma list whose items are numbers or inclusive ranges ``start:stop[:step]``."""
    items = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if ":" in piece:
            parts = piece.split(":")
            if len(parts) not in (2, 3):
                raise UsageError(f"--{flag}: bad range {piece!r}")
            start, stop = _number(parts[0], flag), _number(parts[1], flag)
            step = _number(parts[2], flag) if len(parts) == 3 else 1.0
            if step <= 0:
                raise UsageError(f"--{flag}: range step must be positive")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            for i in range(max(count, 0)):
                v = start + i * step
                items.append(repr(int(v)) if float(v).is_integer() else repr(v))
        else:
            _number(piece, flag)
            items.append(piece)
    if not items:
        raise UsageError(f"--{flag}: empty sweep")
    return items


def _value_fields(value: SignedLogValue | None, suffix: str = "") -> dict:
    if value is None:
        return {"value" + suffix: None, "sign" + suffix: None, "log_abs" + suffix: None}
    return {
        "value" + suffix: value.to_decimal(),
        "sign" + suffix: value.sign,
        "log_abs" + suffix: None if value.sign == 0 else value.log_abs,
    }


def _settings(args) -> tuple[QuadratureSettings, MonteCarloSettings]:
    quad = QuadratureSettings(rel_tol=_number(args.rel_tol, "rel-tol"))
    mc_kwargs = {"seed": _integer(args.seed, "seed")}
    if args.samples is not None:
        mc_kwargs["sample_count"] = _integer(args.samples, "samples")
    return quad, MonteCarloSettings(**mc_kwargs)


class _Writer:
    def __init__(self, fmt: str, fields: list[str], stream=None):
        self.fmt = fmt
        self.fields = fields
        self.stream = stream or sys.stdout
        self._csv = None

    def write(self, record: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(record) + "\n")
        else:
            if self._csv is None:
                self._csv = csv.DictWriter(self.stream, fieldnames=self.fields, extrasaction="ignore")
                self._csv.writeheader()
            self._csv.writerow({k: "" if record.get(k) is None else record.get(k) for k in self.fields})
        self.stream.flush()


def _moment_record(inputs: dict, method: Method, order_text: str, quad, mc) -> tuple[dict, int]:
    """Evaluate one moment; returns (record, exit code).  Validation errors propagate."""
    record = {"command": "moment", **inputs, "method": method.value, "order": order_text}
    params = VGParams(
        _number(inputs["nu"], "nu"),
        _number(inputs["alpha"], "alpha"),
        _number(inputs["beta"], "beta"),
        _number(inputs["mu"], "mu"),
    )
    kind = KINDS[inputs["kind"]]
    k = _number(inputs["k"], "k")
    order = _integer(order_text, "order")
    start = time.perf_counter()
    try:
        value, unc = evaluate(params, k, kind, method, order=order, quadrature=quad, monte_carlo=mc)
        status, error, code = "ok", None, EXIT_OK
    except (NonConvergenceError, ToleranceNotMetError) as exc:
        estimate = getattr(exc, "partial", None) or getattr(exc, "estimate", None)
        if isinstance(estimate, float):
            estimate = SignedLogValue.from_float(estimate)
        value, unc = estimate, getattr(exc, "rel_error", None)
        status, error, code = "numerical_failure", str(exc), EXIT_NUMERICAL
    record.update(_value_fields(value))
    record.update(uncertainty=unc, elapsed_s=time.perf_counter() - start, status=status, error=error)
    return record, code


def cmd_moment(args) -> int:
    quad, mc = _settings(args)
    inputs = {"nu": args.nu, "alpha": args.alpha, "beta": args.beta, "mu": args.mu,
              "k": args.k, "kind": args.kind}
    record, code = _moment_record(inputs, METHODS[args.method], args.order, quad, mc)
    _Writer(args.format, MOMENT_FIELDS).write(record)
    if code == EXIT_NUMERICAL:
        print(f"error: {record['error']}", file=sys.stderr)
    return code


def cmd_table(args) -> int:
    quad, mc = _settings(args)
    axes = {name: _expand_sweep(getattr(args, name), name) for name in ("nu", "alpha", "beta", "mu", "k")}
    method = METHODS[args.method]
    writer = _Writer(args.format, MOMENT_FIELDS)
    for point in itertools.product(*axes.values()):
        inputs = dict(zip(axes, point), kind=args.kind)
        try:
            record, _ = _moment_record(inputs, method, args.order, quad, mc)
        except (ValueError, UsageError) as exc:
            record = {"command": "moment", **inputs, "method": method.value, "order": args.order,
                      "status": "error", "error": str(exc)}
        writer.write(record)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"--suite: unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    quad, mc = _settings(args)
    writer = _Writer(args.format, VERIFY_FIELDS)
    passed = failed = 0
    for report in run_suite(args.suite, quadrature=quad, monte_carlo=mc):
        row = report.to_dict()
        if args.format == "csv":
            row = {**row, "params": json.dumps(row["params"]), "failures": "; ".join(row["failures"])}
        writer.write(row)
        if report.passed:
            passed += 1
        else:
            failed += 1
    summary = {"summary": {"suite": args.suite, "passed": passed, "failed": failed}}
    if args.format == "json":
        writer.write(summary)
    else:
        print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_NUMERICAL


def cmd_product(args) -> int:
    p = ProductNormalParams(
        _number(args.sigma_u, "sigma-u"),
        _number(args.sigma_v, "sigma-v"),
        _number(args.rho, "rho"),
        _integer(args.n, "n"),
    )
    kind = KINDS[args.kind]
    k = _number(args.k, "k")
    start = time.perf_counter()
    if kind is Kind.ABSOLUTE:
        direct = normprod.product_abs_moment(p, k)
        mapped = normprod.product_abs_moment_via_vg(p, k)
    else:
        direct = normprod.product_raw_moment(p, k)
        mapped = normprod.product_raw_moment_via_vg(p, k)
    record = {
        "command": "product",
        "sigma_u": args.sigma_u, "sigma_v": args.sigma_v, "rho": args.rho, "n": args.n,
        "k": args.k, "kind": args.kind, "method": Method.CLOSED_FORM.value,
        **_value_fields(direct),
        **_value_fields(mapped, "_vg"),
        "rel_dev": relative_deviation(direct, mapped),
        "elapsed_s": time.perf_counter() - start,
        "status": "ok", "error": None,
    }
    _Writer(args.format, PRODUCT_FIELDS).write(record)
    return EXIT_OK


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--seed", default=str(DEFAULT_SEED))
    parser.add_argument("--samples", default=None, help="Monte Carlo sample count (default 10^7)")
    parser.add_argument("--rel-tol", dest="rel_tol", default="1e-10", help="quadrature relative tolerance")


def _vg_flags(parser: argparse.ArgumentParser, sweep: bool) -> None:
    suffix = " (comma list or start:stop[:step])" if sweep else ""
    parser.add_argument("--nu", required=True, help="shape, nu > -1/2" + suffix)
    parser.add_argument("--alpha", required=True, help="alpha > 0" + suffix)
    parser.add_argument("--beta", default="0", help="skew, |beta| < alpha" + suffix)
    parser.add_argument("--mu", default="0", help="location; moments need 0" + suffix)
    parser.add_argument("--k", required=True, help="moment order" + suffix)
    parser.add_argument("--kind", choices=tuple(KINDS), default="abs")
    parser.add_argument("--method", choices=tuple(METHODS), default="closed")
    parser.add_argument("--order", choices=("0", "2", "4"), default="4", help="series expansion order")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vgmoments", description="Variance-gamma moments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment", help="compute one moment")
    _vg_flags(p, sweep=False)
    _common(p)
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("table", help="moments over the Cartesian product of sweeps")
    _vg_flags(p, sweep=True)
    _common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, help=f"one of: {', '.join(SUITES)}")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("product", help="moments of the mean of n correlated normal products")
    p.add_argument("--sigma-u", dest="sigma_u", default="1")
    p.add_argument("--sigma-v", dest="sigma_v", default="1")
    p.add_argument("--rho", required=True)
    p.add_argument("--n", default="1")
    p.add_argument("--k", required=True)
    p.add_argument("--kind", choices=tuple(KINDS), default="abs")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_product)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # ParameterError, OrderError, ParityError, LocationError, DomainError
        constraint = getattr(exc, "constraint", None)
        prefix = f"invalid {constraint}: " if constraint else "invalid input: "
        print(f"error: {prefix}{exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergenceError, ToleranceNotMetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
