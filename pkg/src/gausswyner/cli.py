"""Command-line front end.

Subcommands: ``scalar`` and ``vector`` evaluate the relaxed common
information, ``curve`` writes a CSV of the scalar value against the budget,
``graywyner`` evaluates the Gray-Wyner common rate, and ``verify`` runs the
brute-force oracle suites. Results are printed as JSON records on stdout
(field order fixed, floats in shortest round-trip form, so identical
invocations are byte-identical); diagnostics go to stderr.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 numerical/validation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__, graywyner, oracle, scalar, vector
from .errors import CovarianceError, ParameterError

__all__ = ["main"]

SCHEMA_VERSION = 1
_LN2 = math.log(2.0)


def _emit(record: dict) -> None:
    print(json.dumps(record, indent=2))


def _units(args) -> tuple[str, float]:
    """Suffix and divisor for rate fields; conversion happens only here."""
    if getattr(args, "bits", False):
        return "bits", _LN2
    return "nats", 1.0


def _base_record(command: str, inputs: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "inputs": inputs,
    }


def _cmd_scalar(args) -> int:
    rho = scalar.validate_correlation(args.rho)
    gamma = scalar.validate_budget(args.gamma)
    value = scalar.wyner_ci_scalar(rho, gamma)
    suffix, div = _units(args)
    record = _base_record("scalar", {"rho": args.rho, "gamma": args.gamma})
    record[f"value_{suffix}"] = value / div
    achievability = None
    r = abs(rho)
    if r < 1.0 and gamma <= scalar.mutual_information(r):
        params = scalar.achievability_params(r, gamma)
        achievability = {
            "alpha_noise": params.alpha_noise,
            "sigma2_w": params.sigma2_w,
            f"rate_{suffix}": params.rate_nats / div,
            f"leakage_{suffix}": params.leakage_nats / div,
        }
    record["achievability"] = achievability
    _emit(record)
    return 0


def _cov_from_payload(payload) -> vector.JointGaussianCov:
    if not isinstance(payload, dict):
        raise ParameterError("covariance file must contain a JSON object")
    if {"kx", "ky", "kxy"} <= payload.keys():
        return vector.JointGaussianCov(
            payload["kx"], payload["kxy"], payload["ky"])
    if {"joint", "dim_x"} <= payload.keys():
        try:
            dim_x = int(payload["dim_x"])
        except (TypeError, ValueError):
            raise ParameterError(
                f"dim_x must be an integer, got {payload['dim_x']!r}")
        return vector.JointGaussianCov.from_joint(payload["joint"], dim_x)
    raise ParameterError(
        'covariance file needs keys "kx"/"ky"/"kxy" or "joint"/"dim_x"')


def _cmd_vector(args) -> int:
    with open(args.input, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    cov = _cov_from_payload(payload)
    gamma = scalar.validate_budget(args.gamma)
    result = vector.wyner_ci_vector(cov, gamma)
    suffix, div = _units(args)
    alloc = result.allocation
    record = _base_record("vector", {"input": args.input, "gamma": args.gamma})
    record[f"value_{suffix}"] = result.value_nats / div
    record["spectrum"] = list(result.spectrum.rhos)
    record["allocation"] = {
        "gammas": [g / div for g in alloc.gammas],
        f"water_level_{suffix}": alloc.water_level_beta / div,
        "saturated": list(alloc.saturated),
        "slack": alloc.slack / div,
    }
    _emit(record)
    return 0


def _cmd_curve(args) -> int:
    rho = scalar.validate_correlation(args.rho)
    gamma_max = scalar.validate_budget(args.gamma_max)
    if math.isinf(gamma_max):
        raise ParameterError("gamma-max must be finite")
    if args.steps < 2:
        raise ParameterError(f"steps must be >= 2, got {args.steps}")
    bound_at_zero = scalar.mutual_information(abs(rho))
    lines = ["gamma,c_gamma_nats,lower_bound_nats"]
    for j in range(args.steps + 1):
        gamma = gamma_max * j / args.steps
        value = scalar.wyner_ci_scalar(rho, gamma)
        lower = max(bound_at_zero - gamma, 0.0)
        lines.append(f"{gamma!r},{value!r},{lower!r}")
    with open(args.output, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")
    return 0


def _cmd_graywyner(args) -> int:
    point = graywyner.common_rate(args.sigma2, args.rho, args.delta,
                                  args.alpha)
    suffix, div = _units(args)
    nu_star = None
    if point.regime is graywyner.Regime.BLEND:
        nu_star = graywyner.dual_maximizer(
            args.rho, args.delta / args.sigma2, args.alpha)
    record = _base_record("graywyner", {
        "rho": args.rho,
        "sigma2": args.sigma2,
        "delta": args.delta,
        "alpha": args.alpha,
    })
    record[f"r0_{suffix}"] = point.r0 / div
    record["regime"] = point.regime.value
    record["nu_star"] = nu_star
    _emit(record)
    return 0


def _cmd_verify(args) -> int:
    reports = oracle.run_suite(args.suite)
    record = _base_record("verify", {"suite": args.suite})
    record["checks"] = [report.as_dict() for report in reports]
    record["all_passed"] = all(report.passed for report in reports)
    _emit(record)
    return 0 if record["all_passed"] else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausswyner",
        description="Relaxed Wyner common information for Gaussian sources.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scalar",
                       help="relaxed common information of a scalar pair")
    p.add_argument("--rho", type=float, required=True,
                   help="correlation coefficient in [-1, 1]")
    p.add_argument("--gamma", type=float, required=True,
                   help="conditional-information budget in nats")
    p.add_argument("--bits", action="store_true",
                   help="emit rates in bits instead of nats")
    p.set_defaults(func=_cmd_scalar)

    p = sub.add_parser("vector",
                       help="relaxed common information of a vector pair")
    p.add_argument("--input", required=True,
                   help='JSON covariance file ("kx"/"ky"/"kxy" or '
                        '"joint"/"dim_x")')
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--bits", action="store_true")
    p.set_defaults(func=_cmd_vector)

    p = sub.add_parser("curve",
                       help="CSV of the scalar value over a budget range")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--gamma-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True,
                   help="number of intervals (steps + 1 rows)")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("graywyner", help="Gray-Wyner minimal common rate")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--sigma2", type=float, default=1.0,
                   help="source variance (both sources)")
    p.add_argument("--delta", type=float, required=True,
                   help="mean-squared-error target")
    p.add_argument("--alpha", type=float, required=True,
                   help="cap on the sum of private rates, nats")
    p.add_argument("--bits", action="store_true")
    p.set_defaults(func=_cmd_graywyner)

    p = sub.add_parser("verify", help="run the brute-force oracle suites")
    p.add_argument("--suite", choices=oracle.SUITES, required=True)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 2
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CovarianceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
