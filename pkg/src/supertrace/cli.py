"""Command line surface: expand series, run verification suites, check
transformation laws.

Exit codes: 0 on success/pass, 1 on verification failure, 2 on usage
errors (including domain precondition violations in the arguments).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bracket, fock, modforms, sl2, suites
from .errors import SupertraceError
from .series import EvalPoint, QSeries, RootOfUnity

_EXPAND_OBJECTS = ("eisenstein", "Q", "eta", "eta-quotient", "bracket-c", "trace")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supertrace",
        description="Exact q-series engine for fermionic orbifold trace functions "
                    "and their modular transformation laws.")
    sub = parser.add_subparsers(dest="command", required=True)

    expand = sub.add_parser("expand", help="print a named expansion")
    expand.add_argument("--object", required=True, choices=_EXPAND_OBJECTS)
    expand.add_argument("--order", type=int, default=10,
                        help="relative truncation order (default 10)")
    expand.add_argument("--k", type=int, help="weight for eisenstein/Q")
    expand.add_argument("--mu", help="root of unity as j/M (e.g. 1/2 for -1)")
    expand.add_argument("--lambda", dest="lam", help="root of unity as j/M")
    expand.add_argument("--x", help="module twist label: 1|sigma|g")
    expand.add_argument("--y", help="trace twist label: 1|sigma|g|gsigma")
    expand.add_argument("--l", type=int, help="number of fermions (even)")
    expand.add_argument("--p", type=int, help="weight parameter for bracket-c")
    expand.add_argument("--imax", type=int, default=16, help="table bound for bracket-c")
    expand.add_argument("--format", choices=("text", "json"), default="text")

    verify = sub.add_parser("verify", help="run a named verification suite")
    verify.add_argument("suite", help="one of: " + ", ".join(suites.SUITE_NAMES))
    verify.add_argument("--format", choices=("text", "json"), default="text")

    transform = sub.add_parser("transform", help="check a transformation law numerically")
    transform.add_argument("--x", required=True)
    transform.add_argument("--y", required=True)
    transform.add_argument("--gamma", required=True,
                           help="matrix entries a,b,c,d with a*d - b*c = 1")
    transform.add_argument("--l", type=int, required=True)
    transform.add_argument("--weight", type=int, default=0)
    transform.add_argument("--tol", type=float, default=1e-8)
    transform.add_argument("--order", type=int, default=60,
                           help="series truncation used for evaluation (default 60)")
    transform.add_argument("--samples",
                           help="comma-separated complex sample points, e.g. 2j,1+2j,3j")
    return parser


def _require(value, name: str):
    if value is None:
        raise UsageError(f"missing required option --{name}")
    return value


def _parse_root(text: str, name: str) -> RootOfUnity:
    try:
        return RootOfUnity.from_string(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --{name} value {text!r}: {exc}") from None


def _series_payload(series: QSeries, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(series.to_json_dict())
    return str(series)


def _cmd_expand(args) -> int:
    obj = args.object
    if obj == "eisenstein":
        series = modforms.eisenstein_E(_require(args.k, "k"), args.order)
    elif obj == "Q":
        mu = _parse_root(_require(args.mu, "mu"), "mu")
        lam = _parse_root(_require(args.lam, "lambda"), "lambda")
        series = modforms.q_series_Q(_require(args.k, "k"), mu, lam, args.order)
    elif obj == "eta":
        series = modforms.eta_series(args.order)
    elif obj == "eta-quotient":
        spec = fock.reference_eta_quotient(_require(args.x, "x"), _require(args.y, "y"),
                                           _require(args.l, "l"))
        series = modforms.eta_quotient(spec, args.order)
    elif obj == "trace":
        series = fock.trace_gh(_require(args.x, "x"), _require(args.y, "y"),
                               _require(args.l, "l"), args.order)
    else:  # bracket-c
        table = bracket.c_table(_require(args.p, "p"), args.imax)
        payload = {
            "p": table.p,
            "imax": table.imax,
            "entries": [[i, m, str(c)] for (i, m), c in sorted(table.rows.items())],
        }
        print(json.dumps(payload))
        return 0
    print(_series_payload(series, args.format))
    return 0


def _cmd_verify(args) -> int:
    if args.suite not in suites.SUITE_NAMES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from "
                         + ", ".join(suites.SUITE_NAMES))
    result = suites.run_suite(args.suite)
    if args.format == "json":
        print(json.dumps(result.to_json_dict()))
    else:
        print(result.format_table())
        print(json.dumps(result.to_json_dict()))
    return 0 if result.passed else 1


def _parse_samples(text: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(part.strip()) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise UsageError(f"bad --samples value {text!r}: {exc}") from None


def _parse_gamma(text: str) -> sl2.SL2Matrix:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--gamma needs four comma-separated integers a,b,c,d")
    try:
        a, b, c, d = (int(p) for p in parts)
        return sl2.SL2Matrix(a, b, c, d)
    except ValueError as exc:
        raise UsageError(f"bad --gamma value {text!r}: {exc}") from None


_TWIST_EXPONENTS = {"1": (0, 0), "sigma": (0, 1), "g": (1, 0), "gsigma": (1, 1)}


def _twist_name(exponents: tuple[int, int]) -> str:
    for name, exp in _TWIST_EXPONENTS.items():
        if exp == exponents:
            return name
    raise UsageError(f"no twist label for exponents {exponents}")


def _cmd_transform(args) -> int:
    gamma = _parse_gamma(args.gamma)
    if args.x not in _TWIST_EXPONENTS or args.y not in _TWIST_EXPONENTS:
        raise UsageError("twist labels must be one of 1, sigma, g, gsigma")
    pair = sl2.TwistPair((2, 2), _TWIST_EXPONENTS[args.x], _TWIST_EXPONENTS[args.y])
    image = sl2.act_twist(pair, gamma)
    x2, y2 = _twist_name(image.first), _twist_name(image.second)
    lhs_series = fock.trace_gh(args.x, args.y, args.l, args.order)
    rhs_series = fock.trace_gh(x2, y2, args.l, args.order)
    samples = _parse_samples(args.samples) if args.samples else sl2.DEFAULT_SAMPLES

    def as_fn(series):
        return lambda tau: series.evaluate(EvalPoint(tau)).value

    report = sl2.transform_ratio(
        as_fn(lhs_series), as_fn(rhs_series), gamma, args.weight,
        samples=samples, tol=args.tol,
        label=f"trace({args.x},{args.y},l={args.l}) -> trace({x2},{y2}) "
              f"under ({gamma.a},{gamma.b};{gamma.c},{gamma.d})")
    print(json.dumps(report.to_json_dict()))
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "expand":
            return _cmd_expand(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_transform(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SupertraceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
