"""Command-line front end: generation, verification sweeps, data export.

Exit status contract: 0 when every check passes, 1 when a check fails,
2 on degenerate-parameter errors (including Geronimus degeneracy).
Identical configurations produce byte-identical report files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .errors import (DegenerateParameters, GeronimusDegenerate,
                     InsufficientMoments, IntegrabilityError, KrallM1Error,
                     NotPositiveDefinite, ResidualExceeded)
from .exact_core import (DEFAULT_PRECISION, LaurentPoly, format_rational,
                         parse_rational)
from . import matrix_op, minus_one, qjacobi
from .minus_one import MinusOneParams
from .qjacobi import QJacobiParams
from .report import CheckResult, VerificationReport

PRECISION_ENV = "KRALLM1_PRECISION"

COMMANDS = ("gen", "verify-q", "verify-m1", "moments", "gram", "limit-scan",
            "matrix-verify")


@dataclass
class RunConfig:
    """Validated invocation: command, parameter strings, bounds, output."""

    command: str
    params: dict
    n_max: int
    precision: int
    tol: Fraction | None
    eps_list: list
    output: str | None
    format: str
    family: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.n_max < 0:
            raise ValueError("n-max must be >= 0")
        if self.precision < 30:
            raise ValueError("precision must be >= 30 digits")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        for key, text in self.params.items():
            parse_rational(text)  # raises on malformed input


def parse_tolerance(text: str) -> Fraction:
    """Exact tolerance from a decimal string such as "1e-40"."""
    return Fraction(Decimal(text))


def _rational_arg(name):
    def convert(text):
        try:
            parse_rational(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise argparse.ArgumentTypeError(
                f"{name} expects an integer or p/q rational: {exc}")
        return text
    return convert


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krallm1",
        description="Generate and verify the -1 Krall-Jacobi polynomial "
                    "pipeline in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, beta=False, qside=False, tol_default=None):
        if beta:
            p.add_argument("--beta", type=_rational_arg("--beta"),
                           required=True, help="limit parameter beta (p/q)")
            p.add_argument("--M", type=_rational_arg("--M"), required=True,
                           help="mass parameter M (p/q)")
        if qside:
            p.add_argument("--q", type=_rational_arg("--q"), required=True,
                           help="base q (p/q, not 0/1/-1)")
            p.add_argument("--b", type=_rational_arg("--b"), required=True,
                           help="parameter b (p/q, nonzero)")
            p.add_argument("--j", type=int, default=2,
                           help="exponent j in a = q^j (default 2)")
            p.add_argument("--M", type=_rational_arg("--M"), required=True,
                           help="mass parameter M (p/q)")
        p.add_argument("--n-max", type=int, default=8, dest="n_max",
                       help="largest degree exercised (default 8)")
        p.add_argument("--precision", type=int, default=None,
                       help=f"working digits (default {DEFAULT_PRECISION}, "
                            f"override with ${PRECISION_ENV})")
        p.add_argument("--tol", type=str, default=tol_default,
                       help="tolerance as a decimal string"
                            + (f" (default {tol_default})" if tol_default
                               else ""))
        p.add_argument("--out", type=str, default=None,
                       help="output file (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("gen", help="emit polynomial coefficient tables")
    p.add_argument("--family", choices=("q", "m1"), required=True)
    p.add_argument("--beta", type=_rational_arg("--beta"))
    p.add_argument("--q", type=_rational_arg("--q"))
    p.add_argument("--b", type=_rational_arg("--b"))
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--M", type=_rational_arg("--M"), required=True)
    p.add_argument("--n-max", type=int, default=8, dest="n_max")
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--tol", type=str, default=None)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify-q",
                       help="q-side eigen and reconstruction agreement")
    add_common(p, qside=True)

    p = sub.add_parser("verify-m1",
                       help="limit-family operator, eigen, orthogonality and "
                            "explicit-solution suites")
    add_common(p, beta=True)

    p = sub.add_parser("moments", help="exact moment table")
    add_common(p, beta=True)

    p = sub.add_parser("gram", help="exact Gram matrix and Hankel determinants")
    add_common(p, beta=True)

    p = sub.add_parser("limit-scan",
                       help="epsilon scan of the q side against the limit "
                            "coefficients")
    add_common(p, beta=True, tol_default="1e-2")
    p.add_argument("--eps-list", type=str, default="1e-2,1e-3,1e-4",
                   dest="eps_list",
                   help="comma-separated decreasing eps values")

    p = sub.add_parser("matrix-verify",
                       help="five-term and matrix three-term recurrence checks")
    p.add_argument("--beta", type=_rational_arg("--beta"), default=None)
    p.add_argument("--M", type=_rational_arg("--M"), default=None)
    p.add_argument("--n-max", type=int, default=4, dest="n_max")
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--tol", type=str, default="1e-40")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    # Bare negative rationals ("-1/4") must parse as option values, not
    # as option strings.
    negative_value = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")
    parser._negative_number_matcher = negative_value
    for child in sub.choices.values():
        child._negative_number_matcher = negative_value
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {}
    for key in ("beta", "M", "q", "b"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    precision = args.precision
    if precision is None:
        precision = int(os.environ.get(PRECISION_ENV, DEFAULT_PRECISION))
    eps_list = []
    if getattr(args, "eps_list", None):
        eps_list = [e.strip() for e in args.eps_list.split(",") if e.strip()]
    config = RunConfig(
        command=args.command,
        params=params,
        n_max=args.n_max,
        precision=precision,
        tol=parse_tolerance(args.tol) if args.tol else None,
        eps_list=eps_list,
        output=args.out,
        format=args.format,
        family=getattr(args, "family", None))
    if getattr(args, "j", None) is not None:
        config.params["j"] = str(args.j)
    return config


def _m1_params(config: RunConfig) -> MinusOneParams:
    return MinusOneParams(beta=parse_rational(config.params["beta"]),
                          M=parse_rational(config.params["M"]))


def _q_params(config: RunConfig) -> QJacobiParams:
    return QJacobiParams(q=parse_rational(config.params["q"]),
                         b=parse_rational(config.params["b"]),
                         j=int(config.params.get("j", "2")),
                         M=parse_rational(config.params["M"]))


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def verify_m1_suite(params: MinusOneParams, n_max: int) -> VerificationReport:
    """Dual-operator, eigen, orthogonality and explicit-solution checks."""
    report = VerificationReport()
    point = params.as_dict()
    for n in range(n_max + 1):
        xn = LaurentPoly.monomial(n)
        lhs = minus_one.apply_L0_monomial(xn, params)
        rhs = minus_one.apply_L0_operator(xn, params)
        report.add(CheckResult(
            check="dual-operator", params=point, n=n,
            status="pass" if lhs == rhs else "fail",
            lhs=str(lhs), rhs=str(rhs),
            residual="0" if lhs == rhs else str(lhs - rhs)))
    for n in range(n_max + 1):
        report.merge(minus_one.verify_eigen_m1(n, params))
    family = minus_one.gen_poly_family(n_max, params)
    momseq = minus_one.moments(2 * n_max, params)
    running_norm = momseq.mu(0)
    for n in range(n_max + 1):
        offenders = [m for m in range(n)
                     if minus_one.inner_product(family[n], family[m],
                                                momseq) != 0]
        report.add(CheckResult(
            check="orthogonality", params=point, n=n,
            status="pass" if not offenders else "fail",
            lhs="0" if not offenders else "nonzero",
            rhs="0",
            residual="" if not offenders else f"pairs {offenders}"))
        if n >= 1:
            running_norm *= minus_one.transformed_recurrence_m1(n, params)[0]
        norm = minus_one.inner_product(family[n], family[n], momseq)
        report.add(CheckResult(
            check="norm-identity", params=point, n=n,
            status="pass" if norm == running_norm else "fail",
            lhs=format_rational(norm), rhs=format_rational(running_norm),
            residual=format_rational(norm - running_norm)))
    b0 = minus_one.transformed_recurrence_m1(0, params)[1]
    b0_closed = minus_one.btilde0_closed(params)
    report.add(CheckResult(
        check="btilde0-closed-form", params=point, n=0,
        status="pass" if b0 == b0_closed else "fail",
        lhs=format_rational(b0), rhs=format_rational(b0_closed),
        residual=format_rational(b0 - b0_closed)))
    for n in (2, 3):
        if n > n_max:
            continue
        expected = minus_one.explicit_solution(n, params)
        got = family[n]
        report.add(CheckResult(
            check="explicit-solution", params=point, n=n,
            status="pass" if got == expected else "fail",
            lhs=str(got), rhs=str(expected),
            residual="0" if got == expected else str(got - expected)))
    for n in (1, 2, 3):
        if n > n_max:
            continue
        lam = minus_one.lambda_tilde(n, params)
        expected = minus_one.explicit_eigenvalue(n, params)
        report.add(CheckResult(
            check="explicit-eigenvalue", params=point, n=n,
            status="pass" if lam == expected else "fail",
            lhs=format_rational(lam), rhs=format_rational(expected),
            residual=format_rational(lam - expected)))
    return report


def verify_q_suite(params: QJacobiParams, n_max: int) -> VerificationReport:
    """Reconstruction agreement, eigen identity and recurrence replays."""
    report = VerificationReport()
    point = params.as_dict()
    paper = qjacobi.rep_coeff_paper(params, n_max)
    recon = qjacobi.rep_coeff_reconstruct(params, n_max)
    for n in range(n_max + 1):
        mismatches = []
        for s in range(n + 1):
            expected = paper.value(n, s)
            if expected is qjacobi.ABSENT:
                continue
            got = recon.value(n, s)
            if got != expected:
                mismatches.append((s, format_rational(expected),
                                   format_rational(got)))
        report.add(CheckResult(
            check="representation-agreement", params=point, n=n,
            status="pass" if not mismatches else "fail",
            lhs="" if not mismatches else str(mismatches),
            rhs="", residual=""))
    family = qjacobi.geronimus_family(n_max, params)
    for n in range(n_max + 1):
        lhs = qjacobi.apply_Lq(family[n], recon)
        rhs = qjacobi.lambda_q(n, params) * family[n]
        report.add(CheckResult(
            check="eigen-q", params=point, n=n,
            status="pass" if lhs == rhs else "fail",
            lhs=str(lhs), rhs=str(rhs),
            residual="0" if lhs == rhs else str(lhs - rhs)))
    x = LaurentPoly.x()
    for n in range(1, n_max):
        un, bn = qjacobi.transformed_recurrence(n, params)
        lhs = family[n + 1] + bn * family[n] + un * family[n - 1]
        rhs = x * family[n]
        report.add(CheckResult(
            check="transformed-recurrence", params=point, n=n,
            status="pass" if lhs == rhs else "fail",
            lhs=str(lhs), rhs=str(rhs),
            residual="0" if lhs == rhs else str(lhs - rhs)))
    # The Geronimus data obeys the same three-term recurrence as the
    # polynomials (with Phi_1 = -b_0 Phi_0 - 1 under the unit weight),
    # which checks the second-kind closed form against the recurrence.
    phis = [qjacobi.phi(n, params) for n in range(n_max + 1)]
    b0 = qjacobi.lqj_recurrence(0, params)[1]
    seeded = phis[1] == -b0 * phis[0] - 1
    report.add(CheckResult(
        check="second-kind-seed", params=point, n=1,
        status="pass" if seeded else "fail",
        lhs=format_rational(phis[1]),
        rhs=format_rational(-b0 * phis[0] - 1),
        residual=""))
    for n in range(1, n_max):
        un, bn = qjacobi.lqj_recurrence(n, params)
        ok = phis[n + 1] == -bn * phis[n] - un * phis[n - 1]
        report.add(CheckResult(
            check="second-kind-recurrence", params=point, n=n,
            status="pass" if ok else "fail",
            lhs=format_rational(phis[n + 1]),
            rhs=format_rational(-bn * phis[n] - un * phis[n - 1]),
            residual=""))
    return report


def matrix_suite(params: MinusOneParams, n_max: int, tol,
                 precision: int) -> VerificationReport:
    """Five-term and matrix three-term residuals plus structural checks."""
    report = VerificationReport()
    point = params.as_dict()
    for n in range(n_max + 1):
        report.merge(matrix_op.five_term_check(n, params, tol=tol,
                                               precision=precision))
    for n in range(n_max + 1):
        e_n = matrix_op.e_matrix(n, params, precision)
        d_n = matrix_op.d_matrix(n, params, precision)
        structural = e_n[0][1] == e_n[1][0] and d_n[0][1] == 0
        report.add(CheckResult(
            check="matrix-structure", params=point, n=n,
            status="pass" if structural else "fail",
            lhs=None, rhs=None, residual=None))
        report.merge(matrix_op.matrix_recurrence_check(n, params, tol=tol,
                                                       precision=precision))
    return report


def limit_scan_suite(params: MinusOneParams, n_max: int, eps_list,
                     precision: int, tol) -> VerificationReport:
    report = VerificationReport()
    for n in range(n_max + 1):
        for s in range(4):
            report.merge(minus_one.epsilon_scan(
                n, s, params, eps_list, precision=precision, tol=tol))
    return report


# ---------------------------------------------------------------------------
# Table builders
# ---------------------------------------------------------------------------

def _poly_table(family, params_dict, family_name):
    rows = []
    for n, poly in enumerate(family):
        for d in sorted(poly.coeffs, reverse=True):
            rows.append((n, d, format_rational(poly.coeffs[d])))
    return {"family": family_name, "params": params_dict, "rows": rows}


def _moment_table(params: MinusOneParams, n_max: int):
    seq = minus_one.moments(n_max, params)
    return {"params": params.as_dict(),
            "moments": [format_rational(v) for v in seq.values]}


def _gram_table(params: MinusOneParams, n_max: int):
    gram = minus_one.gram_matrix(n_max, params)
    hankel = minus_one.hankel_dets(n_max, params)
    return {"params": params.as_dict(),
            "gram": [[format_rational(v) for v in row] for row in gram],
            "hankel": [format_rational(v) for v in hankel],
            "positive_definite": all(v > 0 for v in hankel)}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _render_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _render_csv_rows(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _report_csv(report: VerificationReport) -> str:
    rows = []
    for r in report.results:
        point = ";".join(f"{k}={v}" for k, v in sorted(r.params.items()))
        rows.append([r.check, point, r.n, r.status, r.lhs or "", r.rhs or "",
                     r.residual or ""])
    return _render_csv_rows(
        ["check", "params", "n", "status", "lhs", "rhs", "residual"], rows)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def run(config: RunConfig) -> int:
    """Execute one command; returns the exit status."""
    try:
        return _dispatch(config)
    except (GeronimusDegenerate, DegenerateParameters, NotPositiveDefinite,
            IntegrabilityError, InsufficientMoments) as exc:
        payload = {"status": "degenerate",
                   "error": {"type": type(exc).__name__,
                             "message": str(exc)}}
        if isinstance(exc, GeronimusDegenerate):
            payload["error"]["n"] = exc.n
        if isinstance(exc, NotPositiveDefinite):
            payload["error"]["index"] = exc.index
        _emit(_render_json(payload), config.output)
        return 2
    except ResidualExceeded as exc:
        payload = {"status": "fail",
                   "error": {"type": "ResidualExceeded",
                             "message": str(exc),
                             "residual": exc.residual,
                             "location": exc.location}}
        _emit(_render_json(payload), config.output)
        return 1
    except KrallM1Error as exc:
        payload = {"status": "fail",
                   "error": {"type": type(exc).__name__,
                             "message": str(exc)}}
        _emit(_render_json(payload), config.output)
        return 1


def _dispatch(config: RunConfig) -> int:
    if config.command == "gen":
        need = ("beta", "M") if config.family == "m1" else ("q", "b", "M")
        missing = [k for k in need if k not in config.params]
        if missing:
            flags = " ".join(f"--{k}" for k in missing)
            _emit(_render_json({
                "status": "error",
                "error": {"type": "ConfigError",
                          "message": f"gen --family {config.family} "
                                     f"requires {flags}"}}), config.output)
            return 2
        if config.family == "m1":
            params = _m1_params(config)
            table = _poly_table(
                minus_one.gen_poly_family(config.n_max, params),
                params.as_dict(), "m1")
        else:
            params = _q_params(config)
            table = _poly_table(
                qjacobi.geronimus_family(config.n_max, params),
                params.as_dict(), "q")
        if config.format == "csv":
            _emit(_render_csv_rows(["n", "degree", "coefficient"],
                                   table["rows"]), config.output)
        else:
            table["rows"] = [
                {"n": n, "degree": d, "coefficient": c}
                for (n, d, c) in table["rows"]]
            _emit(_render_json(table), config.output)
        return 0

    if config.command == "moments":
        table = _moment_table(_m1_params(config), config.n_max)
        if config.format == "csv":
            rows = list(enumerate(table["moments"]))
            _emit(_render_csv_rows(["n", "value"], rows), config.output)
        else:
            _emit(_render_json(table), config.output)
        return 0

    if config.command == "gram":
        table = _gram_table(_m1_params(config), config.n_max)
        if config.format == "csv":
            rows = []
            for i, row in enumerate(table["gram"]):
                for j, v in enumerate(row):
                    rows.append(["gram", i, j, v])
            for m, v in enumerate(table["hankel"]):
                rows.append(["hankel", m, "", v])
            _emit(_render_csv_rows(["kind", "i", "j", "value"], rows),
                  config.output)
        else:
            _emit(_render_json(table), config.output)
        return 0

    if config.command == "verify-m1":
        report = verify_m1_suite(_m1_params(config), config.n_max)
    elif config.command == "verify-q":
        report = verify_q_suite(_q_params(config), config.n_max)
    elif config.command == "limit-scan":
        report = limit_scan_suite(_m1_params(config), config.n_max,
                                  config.eps_list, config.precision,
                                  config.tol or Fraction(1, 100))
    elif config.command == "matrix-verify":
        if "beta" in config.params and "M" in config.params:
            params = _m1_params(config)
        else:
            params = matrix_op.find_positive_definite_point(
                2 * config.n_max + 4)
        report = matrix_suite(params, config.n_max, config.tol,
                              config.precision)
    else:  # pragma: no cover - RunConfig already validated the command
        raise ValueError(config.command)

    if config.format == "csv":
        _emit(_report_csv(report), config.output)
    else:
        _emit(_render_json(report.to_json_obj()), config.output)
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except (ValueError, ZeroDivisionError) as exc:
        parser.error(str(exc))
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
