"""Command-line interface: analyze (symbolic) and verify (numeric oracles).

``analyze`` is purely symbolic and deterministic; ``verify`` runs the
selected oracle suites against the symbolic predictions, writing CSV
artifacts (and figures) beside the JSON report when an output directory is
given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import report as rpt
from .asymptotics import (decay_pair, envelope_value, fourier_decay_prediction,
                          slice_expansion)
from .errors import (BudgetExceededError, ConstantTermError,
                     DegenerateQuadrantError, DivergentError, EmptySumError,
                     ExpressionError, NewtonDecayError, PreconditionError)
from .newton import build_polygon, newton_distance
from .oracle import (CutoffSpec, DyadicRectangle, check_comparability,
                     check_majorant_equivalence, default_thread_count,
                     fit_power_log, oscillatory_transform, sharpness_probe,
                     slice_integral)
from .terms import QUADRANTS, TermSum, parse_terms

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INAPPLICABLE = 3
EXIT_CHECK_FAILED = 4
EXIT_BUDGET = 5

SUITES = ("slice", "comparability", "equivalence", "oscillatory",
          "sharpness", "all")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newton-decay",
        description="Newton-polygon decay analysis of |f|^-rho and its "
                    "oscillatory transform, with numeric verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-f", "--function", help="expression, e.g. 'x1^3 + x2^2'")
        p.add_argument("--input", help="JSON input file with term records")
        p.add_argument("--rho", action="append", default=[],
                       help="exponent rho as a rational, repeatable")
        p.add_argument("--out", help="output directory for artifacts")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--no-plots", action="store_true",
                       help="do not render figures next to artifacts")

    p_an = sub.add_parser("analyze", help="symbolic analysis report")
    common(p_an)

    p_ve = sub.add_parser("verify", help="run numeric oracle suites")
    common(p_ve)
    p_ve.add_argument("--suite", choices=SUITES, default="all")
    p_ve.add_argument("--tol", type=float, default=None,
                      help="override quadrature tolerance")
    p_ve.add_argument("--lambda-max", type=float, default=512.0)
    p_ve.add_argument("--radius", type=float, default=0.25)
    p_ve.add_argument("--jmax", type=int, default=6,
                      help="dyadic depth for comparability rectangles")
    return parser


def _load_terms(args) -> tuple[TermSum, str | None]:
    if args.function and args.input:
        raise ExpressionError("give either --function or --input, not both")
    if args.function:
        f, expression = parse_terms(args.function), args.function
    elif args.input:
        with open(args.input) as fh:
            data = json.load(fh)
        if isinstance(data, dict) and "expression" in data and "terms" not in data:
            f, expression = parse_terms(data["expression"]), data["expression"]
        else:
            f, expression = rpt.terms_from_records(data), None
    else:
        raise ExpressionError("no input: use --function or --input")
    for q in QUADRANTS:        # reject sums vanishing on an open quadrant
        from .terms import restrict_quadrant

        restrict_quadrant(f, q)
    return f, expression


def _parse_rhos(args) -> list[Fraction]:
    try:
        return [Fraction(s) for s in args.rho]
    except (ValueError, ZeroDivisionError) as exc:
        raise ExpressionError(f"bad rho value: {exc}")


def _emit(args, name: str, text: str) -> None:
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / name).write_text(text)
    else:
        sys.stdout.write(text)


def _rho_table_csv(report: dict) -> str:
    import io

    buf = io.StringIO()
    cols = ["rho", "eps1", "d1", "eps2", "d2", "divergent", "applicable",
            "bound"]
    buf.write(",".join(cols) + "\n")
    for row in report["rho_table"]:
        buf.write(",".join("" if row[c] is None else str(row[c])
                           for c in cols) + "\n")
    return buf.getvalue()


def cmd_analyze(args) -> int:
    f, expression = _load_terms(args)
    rhos = _parse_rhos(args)
    if not rhos:
        d = newton_distance(build_polygon(f))
        rhos = [1 / (2 * d)]
    report = rpt.analysis_report(f, expression, rhos)
    if args.format == "csv":
        _emit(args, "analysis.csv", _rho_table_csv(report))
    else:
        _emit(args, "analysis.json", rpt.to_json(report))
    if args.out:
        sys.stdout.write(rpt.to_json(report))
        if not args.no_plots:
            from . import plots

            polygon = build_polygon(f)
            plots.save_polygon_figure(polygon, newton_distance(polygon),
                                      Path(args.out) / "newton_polygon.png")
    if all(not row["applicable"] for row in report["rho_table"]):
        return EXIT_INAPPLICABLE
    return EXIT_OK


class _Check:
    def __init__(self, name: str):
        self.name = name
        self.status = "pass"
        self.measured = None
        self.expected = None
        self.tolerance = None
        self.detail = ""
        self._t0 = time.perf_counter()

    def finish(self, status: str, measured=None, expected=None,
               tolerance=None, detail: str = "") -> dict:
        self.status = status
        return {
            "name": self.name,
            "status": status,
            "measured": measured,
            "expected": expected,
            "tolerance": tolerance,
            "detail": detail,
            "runtime_s": round(time.perf_counter() - self._t0, 3),
        }


def _suite_slice(f, rho: Fraction, tol: float | None, artifacts) -> dict:
    check = _Check(f"slice[rho={rho}]")
    polygon = build_polygon(f)
    try:
        pair = decay_pair(slice_expansion(polygon, rho))
    except DivergentError as exc:
        return check.finish("skipped", detail=f"divergent: {exc}")
    # deeper window than the shallowest usable one: the plain log-log fit
    # carries a finite-window bias from subleading terms, which decays as
    # the window moves toward r = 0
    rs = [2.0 ** -e for e in range(10, 23)]
    qtol = tol if tol is not None else 1e-9
    samples = [(r, slice_integral(polygon, float(rho), r, tol=qtol)) for r in rs]
    fit = fit_power_log(samples)
    artifacts.append((f"slice_rho_{rho.numerator}_{rho.denominator}.csv",
                      ["r", "value"], samples))
    artifacts.append(("figure", f"slice_rho_{rho.numerator}_{rho.denominator}.png",
                      "loglog", samples, -fit.slope, -float(pair.epsilon),
                      "r (slice abscissa)", f"slice integral, rho={rho}"))
    ok = (abs(fit.slope - float(pair.epsilon)) <= 0.02
          and fit.log_flag == (pair.log_power == 1))
    return check.finish(
        "pass" if ok else "fail",
        measured={"slope": fit.slope, "log_flag": fit.log_flag,
                  "residual": fit.residual},
        expected={"eps": rpt.frac(pair.epsilon), "d": pair.log_power},
        tolerance=0.02)


def _suite_comparability(f, rho: Fraction, tol: float | None, jmax: int,
                         artifacts) -> dict:
    check = _Check(f"comparability[rho={rho}]")
    rects = [DyadicRectangle(j, k, QUADRANTS[(j + k) % 4])
             for j in range(1, jmax + 1) for k in range(1, jmax + 1)]
    try:
        report = check_comparability(f, float(rho), rects,
                                     tol=tol if tol is not None else 1e-5,
                                     threads=default_thread_count())
    except PreconditionError as exc:
        return check.finish("skipped", detail=str(exc))
    rows = [(r.j, r.k, str(r.quadrant), r.ratio) for r in report.rows]
    artifacts.append((f"ratios_rho_{rho.numerator}_{rho.denominator}.csv",
                      ["j", "k", "quadrant", "ratio"], rows))
    artifacts.append(("figure",
                      f"ratios_rho_{rho.numerator}_{rho.denominator}.png",
                      "heatmap", report.rows))
    return check.finish(
        "pass" if report.passed else "fail",
        measured={"ratio_min": report.ratio_min, "ratio_max": report.ratio_max,
                  "trend_slope": report.trend_slope},
        expected={"band": report.band, "trend_cap": report.trend_cap},
        tolerance=report.band)


def _suite_equivalence(f, seed: int, artifacts) -> dict:
    check = _Check("equivalence")
    try:
        report = check_majorant_equivalence(f, seed=seed)
    except PreconditionError as exc:
        return check.finish("skipped", detail=str(exc))
    artifacts.append(("equivalence.csv", ["scale", "min_ratio"],
                      list(report.per_scale_min)))
    artifacts.append(("figure", "equivalence.png", "scale_min",
                      report.per_scale_min, report.coeff_abs_sum))
    return check.finish(
        "pass" if report.passed else "fail",
        measured={"ratio_min": report.ratio_min, "ratio_max": report.ratio_max,
                  "min_trend_slope": report.min_trend_slope},
        expected={"max_cap": report.coeff_abs_sum, "min_trend": ">= -0.05"})


def _suite_oscillatory(f, rho: Fraction, tol: float | None,
                       lambda_max: float, radius: float, artifacts) -> dict:
    check = _Check(f"oscillatory[rho={rho}]")
    pred = fourier_decay_prediction(f, rho)
    if not pred.applicable:
        return check.finish("skipped", detail="; ".join(pred.reasons))
    phi = CutoffSpec(radius=radius)
    qtol = tol if tol is not None else 1e-5
    lams = []
    lam = 16.0
    while lam <= lambda_max:
        lams.append(lam)
        lam *= 2
    polygon = build_polygon(f)
    rows = []
    samples = []
    for lam in lams:
        val = oscillatory_transform(f, float(rho), phi, (lam, 0.0), tol=qtol)
        env = envelope_value(polygon, rho, min(1.0, 1.0 / lam), 1.0)
        rows.append((lam, 0.0, val.real, val.imag, abs(val), env))
        samples.append((lam, abs(val)))
    fit = fit_power_log([(1.0 / lam, v) for lam, v in samples])
    artifacts.append((f"osc_rho_{rho.numerator}_{rho.denominator}.csv",
                      ["lambda1", "lambda2", "re", "im", "abs",
                       "predicted_envelope"], rows))
    artifacts.append(("figure", f"osc_rho_{rho.numerator}_{rho.denominator}.png",
                      "loglog", samples, fit.slope,
                      float(pred.pair1.epsilon) - 1.0,
                      "lambda1", f"|F(lambda1, 0)|, rho={rho}"))
    expected = float(pred.pair1.epsilon) - 1.0
    ok = abs(fit.slope - expected) <= 0.15
    return check.finish(
        "pass" if ok else "fail",
        measured={"slope": fit.slope, "residual": fit.residual},
        expected={"slope": expected}, tolerance=0.15)


def _suite_sharpness(f, rho: Fraction, tol: float | None, lambda_max: float,
                     radius: float, artifacts) -> dict:
    check = _Check(f"sharpness[rho={rho}]")
    probe = sharpness_probe(f, float(rho), axis=1, lam_max=max(lambda_max, 1024.0),
                            phi=CutoffSpec(radius=radius),
                            tol=tol if tol is not None else 1e-5)
    if not probe.applicable:
        return check.finish("skipped", detail=probe.reason)
    rows = list(zip(probe.band_lambdas, probe.band_maxima))
    artifacts.append((f"sharpness_rho_{rho.numerator}_{rho.denominator}.csv",
                      ["band_lambda", "band_max"], rows))
    artifacts.append(("figure",
                      f"sharpness_rho_{rho.numerator}_{rho.denominator}.png",
                      "loglog", rows, probe.fit.slope, probe.predicted_slope,
                      "lambda band center", f"band maxima of |F|, rho={rho}"))
    return check.finish(
        "pass" if not probe.violated else "fail",
        measured={"band_max_slope": probe.fit.slope},
        expected={"at_least": probe.predicted_slope - probe.margin},
        tolerance=probe.margin)


def _write_artifacts(args, artifacts) -> None:
    if not args.out:
        return
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for art in artifacts:
        if art[0] == "figure":
            if args.no_plots:
                continue
            from . import plots

            kind = art[2]
            path = outdir / art[1]
            if kind == "loglog":
                _, _, _, samples, slope, predicted, xlabel, title = art
                mid = samples[len(samples) // 2]
                plots.save_loglog_fit(samples, slope, mid, path, xlabel,
                                      title, extra_slope=predicted,
                                      extra_label=f"predicted {predicted:.3f}")
            elif kind == "heatmap":
                plots.save_ratio_heatmap(art[3], path)
            elif kind == "scale_min":
                plots.save_scale_minima(art[3], art[4], path)
        else:
            name, header, rows = art
            rpt.write_csv(outdir / name, header, rows)


def cmd_verify(args) -> int:
    f, expression = _load_terms(args)
    rhos = _parse_rhos(args)
    if not rhos:
        raise ExpressionError("verify needs at least one --rho")
    suites = [args.suite] if args.suite != "all" else \
        ["slice", "comparability", "equivalence", "oscillatory", "sharpness"]
    checks: list[dict] = []
    artifacts: list = []
    for rho in rhos:
        if "slice" in suites:
            checks.append(_suite_slice(f, rho, args.tol, artifacts))
        if "comparability" in suites:
            checks.append(_suite_comparability(f, rho, args.tol, args.jmax,
                                               artifacts))
        if "oscillatory" in suites:
            checks.append(_suite_oscillatory(f, rho, args.tol,
                                             args.lambda_max, args.radius,
                                             artifacts))
        if "sharpness" in suites:
            checks.append(_suite_sharpness(f, rho, args.tol, args.lambda_max,
                                           args.radius, artifacts))
    if "equivalence" in suites:
        checks.append(_suite_equivalence(f, args.seed, artifacts))
    report = {
        "schema": rpt.SCHEMA,
        "mode": "verify",
        "input": {"expression": expression, "terms": rpt.term_records(f)},
        "checks": checks,
    }
    if args.format == "csv":
        import io

        buf = io.StringIO()
        buf.write("name,status,runtime_s,detail\n")
        for c in checks:
            buf.write(f"{c['name']},{c['status']},{c['runtime_s']},"
                      f"\"{c['detail']}\"\n")
        _emit(args, "verification.csv", buf.getvalue())
    else:
        _emit(args, "verification.json", rpt.to_json(report))
    if args.out:
        sys.stdout.write(rpt.to_json(report))
    _write_artifacts(args, artifacts)
    for check in checks:
        line = f"[{check['status'].upper():7s}] {check['name']}"
        if check["detail"]:
            line += f"  ({check['detail']})"
        print(line, file=sys.stderr)
    if any(c["status"] == "fail" for c in checks):
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        return cmd_verify(args)
    except (ExpressionError, ConstantTermError, EmptySumError,
            DegenerateQuadrantError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NewtonDecayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
