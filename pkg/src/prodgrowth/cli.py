"""Command-line driver: fit, predict, evaluate, lfp, synth.

Exit codes: 0 success, 1 input or parse error, 2 infeasible or degenerate computation.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from typing import Optional, Sequence, Tuple

from .calibrate import CalibrationError, calibrate
from .diagnostics import DegenerateError, best_lag, evaluation_window, lag_table, ols_fit
from .io import (
    InputError,
    read_annual_csv,
    read_calibration_spec,
    read_country_config,
    read_plot_column,
    write_annual_csv,
    write_fit_result,
    write_forecast_csv,
    write_plot_data,
)
from .model import ParamError, predict_from_gdp, productivity_from_lfp, simulate_lfp
from .series import AnnualSeries, SeriesError, growth_rate, moving_average
from .synth import synthetic_pair

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _year_range(text: str) -> Tuple[Optional[int], Optional[int]]:
    try:
        first, last = text.split(":")
        return (int(first) if first else None, int(last) if last else None)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected first:last, got {text!r}") from None


def _lag_range(text: str) -> Tuple[int, int]:
    lo, hi = _year_range(text)
    if lo is None or hi is None:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    return lo, hi


def _read_series(path) -> AnnualSeries:
    """Read ``year,value`` CSVs, or the predicted column of forecast / plot CSVs."""
    with open(path, encoding="utf-8-sig") as fh:
        header = fh.readline().strip().lower().split(",")
    if "predicted" in header and header[:1] == ["year"]:
        try:
            return read_plot_column(path, "predicted")
        except (ValueError, KeyError) as exc:
            raise InputError(f"{path}: {exc}") from None
    return read_annual_csv(path)


def _observed_growth(path, growth_input: bool) -> AnnualSeries:
    s = read_annual_csv(path)
    return s if growth_input else growth_rate(s)


def cmd_fit(args) -> int:
    gdp = read_annual_csv(args.gdp)
    observed = _observed_growth(args.productivity, args.growth_input)
    spec = read_calibration_spec(args.spec)
    if args.window is not None:
        spec = dataclasses.replace(spec, window=args.window)
    fit = calibrate(spec, gdp, observed)
    write_fit_result(fit, args.out)
    p = fit.params
    print(f"window      {fit.window[0]}-{fit.window[1]}")
    print(f"lag T       {p.lag_t}")
    print(f"a2          {p.a2:.6g}")
    print(f"n0          {p.n0:.6g} @ {p.base_year}")
    print(f"b           {p.b:.6g}")
    print(f"c           {p.c:.6g}")
    print(f"objective   {fit.objective:.6g}")
    print(f"R^2         {fit.r_squared:.4f}")
    return EXIT_OK


def cmd_predict(args) -> int:
    gdp = read_annual_csv(args.gdp)
    cfg = read_country_config(args.config)
    pred = predict_from_gdp(gdp, cfg.params)
    write_forecast_csv(pred, gdp.end_year, args.out)
    n_forecast = max(0, pred.end_year - gdp.end_year)
    print(f"predicted {pred.start_year}-{pred.end_year} ({n_forecast} forecast years)")
    if args.plot:
        if not args.productivity:
            raise InputError("--plot needs --productivity")
        observed = _observed_growth(args.productivity, args.growth_input)
        smoothed = moving_average(observed, cfg.params.smoothing_window, cfg.smoothing_mode)
        write_plot_data(smoothed, pred, args.plot)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    observed = _read_series(args.observed)
    if args.observed_levels:
        observed = growth_rate(observed)
    predicted = _read_series(args.predicted)
    if args.smooth and args.smooth > 1:
        observed = moving_average(observed, args.smooth)
        if args.smooth_both:
            predicted = moving_average(predicted, args.smooth)
    first, last = args.window or (None, None)
    if args.lag_scan is not None:
        lo, hi = args.lag_scan
        clipped = observed.window(first, last) if args.window else observed
        print("lag  n   R^2")
        for lag, rep in lag_table(clipped, predicted, lo, hi):
            print(f"{lag:3d}  {rep.n_points if rep else 0:3d} " + (f"{rep.r_squared:.4f}" if rep else "  n/a"))
        lag, r2 = best_lag(clipped, predicted, lo, hi)
        print(f"best lag {lag} (R^2 {r2:.4f})")
        return EXIT_OK
    lo, hi = evaluation_window(observed, predicted, first, last)
    rep = ols_fit(predicted.window(lo, hi), observed.window(lo, hi))
    print(rep.format())
    return EXIT_OK


def cmd_lfp(args) -> int:
    gdp = read_annual_csv(args.gdp)
    cfg = read_country_config(args.config)
    if cfg.lfp is None:
        raise InputError(f"{args.config}: config has no 'lfp' block")
    lfp = simulate_lfp(gdp, cfg.lfp)
    write_annual_csv(lfp, args.out)
    print(f"participation rate {lfp.start_year}-{lfp.end_year}")
    if args.productivity_out:
        if cfg.lfp_productivity is None:
            raise InputError(f"{args.config}: 'lfp' block needs b2 and c2 for --productivity-out")
        write_annual_csv(productivity_from_lfp(lfp, cfg.lfp_productivity), args.productivity_out)
    return EXIT_OK


def cmd_synth(args) -> int:
    cfg = read_country_config(args.params)
    if args.years < 2 or args.noise < 0 or args.eps_scale < 0 or args.g0 <= 0:
        raise InputError("need --years >= 2, --noise >= 0, --eps-scale >= 0, --g0 > 0")
    gdp, _, levels = synthetic_pair(cfg.params, args.years, args.seed, args.noise,
                                    g0=args.g0, eps_scale=args.eps_scale, p0=args.p0)
    write_annual_csv(gdp, args.out_gdp)
    write_annual_csv(levels, args.out_prod)
    print(f"gdp {gdp.start_year}-{gdp.end_year}, productivity {levels.start_year}-{levels.end_year}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prodgrowth", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fit", help="calibrate model parameters against observed productivity")
    p.add_argument("--gdp", required=True, help="GDP per capita CSV (year,value)")
    p.add_argument("--productivity", required=True, help="productivity level CSV (year,value)")
    p.add_argument("--spec", required=True, help="calibration spec JSON")
    p.add_argument("--out", required=True, help="fit result JSON")
    p.add_argument("--window", type=_year_range, help="evaluation years first:last (inclusive)")
    p.add_argument("--growth-input", action="store_true", help="productivity CSV already holds growth rates")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="predict productivity growth from GDP per capita")
    p.add_argument("--gdp", required=True)
    p.add_argument("--config", required=True, help="country config or fit result JSON")
    p.add_argument("--out", required=True, help="CSV year,predicted,forecast")
    p.add_argument("--productivity", help="observed productivity levels, for --plot")
    p.add_argument("--growth-input", action="store_true")
    p.add_argument("--plot", help="write year,observed,predicted plot data here")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="regress observed on predicted growth rates")
    p.add_argument("--observed", required=True, help="observed dP/P CSV (year,value)")
    p.add_argument("--predicted", required=True, help="predicted CSV (year,value or predict output)")
    p.add_argument("--window", type=_year_range)
    p.add_argument("--smooth", type=int, default=1, help="moving-average window for observed")
    p.add_argument("--smooth-both", action="store_true", help="smooth the predicted series too")
    p.add_argument("--lag-scan", type=_lag_range, help="scan shifts of predicted, lo:hi")
    p.add_argument("--observed-levels", action="store_true", help="observed CSV holds levels")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("lfp", help="simulate the labour force participation rate")
    p.add_argument("--gdp", required=True)
    p.add_argument("--config", required=True, help="country config with an 'lfp' block")
    p.add_argument("--out", required=True)
    p.add_argument("--productivity-out", help="also write dP/P implied by the participation rate")
    p.set_defaults(func=cmd_lfp)

    p = sub.add_parser("synth", help="generate a seeded synthetic GDP / productivity pair")
    p.add_argument("--params", required=True, help="country config JSON with generating parameters")
    p.add_argument("--years", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--noise", type=float, default=0.0, help="sd of observation noise on dP/P")
    p.add_argument("--eps-scale", type=float, default=0.02, help="sd of GDP trend deviations")
    p.add_argument("--g0", type=float, default=3000.0, help="GDP per capita in the base year")
    p.add_argument("--p0", type=float, default=10000.0, help="initial productivity level")
    p.add_argument("--out-gdp", required=True)
    p.add_argument("--out-prod", required=True)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, OSError, ParamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CalibrationError, DegenerateError, SeriesError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
