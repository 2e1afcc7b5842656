"""Score the shipped country configs against Total Economy Database extracts.

The Conference Board data cannot be redistributed. Export, per country, real GDP
per capita (1990 GK$) and GDP per person employed as ``year,value`` CSVs named
``<country>_gdp.csv`` and ``<country>_productivity.csv`` into one directory, then:

    python scripts/reproduce_paper.py --data-dir ted/ --out-dir plots/

For every country with data this prints R^2 over the configured window, the
best lag in 0..8 and the reported R^2 where one exists, and writes
``<country>_plot.csv`` (year,observed,predicted).
"""

import argparse
from pathlib import Path

from prodgrowth.diagnostics import DegenerateError, best_lag, evaluation_window, ols_fit
from prodgrowth.io import COUNTRIES, load_shipped_config, read_annual_csv, write_plot_data
from prodgrowth.model import predict_from_gdp
from prodgrowth.series import growth_rate, moving_average, shift

REPORTED_R2 = {"turkey": 0.51, "spain": 0.90, "belgium": 0.78, "austria": 0.80}


def score(country, data_dir, out_dir=None):
    cfg = load_shipped_config(country)
    gdp = read_annual_csv(data_dir / f"{country}_gdp.csv")
    observed = moving_average(growth_rate(read_annual_csv(data_dir / f"{country}_productivity.csv")),
                              cfg.params.smoothing_window, cfg.smoothing_mode)
    predicted = predict_from_gdp(gdp, cfg.params)
    lo, hi = evaluation_window(observed, predicted, *cfg.window)
    rep = ols_fit(predicted.window(lo, hi), observed.window(lo, hi))
    unlagged = shift(predicted, -cfg.params.lag_t)
    lag, lag_r2 = best_lag(observed.window(lo, hi), unlagged, 0, 8)
    if out_dir is not None:
        write_plot_data(observed, predicted, out_dir / f"{country}_plot.csv")
    return rep, lag, lag_r2, predicted.end_year


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data-dir", type=Path, required=True)
    ap.add_argument("--out-dir", type=Path)
    args = ap.parse_args()
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
    print(f"{'country':<12} {'window':<10} {'R2':>6} {'paper':>6} {'T':>2} {'best T':>6} {'R2@best':>7} {'pred to':>7}")
    for country in COUNTRIES:
        if not (args.data_dir / f"{country}_gdp.csv").exists():
            print(f"{country:<12} (no data)")
            continue
        try:
            rep, lag, lag_r2, end = score(country, args.data_dir, args.out_dir)
        except DegenerateError as exc:
            print(f"{country:<12} {exc}")
            continue
        paper = REPORTED_R2.get(country)
        print(f"{country:<12} {rep.window[0]}-{rep.window[1]} {rep.r_squared:6.3f} "
              f"{paper if paper is not None else '':>6} {load_shipped_config(country).params.lag_t:2d} "
              f"{lag:6d} {lag_r2:7.3f} {end:7d}")


if __name__ == "__main__":
    main()
