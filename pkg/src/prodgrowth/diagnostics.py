"""Regression and lag diagnostics between observed and predicted growth rates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .series import AnnualSeries, SeriesError, align, overlap, shift

MIN_POINTS = 3


class DegenerateError(ValueError):
    """Raised when a regression is not defined (zero variance, too few points)."""


@dataclass(frozen=True)
class RegressionReport:
    slope: float
    intercept: float
    r_squared: float
    n_points: int
    window: Tuple[int, int]

    def format(self) -> str:
        return (
            f"window      {self.window[0]}-{self.window[1]} ({self.n_points} points)\n"
            f"slope       {self.slope:.6g}\n"
            f"intercept   {self.intercept:.6g}\n"
            f"R^2         {self.r_squared:.4f}"
        )


def _is_constant(v: np.ndarray, ss: float) -> bool:
    # mean-centering a constant leaves rounding residue of order eps * |v|
    return np.ptp(v) == 0.0 or ss <= len(v) * (4 * np.finfo(float).eps * np.max(np.abs(v))) ** 2


def ols_fit(x: AnnualSeries, y: AnnualSeries) -> RegressionReport:
    """Regress ``y`` on ``x`` over their common years.

    R^2 is the squared Pearson correlation. A constant ``y`` with a varying
    ``x`` gives slope 0 and R^2 = 0.
    """
    try:
        xa, ya = align(x, y)
    except SeriesError as exc:
        raise DegenerateError(str(exc)) from None
    n = len(xa)
    if n < MIN_POINTS:
        raise DegenerateError(f"need at least {MIN_POINTS} overlapping years, got {n}")
    xv, yv = xa.values, ya.values
    dx = xv - xv.mean()
    dy = yv - yv.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    sxy = float(dx @ dy)
    if _is_constant(xv, sxx):
        raise DegenerateError("regressor has zero variance")
    if _is_constant(yv, syy):
        return RegressionReport(0.0, float(yv.mean()), 0.0, n, (xa.start_year, xa.end_year))
    slope = sxy / sxx
    intercept = float(yv.mean() - slope * xv.mean())
    r2 = min(1.0, sxy * sxy / (sxx * syy))
    return RegressionReport(slope, intercept, r2, n, (xa.start_year, xa.end_year))


def best_lag(
    observed: AnnualSeries, predicted_unlagged: AnnualSeries, lag_min: int, lag_max: int
) -> Tuple[int, float]:
    """Integer lag in [lag_min, lag_max] maximising R^2 of observed vs shifted prediction.

    Lags with too little overlap or a degenerate regression are skipped.
    Ties go to the smaller lag.
    """
    if lag_min > lag_max:
        raise ValueError(f"lag_min {lag_min} > lag_max {lag_max}")
    best = None
    for lag in range(lag_min, lag_max + 1):
        try:
            rep = ols_fit(shift(predicted_unlagged, lag), observed)
        except DegenerateError:
            continue
        if best is None or rep.r_squared > best[1]:
            best = (lag, rep.r_squared)
    if best is None:
        raise DegenerateError(f"no lag in {lag_min}..{lag_max} gives a usable overlap")
    return best


def lag_table(
    observed: AnnualSeries, predicted_unlagged: AnnualSeries, lag_min: int, lag_max: int
) -> list[tuple[int, RegressionReport | None]]:
    """R^2 report for every lag in range; ``None`` where the regression is undefined."""
    rows = []
    for lag in range(lag_min, lag_max + 1):
        try:
            rows.append((lag, ols_fit(shift(predicted_unlagged, lag), observed)))
        except DegenerateError:
            rows.append((lag, None))
    return rows


def evaluation_window(
    observed: AnnualSeries, predicted: AnnualSeries, first: int | None = None, last: int | None = None
) -> Tuple[int, int]:
    """Maximal overlap of two series, optionally clipped to [first, last]."""
    span = overlap(observed, predicted)
    if span is None:
        raise DegenerateError("observed and predicted series do not overlap")
    lo = span[0] if first is None else max(span[0], first)
    hi = span[1] if last is None else min(span[1], last)
    if hi - lo + 1 < MIN_POINTS:
        raise DegenerateError(f"evaluation window {lo}-{hi} has fewer than {MIN_POINTS} years")
    return lo, hi
