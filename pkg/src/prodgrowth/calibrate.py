"""Calibration of the productivity model: integer lag scan, coarse grid, pattern-search refinement.

``n0`` and ``base_year`` are held fixed: only the ratio ``n0/b`` is identified
by the data, so fixing ``n0`` pins the scale of ``b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .diagnostics import DegenerateError, MIN_POINTS, ols_fit
from .model import ProductivityModelParams, _population_path, predict_from_gdp, trend_deviation
from .series import AnnualSeries, moving_average

Bounds = Tuple[float, float]


class CalibrationError(ValueError):
    """Raised when a calibration problem is infeasible."""


@dataclass(frozen=True)
class CalibrationSpec:
    a2: Bounds
    b: Bounds
    c: Bounds
    n0: float
    base_year: int
    lag: Tuple[int, int] = (0, 8)
    smoothing_window: int = 1
    smoothing_mode: str = "centered"
    grid: Tuple[int, int, int] = (11, 11, 11)
    tolerance: float = 1e-10  # relative objective improvement
    max_iter: int = 500
    window: Tuple[Optional[int], Optional[int]] = (None, None)

    def __post_init__(self):
        for name in ("a2", "b", "c"):
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise CalibrationError(f"bounds for {name} must be finite and ordered, got {(lo, hi)}")
        if self.a2[0] <= 0:
            raise CalibrationError("a2 bounds must be positive")
        if self.b[0] <= 0 <= self.b[1]:
            raise CalibrationError("b bounds must exclude zero")
        if self.lag[0] > self.lag[1] or self.lag[0] < 0:
            raise CalibrationError(f"invalid lag range {self.lag}")
        if any(int(g) < 1 for g in self.grid):
            raise CalibrationError("grid resolution must be at least 1")
        if self.max_iter < 0:
            raise CalibrationError("max_iter must be non-negative")

    def axes(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(
            np.linspace(lo, hi, int(n)) if n > 1 else np.array([0.5 * (lo + hi)])
            for (lo, hi), n in zip((self.a2, self.b, self.c), self.grid)
        )

    def initial_steps(self) -> np.ndarray:
        steps = []
        for (lo, hi), n in zip((self.a2, self.b, self.c), self.grid):
            width = hi - lo
            steps.append(width / max(int(n) - 1, 1) if width > 0 else 0.0)
        return np.array(steps)

    def params(self, a2: float, b: float, c: float, lag: int) -> ProductivityModelParams:
        return ProductivityModelParams(
            a2=float(a2), n0=self.n0, base_year=self.base_year, b=float(b), c=float(c),
            lag_t=int(lag), smoothing_window=self.smoothing_window,
        )


@dataclass
class FitResult:
    params: ProductivityModelParams
    objective: float
    r_squared: float
    window: Tuple[int, int]
    residuals: AnnualSeries
    evaluations: int = 0
    grid_objective: float = field(default=math.nan, repr=False)


class _Problem:
    """Smoothed observations plus the fixed evaluation window for one calibration run."""

    def __init__(self, spec: CalibrationSpec, gdppc: AnnualSeries, observed_dpp: AnnualSeries,
                 lags: Tuple[int, int] | None = None):
        self.spec = spec
        self.gdppc = gdppc
        self.smoothed = moving_average(observed_dpp, spec.smoothing_window, spec.smoothing_mode)
        if spec.base_year not in gdppc:
            raise CalibrationError(f"base year {spec.base_year} outside GDP series")
        self.window = self.common_window(*(lags or spec.lag))
        lo, hi = self.window
        self.target = self.smoothed.window(lo, hi).values
        self.evaluations = 0

    def common_window(self, lag_min: int, lag_max: int) -> Tuple[int, int]:
        """Years covered by the smoothed observations and by predictions at every lag in range."""
        first, last = self.spec.window
        lo = max(self.smoothed.start_year, self.spec.base_year + lag_max)
        hi = min(self.smoothed.end_year, self.gdppc.end_year + lag_min)
        if first is not None:
            lo = max(lo, first)
        if last is not None:
            hi = min(hi, last)
        if hi - lo + 1 < MIN_POINTS:
            raise CalibrationError(
                f"evaluation window {lo}-{hi} has fewer than {MIN_POINTS} years for lags {lag_min}..{lag_max}"
            )
        return lo, hi

    def population(self, a2: float) -> np.ndarray:
        dev = trend_deviation(self.gdppc.window(self.spec.base_year), a2).values
        return _population_path(dev, self.spec.n0)

    def population_window(self, a2: float, lag: int) -> np.ndarray:
        lo, hi = self.window
        n = self.population(a2)
        i0 = lo - lag - self.spec.base_year
        return n[i0 : i0 + (hi - lo + 1)]

    def sse(self, a2: float, b: float, c: float, lag: int) -> float:
        self.evaluations += 1
        pred = self.population_window(a2, lag) / b + c
        resid = pred - self.target
        return float(np.sum(resid * resid))


def objective(
    params: ProductivityModelParams,
    gdppc: AnnualSeries,
    observed_dpp: AnnualSeries,
    spec: CalibrationSpec | None = None,
) -> float:
    """Sum of squared differences between smoothed observations and the model prediction.

    The window is the overlap of the two series, clipped by ``spec.window``.
    Smoothing uses ``params.smoothing_window``.
    """
    first, last = (None, None) if spec is None else spec.window
    mode = "centered" if spec is None else spec.smoothing_mode
    smoothed = moving_average(observed_dpp, params.smoothing_window, mode)
    pred = predict_from_gdp(gdppc, params)
    lo = max(smoothed.start_year, pred.start_year, first if first is not None else -10**9)
    hi = min(smoothed.end_year, pred.end_year, last if last is not None else 10**9)
    if hi - lo + 1 < MIN_POINTS:
        raise CalibrationError(f"evaluation window {lo}-{hi} has fewer than {MIN_POINTS} years")
    resid = pred.window(lo, hi).values - smoothed.window(lo, hi).values
    return float(np.sum(resid * resid))


@dataclass(frozen=True)
class GridVertex:
    params: ProductivityModelParams
    objective: float


def _grid_for_lag(problem: _Problem, lag: int) -> Tuple[float, float, float, float]:
    a2_axis, b_axis, c_axis = problem.spec.axes()
    y = problem.target
    best = (math.inf, math.nan, math.nan, math.nan)
    for a2 in a2_axis:
        nw = problem.population_window(a2, lag)
        pred = nw[None, None, :] / b_axis[:, None, None] + c_axis[None, :, None]
        resid = pred - y
        sse = np.sum(resid * resid, axis=-1)
        problem.evaluations += sse.size
        sse = np.where(np.isfinite(sse), sse, np.inf)
        k = int(np.argmin(sse))  # first minimum in (b, c) ascending order
        ib, ic = divmod(k, len(c_axis))
        if sse[ib, ic] < best[0]:
            best = (float(sse[ib, ic]), float(a2), float(b_axis[ib]), float(c_axis[ic]))
    return best


def grid_search(
    spec: CalibrationSpec,
    gdppc: AnnualSeries,
    observed_dpp: AnnualSeries,
    lags: Tuple[int, int] | None = None,
    _problem: _Problem | None = None,
) -> GridVertex:
    """Exhaustive search over the (lag, a2, b, c) grid.

    Ties are broken by the lexicographically smallest (lag, a2, b, c).
    """
    lag_min, lag_max = lags or spec.lag
    problem = _problem or _Problem(spec, gdppc, observed_dpp, (lag_min, lag_max))
    best = None
    for lag in range(lag_min, lag_max + 1):
        sse, a2, b, c = _grid_for_lag(problem, lag)
        if best is None or sse < best[0]:
            best = (sse, lag, a2, b, c)
    if best is None or not math.isfinite(best[0]):
        raise CalibrationError("every grid vertex is infeasible")
    sse, lag, a2, b, c = best
    return GridVertex(spec.params(a2, b, c, lag), sse)


def _clamp(x: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    return np.minimum(np.maximum(x, lo), hi)


def _hooke_jeeves(f, x0: np.ndarray, steps: np.ndarray, lo: np.ndarray, hi: np.ndarray,
                  tol: float, max_iter: int, min_rel_step: float = 1e-13) -> Tuple[np.ndarray, float, int]:
    """Cyclic coordinate exploration with pattern moves; steps halve after a failed sweep.

    Stops when an accepted move improves the objective by less than
    ``tol * f``, when every step falls below ``min_rel_step`` of its scale,
    or after ``max_iter`` sweeps.
    """
    def explore(base: np.ndarray, fbase: float) -> Tuple[np.ndarray, float]:
        x, fx = base.copy(), fbase
        for i in range(len(x)):
            if steps[i] == 0:
                continue
            for direction in (1.0, -1.0):
                trial = _clamp(x + direction * steps[i] * np.eye(len(x))[i], lo, hi)
                if trial[i] == x[i]:
                    continue
                ft = f(trial)
                if ft < fx:
                    x, fx = trial, ft
                    break
        return x, fx

    steps = steps.astype(float).copy()
    floor = min_rel_step * np.maximum(np.abs(x0), np.abs(hi - lo))
    x, fx = x0.astype(float).copy(), f(x0)
    iters = 0
    while iters < max_iter:
        iters += 1
        xn, fn = explore(x, fx)
        if not fn < fx:
            steps *= 0.5
            if np.all(steps <= floor):
                break
            continue
        # pattern moves along the accepted direction while they keep paying off
        while True:
            converged = fx - fn < tol * fx
            xp = _clamp(xn + (xn - x), lo, hi)
            x, fx = xn, fn
            if converged or fx == 0.0:
                return x, fx, iters
            if iters >= max_iter:
                break
            iters += 1
            xn, fn = explore(xp, f(xp))
            if not fn < fx:
                break
    return x, fx, iters


def refine(
    start: ProductivityModelParams,
    spec: CalibrationSpec,
    gdppc: AnnualSeries,
    observed_dpp: AnnualSeries,
    _problem: _Problem | None = None,
) -> FitResult:
    """Derivative-free local descent over (a2, b, c) with the lag held at ``start.lag_t``."""
    lag = start.lag_t
    problem = _problem or _Problem(spec, gdppc, observed_dpp, (lag, lag))
    lo = np.array([spec.a2[0], spec.b[0], spec.c[0]])
    hi = np.array([spec.a2[1], spec.b[1], spec.c[1]])
    x0 = _clamp(np.array([start.a2, start.b, start.c]), lo, hi)
    evals_before = problem.evaluations

    def f(x: np.ndarray) -> float:
        val = problem.sse(x[0], x[1], x[2], lag)
        return val if math.isfinite(val) else math.inf

    if math.isfinite(spec.tolerance) and spec.max_iter > 0:
        x, fx, _ = _hooke_jeeves(f, x0, spec.initial_steps(), lo, hi, spec.tolerance, spec.max_iter)
    else:
        x, fx = x0, f(x0)
    params = spec.params(x[0], x[1], x[2], lag)
    return _finish(problem, params, fx, problem.evaluations - evals_before)


def _finish(problem: _Problem, params: ProductivityModelParams, sse: float, evaluations: int) -> FitResult:
    lo, hi = problem.window
    pred = predict_from_gdp(problem.gdppc, params).window(lo, hi)
    obs = problem.smoothed.window(lo, hi)
    try:
        r2 = ols_fit(pred, obs).r_squared
    except DegenerateError:
        r2 = 0.0
    residuals = AnnualSeries(lo, obs.values - pred.values)
    return FitResult(params, sse, r2, (lo, hi), residuals, evaluations)


def calibrate(spec: CalibrationSpec, gdppc: AnnualSeries, observed_dpp: AnnualSeries) -> FitResult:
    """Grid search then refinement for every lag; the lowest objective wins (ties: smaller lag).

    All lags are scored on the same evaluation window so their sums of
    squares are comparable.
    """
    problem = _Problem(spec, gdppc, observed_dpp)
    best: FitResult | None = None
    total = 0
    for lag in range(spec.lag[0], spec.lag[1] + 1):
        vertex = grid_search(spec, gdppc, observed_dpp, lags=(lag, lag), _problem=problem)
        fit = refine(vertex.params, spec, gdppc, observed_dpp, _problem=problem)
        fit.grid_objective = vertex.objective
        if best is None or fit.objective < best.objective:
            best = fit
    assert best is not None
    best.evaluations = problem.evaluations
    return best
