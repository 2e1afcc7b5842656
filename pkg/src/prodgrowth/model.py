"""Productivity growth as a lagged linear function of a GDP-driven population proxy.

The driving force is the deviation of real GDP per capita growth from its
trend ``a/G``.  The deviation feeds a multiplicative recursion for a formal
specific-age population ``N``; productivity growth is then ``N/b + c``
shifted forward by the lag.  The labour-force participation forms are
provided alongside for diagnostics.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .series import AnnualSeries, SeriesError, growth_rate, shift

logger = logging.getLogger(__name__)

MAX_LAG = 10


class ParamError(ValueError):
    """Raised when a parameter set violates its invariants."""


@dataclass(frozen=True)
class ProductivityModelParams:
    a2: float
    n0: float
    base_year: int
    b: float
    c: float
    lag_t: int = 0
    smoothing_window: int = 1

    def __post_init__(self):
        for name in ("a2", "n0", "b", "c"):
            if not np.isfinite(getattr(self, name)):
                raise ParamError(f"{name} must be finite")
        if self.b == 0:
            raise ParamError("b must be non-zero")
        if self.n0 <= 0:
            raise ParamError("n0 must be positive")
        if self.a2 <= 0:
            raise ParamError("a2 must be positive")
        if int(self.lag_t) != self.lag_t or not 0 <= self.lag_t <= MAX_LAG:
            raise ParamError(f"lag_t must be an integer in [0, {MAX_LAG}]")
        if int(self.smoothing_window) != self.smoothing_window or self.smoothing_window < 1 or self.smoothing_window % 2 == 0:
            raise ParamError("smoothing_window must be a positive odd integer")

    def replace(self, **changes) -> "ProductivityModelParams":
        return ProductivityModelParams(**{**self.__dict__, **changes})


@dataclass(frozen=True)
class LfpParams:
    b1: float
    c1: float
    alpha1: float
    a1: float
    t0: int
    lfp0: float
    lag_t: int = 0

    def __post_init__(self):
        if self.b1 == 0:
            raise ParamError("b1 must be non-zero")
        if not 0 < self.lfp0 < 1:
            raise ParamError("lfp0 must lie in (0, 1)")
        if self.a1 <= 0:
            raise ParamError("a1 must be positive")
        if self.lag_t < 0:
            raise ParamError("lag_t must be non-negative")


@dataclass(frozen=True)
class LfpProductivityParams:
    b2: float
    c2: float
    alpha1: float
    t0: int
    lfp0: float

    def __post_init__(self):
        if not np.isfinite(self.b2):
            raise ParamError("b2 must be finite")
        if not 0 < self.lfp0 < 1:
            raise ParamError("lfp0 must lie in (0, 1)")


@dataclass(frozen=True)
class NsLinkParams:
    b3: float
    c3: float
    alpha2: float
    b4: float
    c4: float
    lag_t: int
    lfp0: float

    def __post_init__(self):
        if not np.isfinite(self.b4):
            raise ParamError("b4 must be finite")
        if not 0 < self.lfp0 < 1:
            raise ParamError("lfp0 must lie in (0, 1)")


def trend_deviation(gdppc: AnnualSeries, a2: float) -> AnnualSeries:
    """Growth of GDP per capita minus the trend rate ``a2 / G(t-1)``, labelled at t."""
    if len(gdppc) < 2:
        raise SeriesError("trend deviation needs at least 2 GDP points")
    g = gdppc.values
    if np.any(g <= 0):
        year = gdppc.start_year + int(np.flatnonzero(g <= 0)[0])
        raise SeriesError(f"non-positive GDP per capita at year {year}")
    prev = g[:-1]
    return AnnualSeries(gdppc.start_year + 1, (g[1:] - prev) / prev - a2 / prev)


def _population_path(dev: np.ndarray, n0: float) -> np.ndarray:
    factors = 2.0 * dev + 1.0
    out = np.empty(len(dev) + 1)
    out[0] = n0
    out[1:] = n0 * np.cumprod(factors)
    return out


def specific_age_population(gdppc: AnnualSeries, p: ProductivityModelParams) -> AnnualSeries:
    """Evolve N from ``n0`` at ``base_year`` by N(t) = N(t-1) * (2 dev(t) + 1).

    The recursion is unlagged; the single lag is applied by
    :func:`predict_productivity_growth`.
    """
    if p.base_year not in gdppc:
        raise SeriesError(f"base year {p.base_year} outside GDP series {gdppc.start_year}-{gdppc.end_year}")
    tail = gdppc.window(p.base_year)
    if len(tail) < 2:
        return AnnualSeries(p.base_year, [p.n0])
    dev = trend_deviation(tail, p.a2).values
    if np.any(2.0 * dev + 1.0 <= 0):
        year = p.base_year + 1 + int(np.flatnonzero(2.0 * dev + 1.0 <= 0)[0])
        logger.warning("non-positive recursion factor at year %d; N changes sign", year)
    return AnnualSeries(p.base_year, _population_path(dev, p.n0))


def predict_productivity_growth(n: AnnualSeries, p: ProductivityModelParams) -> AnnualSeries:
    """Productivity growth n(t)/b + c, relabelled at year t + lag_t."""
    return shift(AnnualSeries(n.start_year, n.values / p.b + p.c), p.lag_t)


def predict_from_gdp(gdppc: AnnualSeries, p: ProductivityModelParams) -> AnnualSeries:
    """Convenience composition: GDP per capita to predicted dP/P."""
    return predict_productivity_growth(specific_age_population(gdppc, p), p)


def lfp_rate(lfp_now: float, forcing: float, p: LfpParams) -> float:
    """Participation growth rate r solving (b1 r + c1) exp(alpha1 (LFP - lfp0)/lfp0) = forcing."""
    return (forcing * np.exp(-p.alpha1 * (lfp_now - p.lfp0) / p.lfp0) - p.c1) / p.b1


def simulate_lfp(gdppc: AnnualSeries, p: LfpParams) -> AnnualSeries:
    """Integrate the participation-rate equation forward with an annual explicit step.

    For each year t >= t0 the rate r(t) solves
    ``(b1 r + c1) exp(alpha1 (LFP(t) - lfp0)/lfp0) = g(t - lag)`` with the
    current LFP in the exponent, and LFP(t+1) = LFP(t) (1 + r(t)).  The output
    runs from t0 to one year past the last available forcing year.
    """
    g = shift(trend_deviation(gdppc, p.a1), p.lag_t)
    if p.t0 not in g:
        raise SeriesError(
            f"GDP series must cover {p.t0 - p.lag_t - 1}..{p.t0 - p.lag_t} to start at t0={p.t0}"
        )
    forcing = g.window(p.t0).values
    lfp = np.empty(len(forcing) + 1)
    lfp[0] = p.lfp0
    for i, gi in enumerate(forcing):
        lfp[i + 1] = lfp[i] * (1.0 + lfp_rate(lfp[i], gi, p))
    if np.any((lfp <= 0) | (lfp >= 1)):
        year = p.t0 + int(np.flatnonzero((lfp <= 0) | (lfp >= 1))[0])
        logger.warning("participation rate leaves (0, 1) at year %d", year)
    return AnnualSeries(p.t0, lfp)


def lfp_forcing(lfp: AnnualSeries, p: LfpParams) -> AnnualSeries:
    """Left-hand side of the participation equation, labelled at the forcing year t - lag.

    Uses the same explicit convention as :func:`simulate_lfp`: the growth from
    t to t+1 and LFP(t) in the exponent.  Comparable directly with
    ``trend_deviation(gdppc, a1)``.
    """
    v = lfp.values
    if len(v) < 2:
        raise SeriesError("need at least 2 participation values")
    r = (v[1:] - v[:-1]) / v[:-1]
    lhs = (p.b1 * r + p.c1) * np.exp(p.alpha1 * (v[:-1] - p.lfp0) / p.lfp0)
    return AnnualSeries(lfp.start_year - p.lag_t, lhs)


def productivity_from_lfp(lfp: AnnualSeries, p: LfpProductivityParams) -> AnnualSeries:
    """dP/P = (b2 rLFP(t) + c2) exp(alpha1 (LFP(t) - lfp0)/lfp0), same-year LFP."""
    rl = growth_rate(lfp)
    level = lfp.values[1:]
    return AnnualSeries(rl.start_year, (p.b2 * rl.values + p.c2) * np.exp(p.alpha1 * (level - p.lfp0) / p.lfp0))


def ns_from_lfp(lfp: AnnualSeries, p: NsLinkParams) -> AnnualSeries:
    """Formal specific-age population implied by LFP, labelled at year t - lag."""
    rl = growth_rate(lfp)
    level = lfp.values[1:]
    ns = (p.b3 * rl.values + p.c3) * np.exp(p.alpha2 * (level - p.lfp0) / p.lfp0)
    return AnnualSeries(rl.start_year - p.lag_t, ns)


def productivity_from_ns(ns: AnnualSeries, p: NsLinkParams, first_year: int | None = None) -> AnnualSeries:
    """dP/P(t) = b4 Ns(t - lag) + c4.

    ``first_year`` requests output starting at that year; it fails if that
    would need Ns before the start of ``ns``.
    """
    out = shift(AnnualSeries(ns.start_year, p.b4 * ns.values + p.c4), p.lag_t)
    if first_year is not None:
        if first_year < out.start_year:
            raise SeriesError(
                f"year {first_year} needs Ns at {first_year - p.lag_t}, before {ns.start_year}"
            )
        out = out.window(first_year)
    return out
