"""Seeded synthetic GDP / productivity pairs generated from known model parameters."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from .model import ProductivityModelParams, predict_from_gdp
from .series import AnnualSeries


def synthetic_gdp(params: ProductivityModelParams, years: int, seed: int, g0: float = 3000.0,
                  eps_scale: float = 0.02) -> AnnualSeries:
    """GDP path G(t+1) = G(t) + a2 + eps(t) G(t) starting at ``base_year``.

    With this path the trend deviation in year t+1 equals eps(t).
    """
    if years < 2:
        raise ValueError("need at least 2 years")
    rng = np.random.default_rng(seed)
    eps = rng.normal(0.0, eps_scale, years - 1) if eps_scale > 0 else np.zeros(years - 1)
    g = np.empty(years)
    g[0] = g0
    for i, e in enumerate(eps):
        g[i + 1] = g[i] + params.a2 + e * g[i]
    return AnnualSeries(params.base_year, g)


def synthetic_pair(params: ProductivityModelParams, years: int, seed: int, noise: float = 0.0,
                   g0: float = 3000.0, eps_scale: float = 0.02,
                   p0: float = 10000.0) -> Tuple[AnnualSeries, AnnualSeries, AnnualSeries]:
    """GDP per capita, observed productivity growth and productivity levels.

    Growth is the exact model prediction over the GDP years, plus Gaussian
    observation noise of standard deviation ``noise``.  Levels start at ``p0``
    the year before the first growth value.
    """
    gdp = synthetic_gdp(params, years, seed, g0, eps_scale)
    dpp = predict_from_gdp(gdp, params).window(None, gdp.end_year)
    if noise > 0:
        # separate stream so the GDP path does not depend on the noise level
        rng = np.random.default_rng([seed, 1])
        dpp = AnnualSeries(dpp.start_year, dpp.values + rng.normal(0.0, noise, len(dpp)))
    levels = p0 * np.concatenate([[1.0], np.cumprod(1.0 + dpp.values)])
    return gdp, dpp, AnnualSeries(dpp.start_year - 1, levels)
