"""Labour productivity growth modelled from real GDP per capita."""

from .calibrate import CalibrationSpec, FitResult, calibrate, grid_search, objective, refine
from .diagnostics import RegressionReport, best_lag, ols_fit
from .model import (
    LfpParams,
    LfpProductivityParams,
    NsLinkParams,
    ProductivityModelParams,
    lfp_forcing,
    ns_from_lfp,
    predict_from_gdp,
    predict_productivity_growth,
    productivity_from_lfp,
    productivity_from_ns,
    simulate_lfp,
    specific_age_population,
    trend_deviation,
)
from .series import AnnualSeries, align, growth_rate, moving_average, shift

__version__ = "0.1.0"
