"""CSV series, JSON configs and result files.

Series CSV: header ``year,value``; LF or CRLF accepted, written with LF.
Plot CSV: header ``year,observed,predicted`` over the union of years.
Country config JSON (unknown keys are rejected)::

    {
      "country": "Turkey",
      "a2": 105, "n0": 1450000, "base_year": 1959, "b": -6000000, "c": 0.24,
      "lag_t": 2, "smoothing_window": 3,
      "smoothing_mode": "centered",                  # optional
      "window": {"first": 1966, "last": 2006},       # optional, either end may be null
      "lfp": {"b1": .., "c1": .., "alpha1": .., "a1": .., "t0": .., "lfp0": .., "lag_t": ..,
              "b2": .., "c2": ..},                   # optional; b2/c2 optional within
      "ns": {"b3": .., "c3": .., "alpha2": .., "b4": .., "c4": .., "lag_t": .., "lfp0": ..},
      "data": {"gdp": "path.csv", "productivity": "path.csv"},   # optional
      "note": "free text"                            # optional
    }
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from .calibrate import CalibrationError, CalibrationSpec, FitResult
from .model import (
    LfpParams,
    LfpProductivityParams,
    NsLinkParams,
    ParamError,
    ProductivityModelParams,
)
from .series import AnnualSeries, SeriesError

COUNTRIES = ("turkey", "spain", "belgium", "austria", "switzerland", "new_zealand")


class InputError(ValueError):
    """Raised for unreadable or malformed input files."""


# ---------------------------------------------------------------- series CSV

def read_annual_csv(path) -> AnnualSeries:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    rows = list(csv.reader(text.splitlines()))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows or [c.strip().lower() for c in rows[0]] != ["year", "value"]:
        raise InputError(f"{path}: row 1: expected header 'year,value'")
    seen: Dict[int, int] = {}
    pairs = []
    for rowno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise InputError(f"{path}: row {rowno}: expected 2 fields, got {len(row)}")
        try:
            year = int(row[0].strip())
        except ValueError:
            raise InputError(f"{path}: row {rowno}: bad year {row[0]!r}") from None
        try:
            value = float(row[1].strip())
        except ValueError:
            raise InputError(f"{path}: row {rowno}: non-numeric value {row[1]!r}") from None
        if not math.isfinite(value):
            raise InputError(f"{path}: row {rowno}: non-finite value {row[1]!r}")
        if year in seen:
            raise InputError(f"{path}: row {rowno}: duplicate year {year} (first at row {seen[year]})")
        seen[year] = rowno
        pairs.append((year, value))
    if not pairs:
        raise InputError(f"{path}: no data rows")
    pairs.sort()
    for (y0, _), (y1, _) in zip(pairs, pairs[1:]):
        if y1 != y0 + 1:
            missing = y0 + 1
            raise InputError(f"{path}: row {seen[y1]}: gap in years, missing {missing}")
    return AnnualSeries(pairs[0][0], [v for _, v in pairs])


def write_annual_csv(s: AnnualSeries, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("year,value\n")
        for year, value in zip(s.years, s.values):
            fh.write(f"{int(year)},{float(value)!r}\n")


def write_plot_data(observed: AnnualSeries, predicted: AnnualSeries, path) -> None:
    """Write ``year,observed,predicted`` over the union of years; missing cells are empty."""
    lo = min(observed.start_year, predicted.start_year)
    hi = max(observed.end_year, predicted.end_year)

    def cell(s: AnnualSeries, year: int) -> str:
        return repr(s[year]) if year in s else ""

    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("year,observed,predicted\n")
        for year in range(lo, hi + 1):
            fh.write(f"{year},{cell(observed, year)},{cell(predicted, year)}\n")


def read_plot_column(path, column: str) -> AnnualSeries:
    """Read one column of a plot-data CSV back as a series, skipping empty cells."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        pairs = [(int(r["year"]), float(r[column])) for r in reader if r[column] != ""]
    return AnnualSeries.from_pairs([p[0] for p in pairs], [p[1] for p in pairs])


def write_forecast_csv(predicted: AnnualSeries, last_data_year: int, path) -> None:
    """Write ``year,predicted,forecast``; rows after ``last_data_year`` carry forecast=1."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("year,predicted,forecast\n")
        for year, value in zip(predicted.years, predicted.values):
            fh.write(f"{int(year)},{float(value)!r},{int(year > last_data_year)}\n")


# ---------------------------------------------------------------- configs

@dataclass
class CountryConfig:
    name: str
    params: ProductivityModelParams
    smoothing_mode: str = "centered"
    lfp: Optional[LfpParams] = None
    lfp_productivity: Optional[LfpProductivityParams] = None
    ns: Optional[NsLinkParams] = None
    window: Tuple[Optional[int], Optional[int]] = (None, None)
    data: Dict[str, str] = field(default_factory=dict)
    note: str = ""


_PARAM_KEYS = ("a2", "n0", "base_year", "b", "c", "lag_t", "smoothing_window")
_TOP_KEYS = {"country", *_PARAM_KEYS, "smoothing_mode", "window", "lfp", "ns", "data", "note"}
_LFP_KEYS = ("b1", "c1", "alpha1", "a1", "t0", "lfp0", "lag_t")
_LFP_OPTIONAL = ("b2", "c2")
_NS_KEYS = ("b3", "c3", "alpha2", "b4", "c4", "lag_t", "lfp0")
_INT_KEYS = {"base_year", "lag_t", "smoothing_window", "t0"}


def _number(obj: Dict[str, Any], key: str, where: str):
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise InputError(f"{where}{key}: expected a number, got {val!r}")
    if key in _INT_KEYS:
        if int(val) != val:
            raise InputError(f"{where}{key}: expected an integer, got {val!r}")
        return int(val)
    return float(val)


def _check_keys(obj: Any, required, optional, where: str) -> None:
    if not isinstance(obj, dict):
        raise InputError(f"{where or 'config'}: expected a JSON object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise InputError(f"{where}{unknown[0]}: unknown key")
    missing = [k for k in required if k not in obj]
    if missing:
        raise InputError(f"{where}{missing[0]}: missing required key")


def params_from_dict(obj: Dict[str, Any], where: str = "") -> ProductivityModelParams:
    vals = {k: _number(obj, k, where) for k in _PARAM_KEYS}
    try:
        return ProductivityModelParams(**vals)
    except ParamError as exc:
        raise InputError(f"{where}{exc}") from None


def params_to_dict(p: ProductivityModelParams) -> Dict[str, Any]:
    return {k: getattr(p, k) for k in _PARAM_KEYS}


def parse_country_config(obj: Dict[str, Any]) -> CountryConfig:
    _check_keys(obj, _PARAM_KEYS, _TOP_KEYS - set(_PARAM_KEYS), "")
    params = params_from_dict(obj)
    mode = obj.get("smoothing_mode", "centered")
    if mode not in ("centered", "trailing"):
        raise InputError(f"smoothing_mode: must be 'centered' or 'trailing', got {mode!r}")
    cfg = CountryConfig(name=str(obj.get("country", "")), params=params, smoothing_mode=mode,
                        note=str(obj.get("note", "")))
    if "window" in obj:
        w = obj["window"]
        _check_keys(w, (), ("first", "last"), "window.")
        for key in ("first", "last"):
            if w.get(key) is not None and (isinstance(w[key], bool) or not isinstance(w[key], int)):
                raise InputError(f"window.{key}: expected an integer year or null")
        cfg.window = (w.get("first"), w.get("last"))
    if "lfp" in obj:
        lfp = obj["lfp"]
        _check_keys(lfp, _LFP_KEYS, _LFP_OPTIONAL, "lfp.")
        vals = {k: _number(lfp, k, "lfp.") for k in _LFP_KEYS}
        try:
            cfg.lfp = LfpParams(**vals)
            if "b2" in lfp or "c2" in lfp:
                _check_keys(lfp, (*_LFP_KEYS, *_LFP_OPTIONAL), (), "lfp.")
                cfg.lfp_productivity = LfpProductivityParams(
                    b2=_number(lfp, "b2", "lfp."), c2=_number(lfp, "c2", "lfp."),
                    alpha1=vals["alpha1"], t0=vals["t0"], lfp0=vals["lfp0"],
                )
        except ParamError as exc:
            raise InputError(f"lfp.{exc}") from None
    if "ns" in obj:
        ns = obj["ns"]
        _check_keys(ns, _NS_KEYS, (), "ns.")
        try:
            cfg.ns = NsLinkParams(**{k: _number(ns, k, "ns.") for k in _NS_KEYS})
        except ParamError as exc:
            raise InputError(f"ns.{exc}") from None
    if "data" in obj:
        _check_keys(obj["data"], (), ("gdp", "productivity"), "data.")
        cfg.data = {k: str(v) for k, v in obj["data"].items()}
    return cfg


def _load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None


def read_country_config(path) -> CountryConfig:
    """Read a country config, or the ``params`` block of a fit result file."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "params" in obj and "objective" in obj:
        obj = {"country": obj.get("country", ""), **obj["params"]}
    try:
        return parse_country_config(obj)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def shipped_config_path(country: str) -> Path:
    key = country.lower().replace(" ", "_")
    if key not in COUNTRIES:
        raise InputError(f"no shipped config for {country!r}; choose from {', '.join(COUNTRIES)}")
    return Path(str(resources.files("prodgrowth") / "configs" / f"{key}.json"))


def load_shipped_config(country: str) -> CountryConfig:
    return read_country_config(shipped_config_path(country))


# ---------------------------------------------------------------- calibration spec / fit result

_SPEC_REQUIRED = ("a2", "b", "c", "n0", "base_year")
_SPEC_OPTIONAL = ("lag", "smoothing_window", "smoothing_mode", "grid", "tolerance", "max_iter", "window")


def parse_calibration_spec(obj: Dict[str, Any]) -> CalibrationSpec:
    """Calibration spec JSON: bounds as ``[lo, hi]``, ``lag`` as ``[min, max]``,
    ``grid`` as ``[n_a2, n_b, n_c]``, ``window`` as ``{"first":..,"last":..}``."""
    _check_keys(obj, _SPEC_REQUIRED, _SPEC_OPTIONAL, "")

    def pair(key, cast=float):
        val = obj[key]
        if not isinstance(val, list) or len(val) != 2:
            raise InputError(f"{key}: expected [lo, hi]")
        try:
            return tuple(cast(v) for v in val)
        except (TypeError, ValueError):
            raise InputError(f"{key}: expected numbers, got {val!r}") from None

    kwargs: Dict[str, Any] = {
        "a2": pair("a2"), "b": pair("b"), "c": pair("c"),
        "n0": _number(obj, "n0", ""), "base_year": _number(obj, "base_year", ""),
    }
    if "lag" in obj:
        kwargs["lag"] = pair("lag", int)
    if "grid" in obj:
        g = obj["grid"]
        if not isinstance(g, list) or len(g) != 3:
            raise InputError("grid: expected [n_a2, n_b, n_c]")
        kwargs["grid"] = tuple(int(v) for v in g)
    for key in ("smoothing_window", "max_iter"):
        if key in obj:
            kwargs[key] = int(obj[key])
    if "tolerance" in obj:
        kwargs["tolerance"] = float(obj["tolerance"])
    if "smoothing_mode" in obj:
        kwargs["smoothing_mode"] = str(obj["smoothing_mode"])
    if "window" in obj:
        w = obj["window"]
        _check_keys(w, (), ("first", "last"), "window.")
        kwargs["window"] = (w.get("first"), w.get("last"))
    try:
        return CalibrationSpec(**kwargs)
    except CalibrationError as exc:
        raise InputError(str(exc)) from None


def read_calibration_spec(path) -> CalibrationSpec:
    obj = _load_json(path)
    try:
        return parse_calibration_spec(obj)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def fit_result_to_dict(fit: FitResult, country: str = "") -> Dict[str, Any]:
    return {
        "country": country,
        "params": params_to_dict(fit.params),
        "objective": fit.objective,
        "r_squared": fit.r_squared,
        "window": {"first": fit.window[0], "last": fit.window[1]},
        "residuals": {"start_year": fit.residuals.start_year, "values": [float(v) for v in fit.residuals.values]},
        "evaluations": fit.evaluations,
    }


def write_fit_result(fit: FitResult, path, country: str = "") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(fit_result_to_dict(fit, country), fh, indent=2)
        fh.write("\n")


def read_fit_result(path) -> FitResult:
    obj = _load_json(path)
    try:
        res = obj["residuals"]
        return FitResult(
            params=params_from_dict(obj["params"], "params."),
            objective=float(obj["objective"]),
            r_squared=float(obj["r_squared"]),
            window=(int(obj["window"]["first"]), int(obj["window"]["last"])),
            residuals=AnnualSeries(res["start_year"], res["values"]),
            evaluations=int(obj["evaluations"]),
        )
    except (KeyError, TypeError, SeriesError) as exc:
        raise InputError(f"{path}: malformed fit result ({exc})") from None
