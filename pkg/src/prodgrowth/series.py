"""Year-indexed annual series with growth rates, moving averages, shifts and alignment."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np


class SeriesError(ValueError):
    """Raised when a series violates a precondition of an operation."""


@dataclass(frozen=True, eq=False)
class AnnualSeries:
    """Contiguous annual series starting at ``start_year``.

    Values are stored as a read-only float64 array; year ``i`` of the array is
    ``start_year + i``.
    """

    start_year: int
    values: np.ndarray

    def __init__(self, start_year: int, values: Iterable[float]):
        arr = np.array(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
        if arr.ndim != 1:
            raise SeriesError("values must be one-dimensional")
        if arr.size == 0:
            raise SeriesError("series must be non-empty")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise SeriesError(f"non-finite value at year {int(start_year) + bad}")
        arr.setflags(write=False)
        object.__setattr__(self, "start_year", int(start_year))
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_pairs(cls, years: Iterable[int], values: Iterable[float]) -> "AnnualSeries":
        """Build a series from (year, value) pairs; years must be contiguous after sorting."""
        pairs = sorted(zip((int(y) for y in years), values))
        if not pairs:
            raise SeriesError("series must be non-empty")
        ys = [p[0] for p in pairs]
        for prev, cur in zip(ys, ys[1:]):
            if cur == prev:
                raise SeriesError(f"duplicate year {cur}")
            if cur != prev + 1:
                raise SeriesError(f"gap in years: missing {prev + 1}")
        return cls(ys[0], [p[1] for p in pairs])

    @property
    def end_year(self) -> int:
        return self.start_year + len(self.values) - 1

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.start_year, self.end_year + 1)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, year: int) -> float:
        i = int(year) - self.start_year
        if i < 0 or i >= len(self.values):
            raise KeyError(year)
        return float(self.values[i])

    def __contains__(self, year: object) -> bool:
        return isinstance(year, (int, np.integer)) and self.start_year <= year <= self.end_year

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnnualSeries):
            return NotImplemented
        return self.start_year == other.start_year and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"AnnualSeries({self.start_year}-{self.end_year}, n={len(self)})"

    def window(self, first: int | None = None, last: int | None = None) -> "AnnualSeries":
        """Restrict to the inclusive year range [first, last] (None keeps the existing end)."""
        lo = self.start_year if first is None else max(first, self.start_year)
        hi = self.end_year if last is None else min(last, self.end_year)
        if lo > hi:
            raise SeriesError(f"window {first}:{last} does not intersect {self.start_year}-{self.end_year}")
        return AnnualSeries(lo, self.values[lo - self.start_year : hi - self.start_year + 1])

    def map(self, func) -> "AnnualSeries":
        return AnnualSeries(self.start_year, func(self.values))


def growth_rate(s: AnnualSeries) -> AnnualSeries:
    """Annual growth rate (s(t) - s(t-1)) / s(t-1), labelled at year t."""
    if len(s) < 2:
        raise SeriesError("growth rate needs at least 2 points")
    prev = s.values[:-1]
    if np.any(prev == 0):
        year = s.start_year + int(np.flatnonzero(prev == 0)[0])
        raise SeriesError(f"zero value at year {year} cannot be a growth-rate base")
    return AnnualSeries(s.start_year + 1, (s.values[1:] - prev) / prev)


def moving_average(s: AnnualSeries, window: int, mode: str = "centered") -> AnnualSeries:
    """Moving average over ``window`` years with untrimmed ends dropped.

    ``mode="centered"`` labels each average at the middle year of its window;
    ``mode="trailing"`` labels it at the last year.
    """
    if window < 1 or window % 2 == 0:
        raise SeriesError(f"window must be a positive odd integer, got {window}")
    if window > len(s):
        raise SeriesError(f"window {window} exceeds series length {len(s)}")
    if mode not in ("centered", "trailing"):
        raise SeriesError(f"unknown smoothing mode {mode!r}")
    if window == 1:
        return s
    # average deviations from a reference value so constant runs come back bit-exact
    ref = s.values[0]
    v = s.values - ref
    n_out = len(v) - window + 1
    acc = np.zeros(n_out)
    for k in range(window):
        acc = acc + v[k : k + n_out]
    offset = (window - 1) // 2 if mode == "centered" else window - 1
    return AnnualSeries(s.start_year + offset, acc / window + ref)


def shift(s: AnnualSeries, lag: int) -> AnnualSeries:
    """Relabel every value from year t to year t + lag."""
    return AnnualSeries(s.start_year + int(lag), s.values)


def overlap(a: AnnualSeries, b: AnnualSeries) -> Tuple[int, int] | None:
    lo = max(a.start_year, b.start_year)
    hi = min(a.end_year, b.end_year)
    return (lo, hi) if lo <= hi else None


def align(a: AnnualSeries, b: AnnualSeries) -> Tuple[AnnualSeries, AnnualSeries]:
    """Restrict both series to their common years."""
    span = overlap(a, b)
    if span is None:
        raise SeriesError(
            f"no common years between {a.start_year}-{a.end_year} and {b.start_year}-{b.end_year}"
        )
    return a.window(*span), b.window(*span)
