import numpy as np
import pytest
from hypothesis import given, strategies as st

from prodgrowth.series import AnnualSeries, SeriesError, align, growth_rate, moving_average, shift

from oracles import moving_average_loop

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


def series_st(min_size=1, max_size=40):
    return st.builds(AnnualSeries, st.integers(1800, 2100), st.lists(finite, min_size=min_size, max_size=max_size))


class TestConstruction:
    def test_rejects_empty(self):
        with pytest.raises(SeriesError):
            AnnualSeries(2000, [])

    def test_rejects_nan(self):
        with pytest.raises(SeriesError, match="2001"):
            AnnualSeries(2000, [1.0, float("nan")])

    def test_from_pairs_sorts(self):
        s = AnnualSeries.from_pairs([2001, 2000], [110, 100])
        assert s == AnnualSeries(2000, [100, 110])

    def test_from_pairs_gap(self):
        with pytest.raises(SeriesError, match="2001"):
            AnnualSeries.from_pairs([2000, 2002], [1, 2])

    def test_values_read_only(self):
        s = AnnualSeries(2000, [1, 2])
        with pytest.raises(ValueError):
            s.values[0] = 5


class TestGrowthRate:
    def test_hand_values(self):
        g = growth_rate(AnnualSeries(2000, [100, 110, 99]))
        assert g.start_year == 2001
        np.testing.assert_allclose(g.values, [0.10, -0.10], rtol=1e-15)

    def test_constant(self):
        g = growth_rate(AnnualSeries(1990, [5, 5, 5]))
        assert g == AnnualSeries(1991, [0.0, 0.0])

    def test_two_points(self):
        g = growth_rate(AnnualSeries(1980, [200, 210]))
        assert g.start_year == 1981
        assert g.values[0] == pytest.approx(0.05, rel=1e-15)

    def test_too_short(self):
        with pytest.raises(SeriesError):
            growth_rate(AnnualSeries(2000, [1.0]))

    def test_zero_base(self):
        with pytest.raises(SeriesError, match="2001"):
            growth_rate(AnnualSeries(2000, [1.0, 0.0, 3.0]))

    @given(st.integers(1900, 2000), st.floats(0.1, 1e6), st.integers(2, 30))
    def test_constant_series_has_zero_growth(self, start, value, n):
        assert np.all(growth_rate(AnnualSeries(start, [value] * n)).values == 0.0)


class TestMovingAverage:
    def test_window3_linear(self):
        assert moving_average(AnnualSeries(2000, [1, 2, 3, 4, 5]), 3) == AnnualSeries(2001, [2, 3, 4])

    def test_window5_constant(self):
        assert moving_average(AnnualSeries(1990, [7] * 6), 5) == AnnualSeries(1992, [7, 7])

    def test_window1_identity(self):
        s = AnnualSeries(2000, [3, 1, 4])
        assert moving_average(s, 1) is s

    def test_even_window(self):
        with pytest.raises(SeriesError):
            moving_average(AnnualSeries(2000, [1, 2, 3, 4]), 2)

    def test_window_too_long(self):
        with pytest.raises(SeriesError):
            moving_average(AnnualSeries(2000, [1, 2]), 3)

    def test_trailing_mode_labels_last_year(self):
        s = moving_average(AnnualSeries(2000, [1, 2, 3, 4, 5]), 3, mode="trailing")
        assert s == AnnualSeries(2002, [2, 3, 4])

    @given(st.lists(finite, min_size=5, max_size=30), st.sampled_from([3, 5]))
    def test_matches_loop_oracle(self, values, window):
        got = moving_average(AnnualSeries(2000, values), window)
        np.testing.assert_allclose(got.values, moving_average_loop(values, window), rtol=1e-12, atol=1e-9)

    @given(st.floats(-1e6, 1e6), st.sampled_from([1, 3, 5, 7]), st.integers(7, 30))
    def test_constant_preserved(self, value, window, n):
        out = moving_average(AnnualSeries(1950, [value] * n), window)
        assert np.all(out.values == value)

    @given(st.floats(-10, 10), st.floats(-1e3, 1e3), st.sampled_from([3, 5, 7]), st.integers(7, 40))
    def test_affine_preserved(self, slope, intercept, window, n):
        s = AnnualSeries(1950, slope * np.arange(1950, 1950 + n) + intercept)
        out = moving_average(s, window)
        expected = s.window(out.start_year, out.end_year).values
        np.testing.assert_allclose(out.values, expected, rtol=1e-12, atol=1e-12 * np.max(np.abs(expected)))


class TestShift:
    def test_forward(self):
        assert shift(AnnualSeries(2000, [1, 2]), 2) == AnnualSeries(2002, [1, 2])

    def test_zero(self):
        assert shift(AnnualSeries(2000, [1, 2]), 0) == AnnualSeries(2000, [1, 2])

    def test_backward(self):
        assert shift(AnnualSeries(2000, [1, 2]), -1) == AnnualSeries(1999, [1, 2])

    @given(series_st(), st.integers(-50, 50))
    def test_round_trip(self, s, k):
        assert shift(shift(s, k), -k) == s


class TestAlign:
    def test_partial_overlap(self):
        a = AnnualSeries(2000, range(11))
        b = AnnualSeries(2005, range(11))
        a2, b2 = align(a, b)
        assert (a2.start_year, a2.end_year) == (2005, 2010)
        assert (b2.start_year, b2.end_year) == (2005, 2010)
        assert list(a2.values) == [5, 6, 7, 8, 9, 10]
        assert list(b2.values) == [0, 1, 2, 3, 4, 5]

    def test_identical_ranges(self):
        a = AnnualSeries(2000, [1, 2, 3])
        b = AnnualSeries(2000, [4, 5, 6])
        assert align(a, b) == (a, b)

    def test_disjoint(self):
        with pytest.raises(SeriesError):
            align(AnnualSeries(1990, range(6)), AnnualSeries(1996, range(5)))

    @given(series_st(), series_st())
    def test_idempotent(self, a, b):
        try:
            once = align(a, b)
        except SeriesError:
            return
        assert align(*once) == once
