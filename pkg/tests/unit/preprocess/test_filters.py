"""Tests for per-flight cleaning stages."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import PreprocessError
from src.preprocess import (
    Direction,
    EnuFrame,
    OutlierConfig,
    SmoothingConfig,
    Track,
    bound_by_radius,
    downsample,
    remove_outliers,
    resample_1hz,
    savgol_smooth,
    scale_by_rmax,
)


@pytest.fixture
def frame():
    return EnuFrame(ref_lat=37.46, ref_lon=126.44, r_max_m=1000.0)


def make_track(positions, timestamps=None, **kwargs) -> Track:
    positions = np.asarray(positions, dtype=np.float64)
    if timestamps is None:
        timestamps = np.arange(len(positions), dtype=np.float64)
    return Track(flight_id="F1", timestamps=np.asarray(timestamps, dtype=np.float64), positions=positions, **kwargs)


def line(n: int, speed: float = 100.0) -> np.ndarray:
    t = np.arange(n, dtype=np.float64)
    return np.column_stack([speed * t, 0.5 * speed * t, 1000.0 - 5.0 * t])


class TestBoundByRadius:
    """Tests for bound_by_radius."""

    def test_all_inside_is_identity(self, frame):
        """A track inside the radius is unchanged."""
        track = make_track([[0, 0, 0], [10, 0, 0], [20, 0, 0]])
        bounded = bound_by_radius(track, frame)
        np.testing.assert_array_equal(bounded.positions, track.positions)

    def test_arrival_keeps_suffix(self, frame):
        """Arrivals keep the states after the last excursion outside."""
        track = make_track([[500, 0, 0], [1500, 0, 0], [900, 0, 0], [400, 0, 0], [0, 0, 0]])
        bounded = bound_by_radius(track, frame, Direction.ARRIVAL)
        assert bounded.positions[:, 0].tolist() == [900, 400, 0]
        assert bounded.timestamps.tolist() == [2, 3, 4]

    def test_departure_keeps_prefix(self, frame):
        """Departures keep the states before the first excursion outside."""
        track = make_track([[0, 0, 0], [600, 0, 0], [1200, 0, 0], [800, 0, 0]])
        bounded = bound_by_radius(track, frame, Direction.DEPARTURE)
        assert bounded.positions[:, 0].tolist() == [0, 600]

    def test_entirely_outside(self, frame):
        """Fewer than two states inside is an error."""
        track = make_track([[2000, 0, 0], [1500, 0, 0], [500, 0, 0]])
        with pytest.raises(PreprocessError, match="entirely outside bound"):
            bound_by_radius(track, frame)


class TestResample:
    """Tests for resample_1hz."""

    def test_affine_signal_is_preserved(self):
        """Linear interpolation reproduces affine motion on the integer grid."""
        t = np.array([0.4, 1.7, 3.1, 5.9, 7.2])
        positions = np.column_stack([3.0 * t + 1.0, -2.0 * t, 0.5 * t + 10.0])
        resampled = resample_1hz(make_track(positions, t))

        assert resampled.timestamps.tolist() == [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]
        grid = resampled.timestamps
        expected = np.column_stack([3.0 * grid + 1.0, -2.0 * grid, 0.5 * grid + 10.0])
        np.testing.assert_allclose(resampled.positions, expected, atol=1e-9)

    def test_non_increasing_timestamps(self):
        """Duplicate timestamps are rejected."""
        with pytest.raises(PreprocessError, match="not strictly increasing"):
            resample_1hz(make_track(np.zeros((3, 3)), [0.0, 1.0, 1.0]))

    def test_short_span(self):
        """A grid of fewer than three seconds is rejected."""
        with pytest.raises(PreprocessError, match="shorter than 2 seconds"):
            resample_1hz(make_track(np.zeros((2, 3)), [0.0, 1.5]))


class TestRemoveOutliers:
    """Tests for remove_outliers."""

    def test_clean_track_unchanged(self):
        """A track at plausible speeds is returned as is."""
        track = make_track(line(20))
        assert remove_outliers(track) is track

    def test_interior_spike_is_interpolated(self):
        """A single jump is removed and the gap refilled on the original grid."""
        positions = line(30)
        spiked = positions.copy()
        spiked[15, 0] += 5000.0
        cleaned = remove_outliers(make_track(spiked))

        assert cleaned.length == 30
        np.testing.assert_allclose(cleaned.positions, positions, atol=1e-9)

    def test_leading_outlier_is_extrapolated(self):
        """An outlier at the start is refilled from the kept states without shortening the track."""
        positions = line(30)
        bumped = positions.copy()
        bumped[0, 2] += 400.0
        cleaned = remove_outliers(make_track(bumped))

        assert cleaned.length == 30
        assert cleaned.timestamps[0] == 0.0
        np.testing.assert_allclose(cleaned.positions, positions, atol=1e-9)

    def test_trailing_outlier_is_extrapolated(self):
        """An outlier at the end continues the last kept segment."""
        positions = line(30)
        bumped = positions.copy()
        bumped[-1, 0] -= 5000.0
        cleaned = remove_outliers(make_track(bumped))

        assert cleaned.length == 30
        np.testing.assert_allclose(cleaned.positions, positions, atol=1e-9)

    def test_too_noisy(self):
        """Too many flagged states reject the flight."""
        positions = line(20)
        positions[::3, 0] += 5000.0
        with pytest.raises(PreprocessError, match="too noisy"):
            remove_outliers(make_track(positions), OutlierConfig(max_fraction=0.2))


class TestSmoothing:
    """Tests for savgol_smooth."""

    def test_cubic_signal_is_preserved(self):
        """A cubic trajectory passes through a polyorder-3 filter unchanged."""
        t = np.linspace(-1.0, 1.0, 41)
        positions = np.column_stack([t**3 - t, 2.0 * t**2, 0.5 * t**3 + t**2 - 3.0])
        smoothed = savgol_smooth(make_track(positions), SmoothingConfig(window=11, polyorder=3))
        np.testing.assert_allclose(smoothed.positions, positions, atol=1e-9)

    def test_short_track_passes_through(self):
        """Tracks shorter than the window are left alone."""
        track = make_track(line(5))
        assert savgol_smooth(track) is track

    def test_disabled_is_identity(self):
        """A disabled smoother returns the track untouched."""
        track = make_track(line(40))
        assert savgol_smooth(track, SmoothingConfig(enabled=False)) is track

    def test_even_window_rejected(self):
        """Window lengths must be odd."""
        with pytest.raises(ValidationError, match="odd"):
            SmoothingConfig(window=10)


class TestScaleAndDownsample:
    """Tests for scale_by_rmax and downsample."""

    def test_scale_divides_by_rmax(self, frame):
        """All three axes are divided by r_max."""
        track = make_track([[500, -1000, 250], [0, 0, 0]])
        scaled = scale_by_rmax(track, frame)
        assert scaled.scaled
        np.testing.assert_allclose(scaled.positions[0], [0.5, -1.0, 0.25])

    def test_scale_twice(self, frame):
        """Scaling is applied once only."""
        scaled = scale_by_rmax(make_track([[1, 0, 0], [0, 0, 0]]), frame)
        with pytest.raises(PreprocessError, match="already scaled"):
            scale_by_rmax(scaled, frame)

    def test_to_trajectory_requires_scaling(self):
        """Unscaled tracks cannot be exported."""
        with pytest.raises(PreprocessError, match="must be scaled"):
            make_track(line(3)).to_trajectory()

    def test_downsample_keeps_every_nth(self):
        """Every fifth state is kept starting with the first."""
        track = downsample(make_track(line(12)), 5)
        assert track.timestamps.tolist() == [0.0, 5.0, 10.0]

    def test_downsample_interval(self):
        """Intervals below one second are rejected."""
        with pytest.raises(PreprocessError, match=">= 1 second"):
            downsample(make_track(line(3)), 0)
