"""Per-flight cleaning stages: bounding, resampling, outliers, smoothing, scaling."""

import logging
import math
from enum import Enum
from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy.interpolate import interp1d
from scipy.signal import savgol_filter

from src.errors import PreprocessError
from src.trajectories.models import Trajectory

from .enu import EnuFrame

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    """Which end of a flight touches the airport."""

    ARRIVAL = "arrival"
    DEPARTURE = "departure"


class OutlierConfig(BaseModel):
    """Physical speed bounds used to flag outlier states."""

    max_horizontal_speed_mps: float = Field(default=350.0, gt=0)
    max_vertical_speed_mps: float = Field(default=60.0, gt=0)
    max_fraction: float = Field(default=0.2, gt=0, le=1)


class SmoothingConfig(BaseModel):
    """Savitzky-Golay parameters applied per axis at 1 Hz."""

    enabled: bool = True
    window: int = 11
    polyorder: int = 3
    mode: Literal["interp", "mirror", "nearest", "constant", "wrap"] = "interp"

    @field_validator("window")
    @classmethod
    def validate_window(cls, v: int) -> int:
        """Validate the window is odd and at least 3."""
        if v < 3 or v % 2 == 0:
            raise ValueError("window must be odd and >= 3")
        return v


class Track(BaseModel):
    """A timestamped flight track moving through the preprocessing stages."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    flight_id: str
    timestamps: np.ndarray
    positions: np.ndarray
    label: Optional[int] = None
    scaled: bool = False

    @property
    def length(self) -> int:
        return int(self.positions.shape[0])

    def replace(self, **changes: Any) -> "Track":
        """Return a copy with the given fields replaced."""
        return self.model_copy(update=changes)

    def to_trajectory(self) -> Trajectory:
        """Convert a scaled track into a Trajectory.

        Raises:
            PreprocessError: If the track has not been scaled yet.
        """
        if not self.scaled:
            raise PreprocessError(f"flight {self.flight_id} must be scaled before export")
        return Trajectory(id=self.flight_id, states=self.positions.copy(), label=self.label)


def bound_by_radius(
    track: Track,
    frame: EnuFrame,
    direction: Direction = Direction.ARRIVAL,
) -> Track:
    """Keep the contiguous part of the flight inside the horizontal radius.

    Arrivals keep the maximal suffix inside r_max, departures the maximal
    prefix.

    Raises:
        PreprocessError: If fewer than 2 states remain.
    """
    radius = np.hypot(track.positions[:, 0], track.positions[:, 1])
    outside = np.flatnonzero(radius > frame.r_max_m)
    if direction == Direction.ARRIVAL:
        start = int(outside[-1]) + 1 if outside.size else 0
        sl = slice(start, track.length)
    else:
        end = int(outside[0]) if outside.size else track.length
        sl = slice(0, end)

    if sl.stop - sl.start < 2:
        raise PreprocessError("trajectory entirely outside bound")
    return track.replace(timestamps=track.timestamps[sl], positions=track.positions[sl])


def resample_1hz(track: Track) -> Track:
    """Linearly interpolate each axis onto the integer-second grid.

    The grid spans [ceil(t_first), floor(t_last)]; the number of samples is
    whatever the flight duration gives.

    Raises:
        PreprocessError: If timestamps are not strictly increasing or the
            grid spans less than 2 seconds.
    """
    t = track.timestamps
    if np.any(np.diff(t) <= 0):
        raise PreprocessError(f"timestamps of flight {track.flight_id} are not strictly increasing")
    grid = np.arange(math.ceil(t[0]), math.floor(t[-1]) + 1, dtype=np.float64)
    if grid.size < 3:
        raise PreprocessError("resampling span shorter than 2 seconds")

    positions = np.column_stack([np.interp(grid, t, track.positions[:, k]) for k in range(3)])
    return track.replace(timestamps=grid, positions=positions)


def remove_outliers(track: Track, config: Optional[OutlierConfig] = None) -> Track:
    """Drop states with physically impossible implied speeds.

    A state is an outlier if the implied speed to either neighbor exceeds the
    horizontal or vertical bound. Flagged states are re-filled linearly from
    the kept ones on the original grid; leading and trailing runs are
    extrapolated from the nearest two kept states, so the length never changes.

    Raises:
        PreprocessError: If more than ``max_fraction`` of states are flagged.
    """
    config = config or OutlierConfig()
    dt = np.diff(track.timestamps)
    step = np.diff(track.positions, axis=0)
    horizontal = np.hypot(step[:, 0], step[:, 1]) / dt
    vertical = np.abs(step[:, 2]) / dt
    bad_step = (horizontal > config.max_horizontal_speed_mps) | (vertical > config.max_vertical_speed_mps)

    flagged = np.zeros(track.length, dtype=bool)
    flagged[:-1] |= bad_step
    flagged[1:] |= bad_step
    if not flagged.any():
        return track
    if flagged.mean() > config.max_fraction:
        raise PreprocessError("trajectory too noisy")

    kept = np.flatnonzero(~flagged)
    if kept.size < 2:
        raise PreprocessError("trajectory too noisy")
    logger.debug(f"Flight {track.flight_id}: {int(flagged.sum())} outlier states removed")

    refill = interp1d(
        track.timestamps[kept], track.positions[kept], axis=0, kind="linear", fill_value="extrapolate"
    )
    return track.replace(positions=refill(track.timestamps))


def savgol_smooth(track: Track, config: Optional[SmoothingConfig] = None) -> Track:
    """Smooth each axis with a Savitzky-Golay filter.

    Tracks shorter than the window pass through unchanged with a warning.
    """
    config = config or SmoothingConfig()
    if not config.enabled:
        return track
    if track.length < config.window:
        logger.warning(
            f"Flight {track.flight_id}: {track.length} states is shorter than smoothing window "
            f"{config.window}, not smoothed"
        )
        return track
    smoothed = savgol_filter(
        track.positions, config.window, config.polyorder, axis=0, mode=config.mode
    )
    return track.replace(positions=smoothed)


def scale_by_rmax(track: Track, frame: EnuFrame) -> Track:
    """Divide every coordinate by r_max, mapping the bounded area into [-1, 1].

    Raises:
        PreprocessError: If the track was already scaled.
    """
    if track.scaled:
        raise PreprocessError(f"flight {track.flight_id} is already scaled")
    return track.replace(positions=track.positions / frame.r_max_m, scaled=True)


def downsample(track: Track, every_s: int) -> Track:
    """Keep every ``every_s``-th state of a 1 Hz track, starting with the first."""
    if every_s < 1:
        raise PreprocessError("downsample interval must be >= 1 second")
    if every_s == 1:
        return track
    return track.replace(
        timestamps=track.timestamps[::every_s],
        positions=track.positions[::every_s],
    )
