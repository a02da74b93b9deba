"""Raw surveillance data to cleaned, scaled ENU trajectories."""

from .enu import EnuFrame, enu_to_geodetic, geodetic_to_enu, geodetic_to_enu_array
from .filters import (
    Direction,
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
from .pipeline import (
    PreprocessConfig,
    preprocess_pipeline,
    process_enu_track,
    process_flight,
    split_by_hash,
)

__all__ = [
    "Direction",
    "EnuFrame",
    "OutlierConfig",
    "PreprocessConfig",
    "SmoothingConfig",
    "Track",
    "bound_by_radius",
    "downsample",
    "enu_to_geodetic",
    "geodetic_to_enu",
    "geodetic_to_enu_array",
    "preprocess_pipeline",
    "process_enu_track",
    "process_flight",
    "remove_outliers",
    "resample_1hz",
    "savgol_smooth",
    "scale_by_rmax",
    "split_by_hash",
]
