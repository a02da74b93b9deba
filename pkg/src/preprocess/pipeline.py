"""End-to-end preprocessing from raw surveillance records to a padded Dataset."""

import hashlib
import logging
from collections import defaultdict
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from src.errors import PreprocessError
from src.parallel import ordered_map
from src.trajectories.dataset import pad_dataset
from src.trajectories.models import Dataset, RawRecord, Trajectory
from src.trajectories.validators import Latitude, Longitude, PositiveFloat

from .enu import EnuFrame, geodetic_to_enu_array
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

logger = logging.getLogger(__name__)

STAGES = ["sort", "enu", "bound", "resample", "outliers", "smooth", "scale", "downsample"]


class PreprocessConfig(BaseModel):
    """Frame and stage parameters for the preprocessing pipeline."""

    ref_lat: Latitude
    ref_lon: Longitude
    ref_alt_m: float = 0.0
    r_max_m: PositiveFloat
    direction: Direction = Direction.ARRIVAL
    downsample_s: int = Field(default=1, ge=1)
    outliers: OutlierConfig = Field(default_factory=OutlierConfig)
    smoothing: SmoothingConfig = Field(default_factory=SmoothingConfig)

    @property
    def frame(self) -> EnuFrame:
        return EnuFrame(
            ref_lat=self.ref_lat,
            ref_lon=self.ref_lon,
            ref_alt_m=self.ref_alt_m,
            r_max_m=self.r_max_m,
        )


def group_records(records: list[RawRecord]) -> dict[str, list[RawRecord]]:
    """Group records by flight_id, ordered by flight_id."""
    groups: dict[str, list[RawRecord]] = defaultdict(list)
    for record in records:
        groups[record.flight_id].append(record)
    return {fid: groups[fid] for fid in sorted(groups)}


def process_enu_track(track: Track, config: PreprocessConfig) -> Trajectory:
    """Run the ENU-side stages: bound, resample, outliers, smooth, scale, downsample."""
    frame = config.frame
    track = bound_by_radius(track, frame, config.direction)
    track = resample_1hz(track)
    track = remove_outliers(track, config.outliers)
    track = savgol_smooth(track, config.smoothing)
    track = scale_by_rmax(track, frame)
    track = downsample(track, config.downsample_s)
    if track.length < 2:
        raise PreprocessError(f"flight {track.flight_id} has fewer than 2 states after downsampling")
    return track.to_trajectory()


def process_flight(
    flight_id: str,
    records: list[RawRecord],
    config: PreprocessConfig,
    label: Optional[int] = None,
) -> Trajectory:
    """Sort, convert to ENU and clean one flight.

    Raises:
        PreprocessError: If any stage rejects the flight.
    """
    if len(records) < 2:
        raise PreprocessError(f"flight {flight_id} has fewer than 2 records")
    ordered = sorted(records, key=lambda r: r.timestamp)
    enu = geodetic_to_enu_array(
        np.array([r.latitude for r in ordered]),
        np.array([r.longitude for r in ordered]),
        np.array([r.baro_altitude for r in ordered]),
        config.frame,
    )
    track = Track(
        flight_id=flight_id,
        timestamps=np.array([r.timestamp for r in ordered], dtype=np.float64),
        positions=enu,
        label=label,
    )
    return process_enu_track(track, config)


def stage_metadata(config: PreprocessConfig) -> dict:
    """Stage list and parameters recorded in the processed file."""
    return {
        "stages": list(STAGES),
        "preprocess": config.model_dump(mode="json"),
    }


def preprocess_pipeline(
    records: list[RawRecord],
    config: PreprocessConfig,
    labels: Optional[dict[str, int]] = None,
    threads: int = 1,
) -> Dataset:
    """Preprocess raw records into a padded dataset of scaled ENU trajectories.

    Flights failing any stage are dropped and logged.

    Raises:
        PreprocessError: If no flight survives.
    """
    labels = labels or {}
    groups = group_records(records)

    def run(item: tuple[str, list[RawRecord]]) -> Trajectory | PreprocessError:
        flight_id, flight_records = item
        try:
            return process_flight(flight_id, flight_records, config, labels.get(flight_id))
        except PreprocessError as e:
            return e

    results = ordered_map(run, groups.items(), threads)

    trajs: list[Trajectory] = []
    dropped: list[str] = []
    for flight_id, result in zip(groups, results):
        if isinstance(result, PreprocessError):
            logger.warning(f"Dropping flight {flight_id}: {result}")
            dropped.append(flight_id)
        else:
            trajs.append(result)

    if not trajs:
        raise PreprocessError("no flights survived preprocessing")
    logger.info(f"Preprocessed {len(trajs)} flights, dropped {len(dropped)}")

    metadata = stage_metadata(config)
    metadata["dropped"] = dropped
    return pad_dataset(trajs, metadata)


def split_by_hash(ids: list[str], test_fraction: float = 0.5) -> tuple[list[int], list[int]]:
    """Deterministically split flight indices into train and test by ID hash.

    Returns:
        Tuple of (train indices, test indices) in input order.
    """
    if not 0.0 < test_fraction < 1.0:
        raise PreprocessError("test fraction must be in (0, 1)")
    train: list[int] = []
    test: list[int] = []
    for i, flight_id in enumerate(ids):
        digest = hashlib.sha256(flight_id.encode("utf-8")).digest()
        u = int.from_bytes(digest[:8], "big") / 2**64
        (test if u < test_fraction else train).append(i)
    return train, test
