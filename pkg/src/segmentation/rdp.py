"""Significant-point marking with iterative Ramer-Douglas-Peucker and segment IDs."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from src.errors import SegmentationError
from src.parallel import ordered_map
from src.trajectories.models import Dataset

logger = logging.getLogger(__name__)


class RdpParams(BaseModel):
    """RDP tolerance on scaled coordinates."""

    model_config = ConfigDict(frozen=True)

    epsilon: float

    @field_validator("epsilon")
    @classmethod
    def validate_epsilon(cls, v: float) -> float:
        """Validate epsilon is strictly positive."""
        if not np.isfinite(v) or v <= 0:
            raise ValueError("epsilon must be positive")
        return v


def perpendicular_distances(points: np.ndarray, start: np.ndarray, end: np.ndarray) -> np.ndarray:
    """Distances from each point (n, 3) to the line through start and end."""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    direction = end - start
    length = np.sqrt(np.sum(direction * direction))
    if length == 0.0:
        offset = points - start
        return np.sqrt(np.sum(offset * offset, axis=1))
    cross = np.cross(direction, start - points)
    return np.sqrt(np.sum(cross * cross, axis=1)) / length


def perpendicular_distance(point: np.ndarray, seg_start: np.ndarray, seg_end: np.ndarray) -> float:
    """Distance from a point to the line through seg_start and seg_end.

    A degenerate segment (start equals end) falls back to point distance.
    """
    return float(
        perpendicular_distances(
            np.asarray(point, dtype=np.float64),
            np.asarray(seg_start, dtype=np.float64),
            np.asarray(seg_end, dtype=np.float64),
        )[0]
    )


def rdp_mask(positions: np.ndarray, params: RdpParams) -> np.ndarray:
    """Mark significant points with the stack-based iterative RDP.

    Intervals are popped last-in-first-out. Within an interval the candidate
    with the largest distance wins, ties going to the lowest index.

    Returns:
        int64 array of 0/1 bits, first and last set.

    Raises:
        SegmentationError: If fewer than 2 positions are given.
    """
    positions = np.asarray(positions, dtype=np.float64)[:, :3]
    n = positions.shape[0]
    if n < 2:
        raise SegmentationError("RDP needs at least 2 positions")

    mask = np.ones(n, dtype=np.int64)
    stack = [(0, n - 1)]
    while stack:
        s, e = stack.pop()
        if e - s < 2:
            continue
        interior = np.arange(s + 1, e)
        d = perpendicular_distances(positions[s + 1 : e], positions[s], positions[e])
        d = np.where(mask[s + 1 : e] == 1, d, -np.inf)
        k = int(np.argmax(d))
        d_max = d[k]
        if d_max > params.epsilon:
            t = int(interior[k])
            stack.append((s, t))
            stack.append((t, e))
        else:
            mask[s + 1 : e] = 0
    return mask


def assign_segment_ids(mask: np.ndarray) -> np.ndarray:
    """Cumulative-sum segment IDs; the final timestep inherits the previous ID."""
    mask = np.asarray(mask, dtype=np.int64)
    ids = np.cumsum(mask)
    if ids.size >= 2:
        ids[-1] = ids[-2]
    return ids


def segment_count(ids: np.ndarray) -> int:
    """Number of distinct segments in one ID sequence."""
    return int(np.unique(ids).size)


def segment_dataset(dataset: Dataset, params: RdpParams, threads: int = 1) -> np.ndarray:
    """Segment IDs for every trajectory, NaN-padded to T_max.

    Returns:
        float64 array (N, T_max) aligned index-for-index with the states.
    """
    def run(i: int) -> np.ndarray:
        return assign_segment_ids(rdp_mask(dataset.valid_states(i), params))

    rows = ordered_map(run, range(dataset.n), threads)
    out = np.full((dataset.n, dataset.t_max), np.nan, dtype=np.float64)
    for i, ids in enumerate(rows):
        out[i, : len(ids)] = ids
    logger.debug(f"Segmented {dataset.n} trajectories at epsilon {params.epsilon}")
    return out


def is_degenerate(segment_ids: np.ndarray, lengths: np.ndarray) -> bool:
    """True when every trajectory is a single segment (no split happened)."""
    return all(
        segment_count(segment_ids[i, :length]) == 1 for i, length in enumerate(lengths)
    )
