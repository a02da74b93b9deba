"""Pydantic models for trajectories, datasets and representations."""

from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .validators import FlightId, Latitude, Longitude

# Label value stored for trajectories without a class
UNLABELED = -1


class RawRecord(BaseModel):
    """A single surveillance report for one flight."""

    model_config = ConfigDict(frozen=True)

    flight_id: FlightId
    timestamp: float
    latitude: Latitude
    longitude: Longitude
    baro_altitude: float

    @field_validator("timestamp", "baro_altitude")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """Validate timestamp and altitude are finite numbers."""
        if not np.isfinite(v):
            raise ValueError("timestamp and baro_altitude must be finite")
        return v


class Trajectory(BaseModel):
    """A variable-length sequence of scaled ENU positions for one flight."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    id: FlightId
    states: np.ndarray
    label: Optional[int] = None

    @field_validator("states", mode="before")
    @classmethod
    def coerce_states(cls, v: Any) -> np.ndarray:
        """Coerce states to a float64 array of shape (T, 3)."""
        arr = np.array(v, dtype=np.float64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 3)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError(f"states must have shape (T, 3), got {arr.shape}")
        return arr

    @property
    def length(self) -> int:
        """Number of states T_i."""
        return int(self.states.shape[0])


class Violation(BaseModel):
    """A failed trajectory invariant."""

    invariant: str
    index: Optional[int] = None
    message: str


class ReprSeq(BaseModel):
    """Per-timestep representation vectors for one trajectory."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    id: str
    vectors: np.ndarray
    label: Optional[int] = None

    @field_validator("vectors", mode="before")
    @classmethod
    def coerce_vectors(cls, v: Any) -> np.ndarray:
        """Coerce vectors to a float64 array of shape (T, K)."""
        arr = np.array(v, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"vectors must have shape (T, K), got {arr.shape}")
        return arr

    @property
    def instance_vector(self) -> np.ndarray:
        """The final-timestep vector summarizing the whole prefix."""
        return self.vectors[-1]


class Dataset(BaseModel):
    """N trajectories padded with NaN to a common length T_max.

    Validity is tracked by ``lengths``; downstream masks derive from it
    and never from scanning for NaN.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    ids: list[str]
    states: np.ndarray
    lengths: np.ndarray
    labels: np.ndarray
    segment_ids: Optional[np.ndarray] = None
    metadata: dict[str, Any] = Field(default_factory=dict)

    @field_validator("lengths", "labels", mode="before")
    @classmethod
    def coerce_int_array(cls, v: Any) -> np.ndarray:
        """Coerce per-instance vectors to int64 arrays."""
        return np.asarray(v, dtype=np.int64).reshape(-1)

    @model_validator(mode="after")
    def validate_shapes(self) -> "Dataset":
        """Validate that all per-instance arrays agree with N and T_max."""
        n = len(self.ids)
        if self.states.ndim != 3 or self.states.shape[0] != n:
            raise ValueError(f"states must have shape (N, T_max, F) with N={n}, got {self.states.shape}")
        if self.lengths.shape != (n,) or self.labels.shape != (n,):
            raise ValueError("lengths and labels must have one entry per trajectory")
        if n and int(self.lengths.max()) != self.states.shape[1]:
            raise ValueError("T_max must equal the maximum recorded length")
        if self.segment_ids is not None and self.segment_ids.shape != self.states.shape[:2]:
            raise ValueError(
                f"segment_ids shape {self.segment_ids.shape} does not match states {self.states.shape[:2]}"
            )
        return self

    @property
    def n(self) -> int:
        """Number of trajectories N."""
        return len(self.ids)

    @property
    def t_max(self) -> int:
        """Padded sequence length."""
        return int(self.states.shape[1])

    @property
    def n_features(self) -> int:
        """Number of stored values per timestep."""
        return int(self.states.shape[2])

    @property
    def is_labeled(self) -> bool:
        """True when every trajectory carries a class label."""
        return bool(self.n) and bool(np.all(self.labels != UNLABELED))

    def valid_states(self, i: int) -> np.ndarray:
        """States of trajectory i without padding."""
        return self.states[i, : self.lengths[i]]

    def valid_segment_ids(self, i: int) -> np.ndarray:
        """Segment IDs of trajectory i without padding, as int64."""
        if self.segment_ids is None:
            raise ValueError("dataset has no segment IDs")
        return self.segment_ids[i, : self.lengths[i]].astype(np.int64)

    def subset(self, indices: list[int] | np.ndarray) -> "Dataset":
        """Select trajectories by index, re-padding to the subset's T_max."""
        idx = np.asarray(indices, dtype=np.int64)
        lengths = self.lengths[idx]
        t_max = int(lengths.max()) if len(idx) else 0
        segment_ids = None
        if self.segment_ids is not None:
            segment_ids = self.segment_ids[idx, :t_max].copy()
        return Dataset(
            ids=[self.ids[i] for i in idx],
            states=self.states[idx, :t_max].copy(),
            lengths=lengths,
            labels=self.labels[idx],
            segment_ids=segment_ids,
            metadata=dict(self.metadata),
        )
