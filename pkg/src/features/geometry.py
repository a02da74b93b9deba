"""Geometric state features: positions, path unit vectors and polar components."""

from enum import Enum

import numpy as np

from src.errors import FeatureError
from src.trajectories.models import Dataset

FEATURE_NAMES = ["x", "y", "z", "u_x", "u_y", "u_z", "r", "sin_theta", "cos_theta"]


class FeatureSelector(str, Enum):
    """Feature groups concatenated in fixed order (position, path, polar)."""

    POS = "pos"
    POS_PATH = "pos+path"
    POS_POLAR = "pos+polar"
    ALL = "all"

    @classmethod
    def parse(cls, value: str) -> "FeatureSelector":
        """Parse a ``--features`` value.

        Raises:
            FeatureError: If the value is empty or unknown.
        """
        if not value:
            raise FeatureError("empty feature selector")
        try:
            return cls(value)
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise FeatureError(f"unknown feature selector {value!r} (choose from {choices})") from None

    @property
    def groups(self) -> tuple[str, ...]:
        return {
            FeatureSelector.POS: ("pos",),
            FeatureSelector.POS_PATH: ("pos", "path"),
            FeatureSelector.POS_POLAR: ("pos", "polar"),
            FeatureSelector.ALL: ("pos", "path", "polar"),
        }[self]

    @property
    def n_features(self) -> int:
        return 3 * len(self.groups)

    @property
    def names(self) -> list[str]:
        offsets = {"pos": 0, "path": 3, "polar": 6}
        return [FEATURE_NAMES[offsets[g] + k] for g in self.groups for k in range(3)]


def path_vectors(positions: np.ndarray) -> np.ndarray:
    """Unit forward-difference direction at every timestep.

    The final timestep repeats the previous vector. A zero displacement
    repeats the previous step's vector; leading zero displacements take the
    first nonzero one.

    Raises:
        FeatureError: If there are fewer than 2 states or the trajectory
            never moves.
    """
    positions = np.asarray(positions, dtype=np.float64)[:, :3]
    if positions.shape[0] < 2:
        raise FeatureError("path vectors need at least 2 states")

    step = np.diff(positions, axis=0)
    norm = np.sqrt(np.sum(step * step, axis=1))
    moving = np.flatnonzero(norm > 0.0)
    if moving.size == 0:
        raise FeatureError("stationary trajectory")

    units = np.zeros_like(step)
    units[moving] = step[moving] / norm[moving, None]
    # Each step takes the last moving step at or before it, or the first one
    source = np.maximum.accumulate(np.where(norm > 0.0, np.arange(len(norm)), -1))
    source[source < 0] = moving[0]
    units = units[source]
    return np.vstack([units, units[-1:]])


def polar_components(positions: np.ndarray) -> np.ndarray:
    """Horizontal range and bearing as (r, sin theta, cos theta).

    theta = arctan2(y, x), with arctan2(0, 0) taken as 0.
    """
    positions = np.asarray(positions, dtype=np.float64)
    x, y = positions[:, 0], positions[:, 1]
    theta = np.arctan2(y, x)
    return np.column_stack([np.sqrt(x * x + y * y), np.sin(theta), np.cos(theta)])


def assemble_features(positions: np.ndarray, selector: FeatureSelector = FeatureSelector.ALL) -> np.ndarray:
    """Concatenate the selected feature groups for one trajectory, shape (T, F)."""
    if selector is None:
        raise FeatureError("empty feature selector")
    positions = np.asarray(positions, dtype=np.float64)[:, :3]
    blocks = []
    for group in selector.groups:
        if group == "pos":
            blocks.append(positions)
        elif group == "path":
            blocks.append(path_vectors(positions))
        else:
            blocks.append(polar_components(positions))
    return np.hstack(blocks)


def feature_dataset(dataset: Dataset, selector: FeatureSelector = FeatureSelector.ALL) -> np.ndarray:
    """Features for every trajectory, NaN-padded to (N, T_max, F)."""
    out = np.full((dataset.n, dataset.t_max, selector.n_features), np.nan, dtype=np.float64)
    for i in range(dataset.n):
        length = int(dataset.lengths[i])
        out[i, :length] = assemble_features(dataset.valid_states(i), selector)
    return out
