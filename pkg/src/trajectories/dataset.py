"""Trajectory validation and NaN padding into a Dataset."""

from typing import Any, Optional

import numpy as np

from src.errors import DatasetError

from .models import UNLABELED, Dataset, Trajectory, Violation


def validate_trajectory(traj: Trajectory) -> list[Violation]:
    """Check the Trajectory invariants.

    Violations are data, not faults: the returned list is empty iff every
    invariant holds.
    """
    violations: list[Violation] = []
    if traj.length < 2:
        violations.append(Violation(invariant="length", message="T_i < 2"))

    finite = np.isfinite(traj.states).all(axis=1)
    for idx in np.flatnonzero(~finite):
        violations.append(
            Violation(
                invariant="finite",
                index=int(idx),
                message=f"non-finite coordinate at index {int(idx)}",
            )
        )

    # Only finite rows can be range-checked; NaN rows were reported above
    horizontal = np.abs(traj.states[:, :2])
    out_of_range = finite & (horizontal > 1.0).any(axis=1)
    for idx in np.flatnonzero(out_of_range):
        violations.append(
            Violation(
                invariant="scaled",
                index=int(idx),
                message=f"|x| or |y| exceeds 1 at index {int(idx)}",
            )
        )
    return violations


def pad_dataset(
    trajs: list[Trajectory],
    metadata: Optional[dict[str, Any]] = None,
) -> Dataset:
    """Pad trajectories with NaN to T_max = max T_i.

    Raises:
        DatasetError: If the list is empty or a trajectory is invalid.
    """
    if not trajs:
        raise DatasetError("empty dataset")
    for traj in trajs:
        violations = validate_trajectory(traj)
        if violations:
            raise DatasetError(f"invalid trajectory {traj.id}: {violations[0].message}")

    lengths = np.array([t.length for t in trajs], dtype=np.int64)
    t_max = int(lengths.max())
    states = np.full((len(trajs), t_max, 3), np.nan, dtype=np.float64)
    for i, traj in enumerate(trajs):
        states[i, : traj.length] = traj.states

    labels = np.array(
        [t.label if t.label is not None else UNLABELED for t in trajs], dtype=np.int64
    )
    return Dataset(
        ids=[t.id for t in trajs],
        states=states,
        lengths=lengths,
        labels=labels,
        metadata=dict(metadata or {}),
    )


def strip_padding(dataset: Dataset) -> list[Trajectory]:
    """Recover the unpadded trajectories of a dataset."""
    trajs: list[Trajectory] = []
    for i, traj_id in enumerate(dataset.ids):
        label = int(dataset.labels[i])
        trajs.append(
            Trajectory(
                id=traj_id,
                states=dataset.valid_states(i).copy(),
                label=None if label == UNLABELED else label,
            )
        )
    return trajs
