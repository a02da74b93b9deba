"""Shared fixtures: small hand-built trajectory datasets."""

import numpy as np
import pytest

from src.segmentation import RdpParams, segment_dataset
from src.trajectories import Trajectory, pad_dataset


def polyline(vertices: list[tuple[float, float, float]], steps: int) -> np.ndarray:
    """Sample ``steps`` states per leg along straight legs between vertices."""
    vertices = np.asarray(vertices, dtype=np.float64)
    legs = [
        a + (b - a) * np.linspace(0.0, 1.0, steps, endpoint=False)[:, None]
        for a, b in zip(vertices[:-1], vertices[1:])
    ]
    return np.vstack(legs + [vertices[-1:]])


def route_dataset(per_class: int = 6, seed: int = 0):
    """Two classes of dog-leg arrivals turning left or right, with slight jitter."""
    rng = np.random.default_rng(seed)
    routes = {
        0: [(-0.8, -0.6, 0.08), (-0.3, -0.5, 0.05), (-0.1, -0.1, 0.02), (0.0, 0.0, 0.0)],
        1: [(0.8, -0.6, 0.08), (0.3, -0.5, 0.05), (0.1, -0.1, 0.02), (0.0, 0.0, 0.0)],
    }
    trajs = []
    for label, vertices in routes.items():
        for j in range(per_class):
            states = polyline(vertices, steps=6 + j % 3)
            states[:, :2] += rng.normal(0.0, 0.003, size=(len(states), 2))
            trajs.append(Trajectory(id=f"c{label}-{j:02d}", states=np.clip(states, -1.0, 1.0), label=label))
    return pad_dataset(trajs, {"source": "fixture"})


@pytest.fixture
def labeled_dataset():
    """Twelve labeled trajectories of unequal length in two classes."""
    return route_dataset()


@pytest.fixture
def segmented_dataset(labeled_dataset):
    """The labeled dataset with segment IDs at epsilon 0.01."""
    ids = segment_dataset(labeled_dataset, RdpParams(epsilon=0.01))
    return labeled_dataset.model_copy(update={"segment_ids": ids})
