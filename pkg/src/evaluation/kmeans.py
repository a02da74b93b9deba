"""K-means with k-means++ seeding and best-of-restarts selection."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict
from sklearn.cluster import KMeans

from src.errors import EvaluationError

logger = logging.getLogger(__name__)


class KMeansResult(BaseModel):
    """Assignments and centroids of the best restart."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    labels: np.ndarray
    centroids: np.ndarray
    inertia: float
    iterations: int


def kmeans(
    x: np.ndarray,
    k: int,
    seed: int = 0,
    restarts: int = 10,
    max_iter: int = 300,
    tol: float = 1e-4,
) -> KMeansResult:
    """Cluster rows of ``x`` into k groups; the lowest-inertia restart wins.

    Raises:
        EvaluationError: If k < 1 or k exceeds the number of points.
    """
    x = np.asarray(x, dtype=np.float64)
    if k < 1:
        raise EvaluationError(f"k must be at least 1, got {k}")
    if k > x.shape[0]:
        raise EvaluationError(f"k = {k} exceeds the number of points {x.shape[0]}")

    model = KMeans(
        n_clusters=k, init="k-means++", n_init=restarts, max_iter=max_iter, tol=tol, random_state=seed
    ).fit(x)
    logger.debug(f"k-means k={k}: inertia {model.inertia_:.6g} after {model.n_iter_} iterations")
    return KMeansResult(
        labels=model.labels_.astype(np.int64),
        centroids=model.cluster_centers_,
        inertia=float(model.inertia_),
        iterations=int(model.n_iter_),
    )
