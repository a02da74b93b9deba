"""Principal component projection for 2-D visual inspection."""

import numpy as np
from pydantic import BaseModel, ConfigDict
from sklearn.decomposition import PCA

from src.errors import EvaluationError


class Projection(BaseModel):
    """Projected coordinates and the basis that produced them."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    coords: np.ndarray
    components: np.ndarray
    mean: np.ndarray
    explained_variance_ratio: np.ndarray


def pca_project(x: np.ndarray, dims: int = 2) -> Projection:
    """Project mean-centered rows onto the top principal components.

    Each component is signed so its largest-magnitude loading is positive.

    Raises:
        EvaluationError: If there are fewer rows than ``dims`` or ``dims``
            exceeds the vector size.
    """
    x = np.asarray(x, dtype=np.float64)
    n, k = x.shape
    if n < dims:
        raise EvaluationError(f"PCA to {dims} dimensions needs at least {dims} rows, got {n}")
    if dims > k:
        raise EvaluationError(f"cannot project {k}-dimensional vectors to {dims} dimensions")

    pca = PCA(n_components=dims, svd_solver="full").fit(x)
    components = pca.components_
    pivots = np.argmax(np.abs(components), axis=1)
    signs = np.sign(components[np.arange(dims), pivots])
    components = components * np.where(signs == 0, 1.0, signs)[:, None]

    # constant input has zero total variance
    ratio = np.nan_to_num(pca.explained_variance_ratio_, nan=0.0)
    return Projection(
        coords=(x - pca.mean_) @ components.T,
        components=components,
        mean=pca.mean_,
        explained_variance_ratio=ratio,
    )
