"""Label-agreement metrics over two labelings of the same items."""

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.stats import entropy as _entropy
from sklearn.metrics import (
    accuracy_score,
    adjusted_rand_score,
    mutual_info_score,
    normalized_mutual_info_score,
)
from sklearn.metrics.cluster import contingency_matrix

from src.errors import EvaluationError


class ContingencyTable(BaseModel):
    """Counts n_uv of items in cluster u (rows) and class v (columns)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    counts: np.ndarray
    row_labels: np.ndarray
    col_labels: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)


def _check_pair(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a, b = np.asarray(a).reshape(-1), np.asarray(b).reshape(-1)
    if a.shape != b.shape:
        raise EvaluationError(f"label vectors differ in length: {a.size} vs {b.size}")
    return a, b


def contingency_table(a: np.ndarray, b: np.ndarray) -> ContingencyTable:
    """Cross-tabulate two labelings of the same items."""
    a, b = _check_pair(a, b)
    return ContingencyTable(
        counts=np.asarray(contingency_matrix(a, b), dtype=np.int64),
        row_labels=np.unique(a),
        col_labels=np.unique(b),
    )


def entropy(labels: np.ndarray) -> float:
    """Shannon entropy of a labeling in nats."""
    labels = np.asarray(labels).reshape(-1)
    if labels.size == 0:
        return 0.0
    _, counts = np.unique(labels, return_counts=True)
    return float(_entropy(counts))


def mutual_information(a: np.ndarray, b: np.ndarray) -> float:
    """Mutual information in nats."""
    a, b = _check_pair(a, b)
    if a.size == 0:
        return 0.0
    return float(mutual_info_score(a, b))


mi = mutual_information


def nmi(a: np.ndarray, b: np.ndarray) -> float:
    """MI normalized by the geometric mean of the two entropies.

    Two constant labelings score 1; a constant labeling against a
    non-constant one scores 0.
    """
    a, b = _check_pair(a, b)
    return float(min(normalized_mutual_info_score(b, a, average_method="geometric"), 1.0))


def ari(a: np.ndarray, b: np.ndarray) -> float:
    """Adjusted Rand index; 1.0 when the adjustment is undefined."""
    a, b = _check_pair(a, b)
    if a.size < 2:
        return 1.0
    return float(adjusted_rand_score(b, a))


def accuracy(predicted: np.ndarray, true: np.ndarray) -> float:
    """Fraction of exact matches."""
    predicted, true = _check_pair(predicted, true)
    if predicted.size == 0:
        raise EvaluationError("accuracy of an empty labeling is undefined")
    return float(accuracy_score(true, predicted))
