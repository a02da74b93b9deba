"""Downstream evaluation: instance vectors, classification, clustering and sweeps."""

import logging
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.errors import EvaluationError
from src.features.geometry import FeatureSelector, feature_dataset
from src.parallel import ordered_map
from src.trajectories.models import Dataset, ReprSeq

from .kmeans import kmeans
from .metrics import accuracy, ari, mutual_information, nmi
from .svm import svm_rbf_fit, svm_rbf_predict

logger = logging.getLogger(__name__)


class InstanceRepr(BaseModel):
    """One vector per trajectory with aligned labels."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    ids: list[str]
    vectors: np.ndarray
    labels: np.ndarray

    @model_validator(mode="after")
    def validate_alignment(self) -> "InstanceRepr":
        """Validate that vectors, ids and labels have one entry per trajectory."""
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.ids) or self.labels.size != len(self.ids):
            raise ValueError(
                f"{len(self.ids)} ids, {self.vectors.shape} vectors and {self.labels.size} labels do not align"
            )
        return self


class EvalScores(BaseModel):
    """Scores of one evaluation run."""

    acc: float
    nmi: float
    ari: float
    seed: int = 0
    C: float = 1.0
    gamma: float = 0.0
    k: int = 0


def extract_instance_repr(z: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Row i is z[i, lengths[i] - 1]; padding is never selected.

    Raises:
        EvaluationError: If a length is below 1 or beyond the padded size.
    """
    z = np.asarray(z, dtype=np.float64)
    lengths = np.asarray(lengths, dtype=np.int64)
    if np.any(lengths < 1) or np.any(lengths > z.shape[1]):
        raise EvaluationError("every sequence needs a length between 1 and the padded size")
    return z[np.arange(len(lengths)), lengths - 1]


def instance_repr(seqs: Sequence[ReprSeq]) -> InstanceRepr:
    """Collect final-timestep vectors of encoded sequences."""
    return InstanceRepr(
        ids=[s.id for s in seqs],
        vectors=np.vstack([s.instance_vector for s in seqs]),
        labels=np.array([-1 if s.label is None else s.label for s in seqs], dtype=np.int64),
    )


def raw_final_state(dataset: Dataset, selector: FeatureSelector = FeatureSelector.ALL) -> InstanceRepr:
    """No-learning baseline: the geometric features of each final state."""
    features = feature_dataset(dataset, selector)
    return InstanceRepr(
        ids=list(dataset.ids),
        vectors=extract_instance_repr(features, dataset.lengths),
        labels=dataset.labels.copy(),
    )


def evaluate_representations(
    train: InstanceRepr,
    test: InstanceRepr,
    seed: int = 0,
    C: float = 1.0,
    gamma: Optional[float] = None,
    threads: int = 1,
) -> EvalScores:
    """SVM accuracy on test after fitting on train; k-means NMI/ARI on test.

    K-means uses as many clusters as there are distinct test labels.
    """
    if train.labels.size == 0 or test.labels.size == 0:
        raise EvaluationError("evaluation needs non-empty train and test sets")
    if np.any(train.labels < 0) or np.any(test.labels < 0):
        raise EvaluationError("evaluation needs labeled trajectories")

    model = svm_rbf_fit(train.vectors, train.labels, C=C, gamma=gamma, threads=threads)
    acc = accuracy(svm_rbf_predict(model, test.vectors), test.labels)

    k = int(np.unique(test.labels).size)
    clusters = kmeans(test.vectors, k, seed=seed).labels
    scores = EvalScores(
        acc=acc,
        nmi=nmi(clusters, test.labels),
        ari=ari(clusters, test.labels),
        seed=seed,
        C=C,
        gamma=model.gamma,
        k=k,
    )
    logger.info(f"Seed {seed}: acc {scores.acc:.4f}, NMI {scores.nmi:.4f}, ARI {scores.ari:.4f}")
    return scores


def aggregate_seeds(scores: Sequence[EvalScores]) -> dict[str, dict[str, float]]:
    """Mean and population standard deviation of each score across seeds."""
    if not scores:
        raise EvaluationError("no scores to aggregate")
    out: dict[str, dict[str, float]] = {}
    for metric in ("acc", "nmi", "ari"):
        values = np.array([getattr(s, metric) for s in scores])
        out[metric] = {"mean": float(values.mean()), "std": float(values.std())}
    return out


def mi_sweep(
    x: np.ndarray,
    labels: np.ndarray,
    k_min: int,
    k_max: int,
    step: int = 5,
    seed: int = 0,
    threads: int = 1,
) -> list[tuple[int, float]]:
    """Mutual information between k-means clusters and labels for k in
    ``range(k_min, k_max + 1, step)``, each k run with the same seed.

    Raises:
        EvaluationError: If k_min is below the number of classes, the range is
            empty, or k_max exceeds the number of points.
    """
    labels = np.asarray(labels).reshape(-1)
    n_classes = int(np.unique(labels).size)
    if k_min < n_classes:
        raise EvaluationError(f"k_min = {k_min} is below the number of classes {n_classes}")
    if step < 1 or k_max < k_min:
        raise EvaluationError(f"empty sweep range {k_min}..{k_max} step {step}")
    if k_max > len(labels):
        raise EvaluationError(f"k_max = {k_max} exceeds the number of points {len(labels)}")

    def run(k: int) -> tuple[int, float]:
        return k, mutual_information(kmeans(x, k, seed=seed).labels, labels)

    return ordered_map(run, list(range(k_min, k_max + 1, step)), threads)
