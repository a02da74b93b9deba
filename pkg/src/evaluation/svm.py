"""One-vs-rest RBF support vector classification."""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from sklearn.multiclass import OneVsRestClassifier
from sklearn.svm import SVC

from src.errors import EvaluationError

logger = logging.getLogger(__name__)


def default_gamma(x: np.ndarray) -> float:
    """1 / (K * variance of all feature values); 1.0 for constant data.

    This is the value ``SVC(gamma="scale")`` resolves to.
    """
    variance = float(np.var(x))
    return 1.0 / (x.shape[1] * variance) if variance > 0 else 1.0


class SvmModel(BaseModel):
    """A trained one-vs-rest classifier and the settings it used."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    classifier: OneVsRestClassifier
    C: float
    gamma: float

    @property
    def classes(self) -> np.ndarray:
        return self.classifier.classes_


def svm_rbf_fit(
    x: np.ndarray,
    labels: np.ndarray,
    C: float = 1.0,
    gamma: Optional[float] = None,
    tol: float = 1e-3,
    threads: int = 1,
) -> SvmModel:
    """Fit one binary RBF machine per class against the rest.

    Raises:
        EvaluationError: If fewer than two classes are present or sizes differ.
    """
    x = np.asarray(x, dtype=np.float64)
    labels = np.asarray(labels).reshape(-1)
    if x.shape[0] != labels.size:
        raise EvaluationError(f"{x.shape[0]} vectors but {labels.size} labels")
    if np.unique(labels).size < 2:
        raise EvaluationError("SVM training needs at least 2 classes")
    gamma = default_gamma(x) if gamma is None else gamma

    classifier = OneVsRestClassifier(SVC(kernel="rbf", C=C, gamma=gamma, tol=tol), n_jobs=threads)
    classifier.fit(x, labels)
    logger.debug(f"Fitted {len(classifier.estimators_)} RBF machines with C={C}, gamma={gamma:.6g}")
    return SvmModel(classifier=classifier, C=C, gamma=gamma)


def svm_decision_function(model: SvmModel, x: np.ndarray) -> np.ndarray:
    """Decision values, shape (N, n_classes) for three or more classes."""
    return model.classifier.decision_function(np.asarray(x, dtype=np.float64))


def svm_rbf_predict(model: SvmModel, x: np.ndarray) -> np.ndarray:
    """Class with the largest decision value."""
    return model.classifier.predict(np.asarray(x, dtype=np.float64))
