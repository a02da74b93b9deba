"""Classification and clustering evaluation of learned representations."""

from .kmeans import KMeansResult, kmeans
from .metrics import ContingencyTable, accuracy, ari, contingency_table, entropy, mi, mutual_information, nmi
from .projection import Projection, pca_project
from .protocol import (
    EvalScores,
    InstanceRepr,
    aggregate_seeds,
    evaluate_representations,
    extract_instance_repr,
    instance_repr,
    mi_sweep,
    raw_final_state,
)
from .reports import METRICS_COLUMNS, write_metrics_csv, write_projection_csv, write_sweep_csv
from .svm import SvmModel, default_gamma, svm_decision_function, svm_rbf_fit, svm_rbf_predict

__all__ = [
    "METRICS_COLUMNS",
    "ContingencyTable",
    "EvalScores",
    "InstanceRepr",
    "KMeansResult",
    "Projection",
    "SvmModel",
    "accuracy",
    "aggregate_seeds",
    "ari",
    "contingency_table",
    "default_gamma",
    "entropy",
    "evaluate_representations",
    "extract_instance_repr",
    "instance_repr",
    "kmeans",
    "mi",
    "mi_sweep",
    "mutual_information",
    "nmi",
    "pca_project",
    "raw_final_state",
    "svm_decision_function",
    "svm_rbf_fit",
    "svm_rbf_predict",
    "write_metrics_csv",
    "write_projection_csv",
    "write_sweep_csv",
]
