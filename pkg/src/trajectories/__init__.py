"""Trajectory models, padding and interchange files."""

from .dataset import pad_dataset, strip_padding, validate_trajectory
from .models import UNLABELED, Dataset, RawRecord, ReprSeq, Trajectory, Violation
from .storage import (
    read_dataset,
    read_labels_csv,
    read_raw_csv,
    read_representations,
    write_dataset,
    write_raw_csv,
    write_representations,
)

__all__ = [
    "Dataset",
    "RawRecord",
    "ReprSeq",
    "Trajectory",
    "UNLABELED",
    "Violation",
    "pad_dataset",
    "read_dataset",
    "read_labels_csv",
    "read_raw_csv",
    "read_representations",
    "strip_padding",
    "validate_trajectory",
    "write_dataset",
    "write_raw_csv",
    "write_representations",
]
