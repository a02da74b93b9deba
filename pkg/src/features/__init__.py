"""Geometric feature extraction with ablation subsets."""

from .geometry import (
    FEATURE_NAMES,
    FeatureSelector,
    assemble_features,
    feature_dataset,
    path_vectors,
    polar_components,
)

__all__ = [
    "FEATURE_NAMES",
    "FeatureSelector",
    "assemble_features",
    "feature_dataset",
    "path_vectors",
    "polar_components",
]
