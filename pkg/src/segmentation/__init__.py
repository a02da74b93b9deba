"""Iterative RDP segmentation into per-timestep segment IDs."""

from .rdp import (
    RdpParams,
    assign_segment_ids,
    is_degenerate,
    perpendicular_distance,
    perpendicular_distances,
    rdp_mask,
    segment_count,
    segment_dataset,
)

__all__ = [
    "RdpParams",
    "assign_segment_ids",
    "is_degenerate",
    "perpendicular_distance",
    "perpendicular_distances",
    "rdp_mask",
    "segment_count",
    "segment_dataset",
]
