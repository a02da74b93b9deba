"""Batch flattening, segment-ID remapping and the soft-nearest-neighbor loss."""

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.autodiff.tensor import NEG_INF, Tensor, getitem, log_sum_exp, matmul, mean, reshape, transpose
from src.errors import TrainingError

from .config import LossVariant


class FlatBatch(BaseModel):
    """Valid representation rows of a batch with globally unique segment IDs."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    z: Tensor
    ids: np.ndarray

    @property
    def rows(self) -> int:
        return int(self.ids.shape[0])


def remap_ids(segment_ids: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Flatten padded per-instance segment IDs into fresh consecutive globals.

    Instances are visited in order; each local ID is mapped to the next
    unused global ID on first sight, starting from 1.

    Example:
        [1, 1, 2] and [1, 2, 2] become [1, 1, 2, 3, 4, 4].
    """
    segment_ids = np.atleast_2d(np.asarray(segment_ids))
    out: list[np.ndarray] = []
    offset = 0
    for i, length in enumerate(np.asarray(lengths, dtype=np.int64)):
        local = segment_ids[i, :length].astype(np.int64)
        _, inverse = np.unique(local, return_inverse=True)
        out.append(inverse.reshape(-1) + offset + 1)
        offset += int(inverse.max()) + 1 if length else 0
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


def flatten_batch(z: Tensor, lengths: np.ndarray, segment_ids: np.ndarray) -> FlatBatch:
    """Gather valid rows of a (B, T, K) representation tensor in instance order."""
    batch, t_max, k = z.shape
    lengths = np.asarray(lengths, dtype=np.int64)
    rows = np.concatenate([i * t_max + np.arange(length) for i, length in enumerate(lengths)])
    flat = getitem(reshape(z, (batch * t_max, k)), rows)
    return FlatBatch(z=flat, ids=remap_ids(segment_ids, lengths))


def snn_loss(
    z: Tensor,
    ids: np.ndarray,
    tau: float,
    variant: LossVariant = LossVariant.MODIFIED,
) -> Tensor:
    """Soft-nearest-neighbor loss over flattened rows.

    For each anchor i with at least one positive (another row sharing its
    segment ID) the term is

        -[log sum_pos exp(z_i . z_j / tau) - log sum_neg exp(z_i . z_k / tau)]

    where negatives are rows of other segments (MODIFIED) or every other row
    (REARRANGED). Anchors without positives are left out of the mean.

    Raises:
        TrainingError: If tau is not positive, or no anchor has a positive,
            or a MODIFIED anchor has no negative ("degenerate batch").
    """
    if not tau > 0:
        raise TrainingError(f"temperature must be positive, got {tau}")
    ids = np.asarray(ids, dtype=np.int64)
    n = ids.shape[0]
    same = ids[:, None] == ids[None, :]
    not_self = ~np.eye(n, dtype=bool)
    positives = same & not_self
    negatives = ~same if variant == LossVariant.MODIFIED else not_self

    anchors = np.flatnonzero(positives.any(axis=1))
    if anchors.size == 0 or not negatives[anchors].any(axis=1).all():
        raise TrainingError("degenerate batch")

    similarity = matmul(z, transpose(z)) * (1.0 / tau)
    rows = getitem(similarity, anchors)
    pos = log_sum_exp(rows + np.where(positives[anchors], 0.0, NEG_INF), axis=-1)
    neg = log_sum_exp(rows + np.where(negatives[anchors], 0.0, NEG_INF), axis=-1)
    return mean(neg - pos)
