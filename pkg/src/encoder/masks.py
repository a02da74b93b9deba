"""Random timestamp masking and additive attention masks."""

import numpy as np

from src.autodiff.tensor import NEG_INF


def valid_mask(lengths: np.ndarray, t_max: int) -> np.ndarray:
    """Boolean (B, T) array, True where t < length."""
    lengths = np.asarray(lengths, dtype=np.int64)
    return np.arange(t_max)[None, :] < lengths[:, None]


def sample_binomial_mask(
    lengths: np.ndarray, t_max: int, mask_prob: float, rng: np.random.Generator
) -> np.ndarray:
    """Keep bits for training-time timestamp masking.

    Every valid timestep is dropped independently with ``mask_prob``; the
    first timestep of each sequence is always kept. One uniform draw is made
    per (sequence, timestep) slot including padding, so the stream of random
    numbers depends only on the batch shape.

    Returns:
        Boolean (B, T) array, True for kept valid timesteps.
    """
    lengths = np.asarray(lengths, dtype=np.int64)
    draws = rng.random((len(lengths), t_max))
    keep = draws >= mask_prob
    keep[:, 0] = True
    return keep & valid_mask(lengths, t_max)


def build_attention_mask(
    lengths: np.ndarray, t_max: int, keep: np.ndarray | None = None
) -> np.ndarray:
    """Additive mask of shape (B, 1, T, T), shared by all heads.

    Key k is hidden from query q when k > q, when k is padding, or when k was
    dropped by random masking. Hidden entries hold NEG_INF, visible ones 0.
    """
    lengths = np.asarray(lengths, dtype=np.int64)
    visible_keys = valid_mask(lengths, t_max)
    if keep is not None:
        visible_keys = visible_keys & keep
    causal = np.tril(np.ones((t_max, t_max), dtype=bool))
    allowed = causal[None, :, :] & visible_keys[:, None, :]
    return np.where(allowed, 0.0, NEG_INF)[:, None, :, :]
