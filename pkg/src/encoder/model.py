"""Causal transformer encoder with no positional encoding.

Input projection F -> E with token L2 normalization, a stack of pre-norm
blocks (masked multi-head self-attention and a GELU feed-forward, both
residual), a final layer norm, and an output projection E -> K with
representation L2 normalization.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from src.autodiff.tensor import (
    Tensor,
    dropout_mask_apply,
    gelu,
    l2_normalize,
    layer_norm,
    masked_softmax,
    matmul,
    reshape,
    slice_axis,
    transpose,
)
from src.errors import ShapeError
from src.trajectories.models import ReprSeq

from .config import EncoderConfig, EncoderMode
from .masks import build_attention_mask, sample_binomial_mask, valid_mask

logger = logging.getLogger(__name__)


class CausalEncoder:
    """Parameters and forward pass of the encoder."""

    def __init__(self, config: EncoderConfig, seed: int = 0):
        self.config = config
        self.params: dict[str, Tensor] = {}
        rng = np.random.default_rng(seed)
        c = config
        self._linear(rng, "input", c.input_dim, c.model_dim)
        for layer in range(c.layers):
            prefix = f"blocks.{layer:02d}"
            self._norm(f"{prefix}.ln1", c.model_dim)
            self._linear(rng, f"{prefix}.attn.qkv", c.model_dim, 3 * c.model_dim)
            self._linear(rng, f"{prefix}.attn.out", c.model_dim, c.model_dim)
            self._norm(f"{prefix}.ln2", c.model_dim)
            self._linear(rng, f"{prefix}.ff.in", c.model_dim, c.ff_dim)
            self._linear(rng, f"{prefix}.ff.out", c.ff_dim, c.model_dim)
        self._norm("final_ln", c.model_dim)
        self._linear(rng, "output", c.model_dim, c.repr_dim)

    def _linear(self, rng: np.random.Generator, name: str, fan_in: int, fan_out: int) -> None:
        weight = rng.normal(0.0, self.config.init_std, size=(fan_in, fan_out))
        self.params[f"{name}.weight"] = Tensor(weight, requires_grad=True)
        self.params[f"{name}.bias"] = Tensor(np.zeros(fan_out), requires_grad=True)

    def _norm(self, name: str, dim: int) -> None:
        self.params[f"{name}.gain"] = Tensor(np.ones(dim), requires_grad=True)
        self.params[f"{name}.bias"] = Tensor(np.zeros(dim), requires_grad=True)

    def parameters(self) -> dict[str, Tensor]:
        """Named parameters in sorted name order."""
        return {name: self.params[name] for name in sorted(self.params)}

    def zero_grad(self) -> None:
        for p in self.params.values():
            p.grad = None

    def load_state(self, state: dict[str, np.ndarray]) -> None:
        """Replace parameter values by name.

        Raises:
            ShapeError: If names or shapes do not match this architecture.
        """
        if set(state) != set(self.params):
            missing = sorted(set(self.params) - set(state))
            extra = sorted(set(state) - set(self.params))
            raise ShapeError(f"parameter names do not match (missing {missing}, unexpected {extra})")
        for name, values in state.items():
            values = np.asarray(values, dtype=np.float64)
            if values.shape != self.params[name].shape:
                raise ShapeError(
                    f"parameter {name}: expected shape {self.params[name].shape}, got {values.shape}"
                )
            self.params[name] = Tensor(values.copy(), requires_grad=True)

    def _affine(self, x: Tensor, name: str) -> Tensor:
        return matmul(x, self.params[f"{name}.weight"]) + self.params[f"{name}.bias"]

    def _norm_apply(self, x: Tensor, name: str) -> Tensor:
        return layer_norm(x, self.params[f"{name}.gain"], self.params[f"{name}.bias"])

    def _attention(
        self,
        x: Tensor,
        prefix: str,
        mask: np.ndarray,
        mode: EncoderMode,
        rng: Optional[np.random.Generator],
    ) -> Tensor:
        c = self.config
        batch, t_max, _ = x.shape
        qkv = self._affine(x, f"{prefix}.attn.qkv")

        def heads(start: int) -> Tensor:
            part = slice_axis(qkv, 2, start, start + c.model_dim)
            return transpose(reshape(part, (batch, t_max, c.heads, c.head_dim)), (0, 2, 1, 3))

        q, k, v = heads(0), heads(c.model_dim), heads(2 * c.model_dim)
        scores = matmul(q, transpose(k, (0, 1, 3, 2))) * (1.0 / math.sqrt(c.head_dim))
        weights = masked_softmax(scores, mask)
        if mode == EncoderMode.TRAIN and c.attn_dropout > 0.0:
            keep = rng.random(weights.shape) >= c.attn_dropout
            weights = dropout_mask_apply(weights, keep / (1.0 - c.attn_dropout))
        context = transpose(matmul(weights, v), (0, 2, 1, 3))
        return self._affine(reshape(context, (batch, t_max, c.model_dim)), f"{prefix}.attn.out")

    def forward(
        self,
        features: np.ndarray,
        lengths: np.ndarray,
        mode: EncoderMode = EncoderMode.EVAL,
        rng: Optional[np.random.Generator] = None,
    ) -> Tensor:
        """Encode a NaN-padded feature batch.

        Args:
            features: (B, T, F) array; entries at t >= length are ignored.
            lengths: Valid length of each sequence.
            mode: TRAIN enables random masking and attention dropout.
            rng: Source of randomness, required in TRAIN mode.

        Returns:
            (B, T, K) tensor. Rows at padded timesteps are finite but
            carry no meaning.

        Raises:
            ShapeError: If the feature dimension differs from input_dim.
        """
        c = self.config
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 3 or features.shape[2] != c.input_dim:
            raise ShapeError(
                f"encoder expects features (B, T, {c.input_dim}), got {features.shape}"
            )
        if mode == EncoderMode.TRAIN and rng is None:
            raise ValueError("training-mode forward needs a random generator")
        lengths = np.asarray(lengths, dtype=np.int64)
        batch, t_max, _ = features.shape

        inputs = np.where(valid_mask(lengths, t_max)[..., None], np.nan_to_num(features), 0.0)
        keep = None
        if mode == EncoderMode.TRAIN and c.random_masking and c.mask_prob > 0.0:
            keep = sample_binomial_mask(lengths, t_max, c.mask_prob, rng)
            inputs = inputs * keep[..., None]
        mask = build_attention_mask(lengths, t_max, keep)

        h = self._affine(Tensor(inputs), "input")
        if c.token_l2_norm:
            h = l2_normalize(h, axis=-1)
        for layer in range(c.layers):
            prefix = f"blocks.{layer:02d}"
            h = h + self._attention(self._norm_apply(h, f"{prefix}.ln1"), prefix, mask, mode, rng)
            hidden = gelu(self._affine(self._norm_apply(h, f"{prefix}.ln2"), f"{prefix}.ff.in"))
            h = h + self._affine(hidden, f"{prefix}.ff.out")
        z = self._affine(self._norm_apply(h, "final_ln"), "output")
        if c.repr_l2_norm:
            z = l2_normalize(z, axis=-1)
        return z


def pad_features(sequences: Sequence[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Stack variable-length (T_i, F) arrays into a NaN-padded batch."""
    lengths = np.array([len(s) for s in sequences], dtype=np.int64)
    n_features = sequences[0].shape[1]
    batch = np.full((len(sequences), int(lengths.max()), n_features), np.nan)
    for i, seq in enumerate(sequences):
        batch[i, : len(seq)] = seq
    return batch, lengths


def encode(
    encoder: CausalEncoder,
    sequences: Sequence[np.ndarray],
    mode: EncoderMode = EncoderMode.EVAL,
    rng: Optional[np.random.Generator] = None,
) -> list[np.ndarray]:
    """Encode a list of (T_i, F) feature sequences into (T_i, K) arrays."""
    if not sequences:
        return []
    batch, lengths = pad_features([np.asarray(s, dtype=np.float64) for s in sequences])
    z = encoder.forward(batch, lengths, mode, rng).data
    return [z[i, :length].copy() for i, length in enumerate(lengths)]


def encode_dataset(
    encoder: CausalEncoder,
    features: np.ndarray,
    lengths: np.ndarray,
    ids: Sequence[str],
    labels: Optional[np.ndarray] = None,
    batch_size: int = 16,
) -> list[ReprSeq]:
    """Eval-mode representations for a padded feature array, in input order."""
    out: list[ReprSeq] = []
    for start in range(0, len(ids), batch_size):
        stop = min(start + batch_size, len(ids))
        block_lengths = np.asarray(lengths[start:stop], dtype=np.int64)
        z = encoder.forward(features[start:stop, : int(block_lengths.max())], block_lengths).data
        for j, i in enumerate(range(start, stop)):
            label = None if labels is None or labels[i] < 0 else int(labels[i])
            out.append(ReprSeq(id=ids[i], vectors=z[j, : block_lengths[j]], label=label))
    logger.debug(f"Encoded {len(out)} sequences")
    return out
