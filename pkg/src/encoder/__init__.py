"""Causal transformer encoder, masks and checkpoints."""

from .checkpoint import CHECKPOINT_MAGIC, Checkpoint, load_checkpoint, save_checkpoint
from .config import PRESETS, EncoderConfig, EncoderMode, encoder_preset
from .masks import build_attention_mask, sample_binomial_mask, valid_mask
from .model import CausalEncoder, encode, encode_dataset, pad_features

__all__ = [
    "CHECKPOINT_MAGIC",
    "CausalEncoder",
    "Checkpoint",
    "EncoderConfig",
    "EncoderMode",
    "PRESETS",
    "build_attention_mask",
    "encode",
    "encode_dataset",
    "encoder_preset",
    "load_checkpoint",
    "pad_features",
    "sample_binomial_mask",
    "save_checkpoint",
    "valid_mask",
]
