"""Encoder hyperparameters and named presets."""

from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.errors import ConfigError
from src.trajectories.validators import Rate


class EncoderMode(str, Enum):
    """Forward-pass mode; masking and dropout run only in TRAIN."""

    TRAIN = "train"
    EVAL = "eval"


class EncoderConfig(BaseModel):
    """Shape and regularization settings of the causal encoder."""

    model_config = ConfigDict(frozen=True)

    layers: int = Field(default=2, ge=1)
    model_dim: int = Field(default=64, ge=1)
    ff_dim: int = Field(default=256, ge=1)
    heads: int = Field(default=4, ge=1)
    attn_dropout: Rate = 0.35
    mask_prob: Rate = 0.2
    repr_dim: int = Field(default=32, ge=1)
    input_dim: int = Field(default=9, ge=1)
    init_std: float = Field(default=0.02, gt=0)

    # Ablation toggles
    random_masking: bool = True
    token_l2_norm: bool = True
    repr_l2_norm: bool = True

    @model_validator(mode="after")
    def validate_heads(self) -> "EncoderConfig":
        """Validate the model dimension splits evenly across heads."""
        if self.model_dim % self.heads != 0:
            raise ValueError(f"model_dim {self.model_dim} is not divisible by heads {self.heads}")
        return self

    @property
    def head_dim(self) -> int:
        return self.model_dim // self.heads


PRESETS: dict[str, dict[str, Any]] = {
    "desk": dict(layers=2, model_dim=64, ff_dim=256, heads=4, repr_dim=32),
    "paper": dict(layers=12, model_dim=768, ff_dim=3072, heads=12, repr_dim=320),
}


def encoder_preset(name: str, **overrides: Any) -> EncoderConfig:
    """Build a config from a named preset plus field overrides.

    Raises:
        ConfigError: If the preset name is unknown.
    """
    if name not in PRESETS:
        raise ConfigError(f"unknown encoder preset {name!r} (choose from {', '.join(PRESETS)})")
    return EncoderConfig(**{**PRESETS[name], **overrides})
