"""Encoder checkpoint container.

Layout (little-endian):
    magic ``ATSK`` | u16 version | u32 + JSON config block | u32 P
    then per parameter, in sorted name order:
    u16 name length | UTF-8 name | u16 ndim | ndim x u32 dims | float64 values
"""

from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.databases.clients.binary import BinaryReader, BinaryWriter
from src.errors import FormatError

from .config import EncoderConfig
from .model import CausalEncoder

CHECKPOINT_MAGIC = b"ATSK"
CHECKPOINT_VERSION = 1


class Checkpoint(BaseModel):
    """A trained encoder plus the settings it was trained under."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    encoder: CausalEncoder
    train: dict[str, Any] = Field(default_factory=dict)
    epsilon: Optional[float] = None
    features: str = "all"

    @property
    def config(self) -> EncoderConfig:
        return self.encoder.config


def save_checkpoint(checkpoint: Checkpoint, path: Path) -> None:
    """Write a checkpoint with deterministic parameter ordering."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    block = {
        "encoder": checkpoint.config.model_dump(),
        "train": checkpoint.train,
        "epsilon": checkpoint.epsilon,
        "features": checkpoint.features,
    }
    params = checkpoint.encoder.parameters()
    with open(path, "wb") as f:
        w = BinaryWriter(f)
        w.header(CHECKPOINT_MAGIC, CHECKPOINT_VERSION)
        w.blob_json(block)
        w.u32(len(params))
        for name, tensor in params.items():
            w.text(name)
            w.u16(tensor.ndim)
            for dim in tensor.shape:
                w.u32(dim)
            w.f64_array(tensor.data)


def load_checkpoint(path: Path) -> Checkpoint:
    """Read a checkpoint and rebuild its encoder.

    Raises:
        FileNotFoundError: If the file does not exist.
        FormatError: If the file is malformed or its parameters do not fit
            the stored configuration.
    """
    path = Path(path)
    with open(path, "rb") as f:
        r = BinaryReader(f, path)
        r.header(CHECKPOINT_MAGIC, CHECKPOINT_VERSION)
        block = r.blob_json()
        state: dict[str, np.ndarray] = {}
        for _ in range(r.u32()):
            name = r.text()
            shape = tuple(r.u32() for _ in range(r.u16()))
            state[name] = r.f64_array(int(np.prod(shape, dtype=np.int64))).reshape(shape)
        if not r.at_end():
            raise FormatError(f"trailing bytes after parameters in {path}")

    try:
        encoder = CausalEncoder(EncoderConfig(**block["encoder"]))
        encoder.load_state(state)
    except (KeyError, ValueError) as e:
        raise FormatError(f"checkpoint {path} does not describe a valid encoder: {e}") from e
    return Checkpoint(
        encoder=encoder,
        train=block.get("train", {}),
        epsilon=block.get("epsilon"),
        features=block.get("features", "all"),
    )
