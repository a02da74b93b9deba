"""Training hyperparameters."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.features.geometry import FeatureSelector
from src.trajectories.validators import PositiveFloat


class LossVariant(str, Enum):
    """Which negatives enter the soft-nearest-neighbor denominator."""

    MODIFIED = "modified"  # other segments only
    REARRANGED = "rearranged"  # every other row, positives included


class TrainConfig(BaseModel):
    """Optimization settings for one training run."""

    model_config = ConfigDict(frozen=True)

    batch_size: int = 16
    lr: PositiveFloat = 1e-3
    weight_decay: float = Field(default=0.01, ge=0)
    tau: PositiveFloat = 0.1
    epsilon: PositiveFloat = 0.01
    epochs: int = Field(default=200, ge=1)
    patience: Optional[int] = Field(default=20, ge=1)
    seed: int = 0
    loss_variant: LossVariant = LossVariant.MODIFIED
    features: FeatureSelector = FeatureSelector.ALL

    @field_validator("batch_size")
    @classmethod
    def validate_batch_size(cls, v: int) -> int:
        """Validate the batch holds at least two trajectories."""
        if v < 2:
            raise ValueError("batch_size must be at least 2 (negatives come from other trajectories)")
        return v
