"""YAML run configuration.

Preprocessing keys sit at the top level; ``encoder``, ``train`` and
``evaluation`` sections override built-in defaults. Explicit command-line
flags are applied last as overrides.
"""

from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.encoder.config import EncoderConfig, encoder_preset
from src.errors import ConfigError
from src.preprocess.filters import Direction, OutlierConfig, SmoothingConfig
from src.preprocess.pipeline import PreprocessConfig
from src.training.config import TrainConfig
from src.trajectories.validators import Latitude, Longitude, PositiveFloat


class EvaluationSection(BaseModel):
    """Downstream protocol settings."""

    model_config = ConfigDict(extra="forbid")

    C: PositiveFloat = 1.0
    gamma: Optional[PositiveFloat] = None
    k_min: Optional[int] = None
    k_max: int = 100
    step: int = Field(default=5, ge=1)


class AtsccConfig(BaseModel):
    """Contents of a ``--config`` file."""

    model_config = ConfigDict(extra="forbid")

    ref_lat: Optional[Latitude] = None
    ref_lon: Optional[Longitude] = None
    ref_alt_m: float = 0.0
    r_max_m: Optional[PositiveFloat] = None
    direction: Direction = Direction.ARRIVAL
    downsample_s: int = Field(default=1, ge=1)
    outliers: OutlierConfig = Field(default_factory=OutlierConfig)
    smoothing: SmoothingConfig = Field(default_factory=SmoothingConfig)
    encoder: dict[str, Any] = Field(default_factory=dict)
    train: dict[str, Any] = Field(default_factory=dict)
    evaluation: EvaluationSection = Field(default_factory=EvaluationSection)

    def preprocess_config(self, **overrides: Any) -> PreprocessConfig:
        """Preprocessing settings; the reference frame must come from somewhere.

        Raises:
            ConfigError: If the frame is incomplete or a value is invalid.
        """
        values = self.model_dump(
            include={"ref_lat", "ref_lon", "ref_alt_m", "r_max_m", "direction", "downsample_s", "outliers", "smoothing"}
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        missing = [k for k in ("ref_lat", "ref_lon", "r_max_m") if values.get(k) is None]
        if missing:
            raise ConfigError(f"preprocessing needs {', '.join(missing)} (config file or flags)")
        return _build(PreprocessConfig, values)

    def encoder_config(self, **overrides: Any) -> EncoderConfig:
        """Encoder settings from the named preset plus section and flag overrides."""
        section = dict(self.encoder)
        preset: Literal["desk", "paper"] = section.pop("preset", "desk")
        section.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return encoder_preset(preset, **section)
        except ValidationError as e:
            raise ConfigError(f"invalid encoder settings: {e}") from e

    def train_config(self, **overrides: Any) -> TrainConfig:
        values = dict(self.train)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return _build(TrainConfig, values)


def _build(model: type[BaseModel], values: dict[str, Any]) -> Any:
    try:
        return model.model_validate(values)
    except ValidationError as e:
        raise ConfigError(f"invalid {model.__name__} settings: {e}") from e


def load_config(path: Optional[Path] = None) -> AtsccConfig:
    """Load a configuration file, or the defaults when no path is given.

    Raises:
        FileNotFoundError: If the file does not exist.
        ConfigError: If the file is not valid YAML or has unknown keys.
    """
    if path is None:
        return AtsccConfig()
    with open(path, encoding="utf-8") as f:
        try:
            document = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML in {path}: {e}") from e
    if not isinstance(document, dict):
        raise ConfigError(f"config file {path} must hold a mapping")
    try:
        return AtsccConfig.model_validate(document)
    except ValidationError as e:
        raise ConfigError(f"invalid config {path}: {e}") from e
