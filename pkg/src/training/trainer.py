"""Contrastive training loop over segment-labeled trajectories."""

import logging
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from src.autodiff.tensor import backward
from src.encoder.checkpoint import Checkpoint
from src.encoder.config import EncoderConfig, EncoderMode
from src.encoder.model import CausalEncoder
from src.errors import TrainingError
from src.features.geometry import feature_dataset
from src.trajectories.models import Dataset

from .config import TrainConfig
from .loss import flatten_batch, snn_loss
from .optim import AdamWState, adamw_step

logger = logging.getLogger(__name__)


class TrainResult(BaseModel):
    """Outcome of a training run."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    checkpoint: Checkpoint
    loss_curve: list[float] = Field(default_factory=list)
    stopped_early: bool = False

    @property
    def epochs_run(self) -> int:
        return len(self.loss_curve)


def batch_order(n: int, batch_size: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Shuffle instance indices and cut them into consecutive batches."""
    order = rng.permutation(n)
    return [order[start : start + batch_size] for start in range(0, n, batch_size)]


def train_step(
    encoder: CausalEncoder,
    optimizer_state: AdamWState,
    features: np.ndarray,
    lengths: np.ndarray,
    segment_ids: np.ndarray,
    config: TrainConfig,
    rng: np.random.Generator,
) -> tuple[float, AdamWState]:
    """Encode, flatten, compute the loss, back-propagate and update once."""
    t_max = int(lengths.max())
    encoder.zero_grad()
    z = encoder.forward(features[:, :t_max], lengths, EncoderMode.TRAIN, rng)
    flat = flatten_batch(z, lengths, segment_ids[:, :t_max])
    loss = snn_loss(flat.z, flat.ids, config.tau, config.loss_variant)
    backward(loss)

    params = encoder.parameters()
    values = {name: p.data for name, p in params.items()}
    grads = {name: p.grad if p.grad is not None else np.zeros_like(p.data) for name, p in params.items()}
    updated, optimizer_state = adamw_step(values, grads, optimizer_state, config.lr, config.weight_decay)
    for name, p in params.items():
        p.data = updated[name]
    return loss.item(), optimizer_state


def train(
    dataset: Dataset,
    encoder_config: EncoderConfig,
    config: TrainConfig,
    features: Optional[np.ndarray] = None,
) -> TrainResult:
    """Train an encoder with the soft-nearest-neighbor objective.

    Every epoch shuffles the instances with the run seed and takes
    ceil(N / B) AdamW steps. Training stops early once the epoch mean loss
    has not improved for ``config.patience`` epochs.

    Args:
        dataset: Trajectories carrying segment IDs computed at ``config.epsilon``.
        encoder_config: Architecture; ``input_dim`` follows the feature selector.
        config: Optimization settings.
        features: Precomputed (N, T_max, F) features; computed from the
            dataset when omitted.

    Raises:
        TrainingError: If the dataset has no segment IDs or every batch of
            an epoch is degenerate.
    """
    if dataset.segment_ids is None:
        raise TrainingError("dataset has no segment IDs; run segmentation first")
    if features is None:
        features = feature_dataset(dataset, config.features)
    if encoder_config.input_dim != features.shape[2]:
        logger.debug(f"Setting encoder input_dim to {features.shape[2]} for features {config.features.value}")
        encoder_config = encoder_config.model_copy(update={"input_dim": int(features.shape[2])})

    encoder = CausalEncoder(encoder_config, seed=config.seed)
    rng = np.random.default_rng([config.seed, 1])
    state = AdamWState()
    curve: list[float] = []
    best = np.inf
    stale = 0
    stopped_early = False

    for epoch in range(1, config.epochs + 1):
        losses = []
        for idx in batch_order(dataset.n, config.batch_size, rng):
            try:
                loss, state = train_step(
                    encoder, state, features[idx], dataset.lengths[idx], dataset.segment_ids[idx], config, rng
                )
            except TrainingError as e:
                logger.debug(f"Skipping batch in epoch {epoch}: {e}")
                continue
            losses.append(loss)
        if not losses:
            raise TrainingError(f"every batch of epoch {epoch} was degenerate; try a smaller epsilon")

        epoch_loss = float(np.mean(losses))
        curve.append(epoch_loss)
        logger.info(f"Epoch {epoch}/{config.epochs}: mean loss {epoch_loss:.6f}")

        if epoch_loss < best:
            best, stale = epoch_loss, 0
        else:
            stale += 1
        if config.patience is not None and stale >= config.patience:
            logger.info(f"Early stop after epoch {epoch}: no improvement for {stale} epochs")
            stopped_early = True
            break

    checkpoint = Checkpoint(
        encoder=encoder,
        train=config.model_dump(mode="json"),
        epsilon=config.epsilon,
        features=config.features.value,
    )
    return TrainResult(checkpoint=checkpoint, loss_curve=curve, stopped_early=stopped_early)


def write_loss_curve(curve: list[float], path: Path) -> None:
    """Write ``epoch,mean_loss`` rows, epochs counted from 1."""
    frame = pd.DataFrame({"epoch": np.arange(1, len(curve) + 1), "mean_loss": curve})
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n", float_format="%.10g")
