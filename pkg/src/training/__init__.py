"""Contrastive training: loss, optimizer, training loop and grid search."""

from .config import LossVariant, TrainConfig
from .gridsearch import GRID_COLUMNS, GridCell, GridResult, grid_search, validation_split, write_grid_table
from .loss import FlatBatch, flatten_batch, remap_ids, snn_loss
from .optim import AdamWState, adamw_step
from .trainer import TrainResult, batch_order, train, train_step, write_loss_curve

__all__ = [
    "GRID_COLUMNS",
    "AdamWState",
    "FlatBatch",
    "GridCell",
    "GridResult",
    "LossVariant",
    "TrainConfig",
    "TrainResult",
    "adamw_step",
    "batch_order",
    "flatten_batch",
    "grid_search",
    "remap_ids",
    "snn_loss",
    "train",
    "train_step",
    "validation_split",
    "write_grid_table",
    "write_loss_curve",
]
