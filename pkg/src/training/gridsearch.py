"""Grid search over the RDP tolerance and the loss temperature."""

import logging
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from src.encoder.config import EncoderConfig
from src.encoder.model import encode_dataset
from src.errors import AtsccError, TrainingError
from src.evaluation.protocol import evaluate_representations, instance_repr
from src.features.geometry import feature_dataset
from src.parallel import ordered_map
from src.segmentation.rdp import RdpParams, is_degenerate, segment_dataset
from src.trajectories.models import Dataset

from .config import TrainConfig
from .trainer import train

logger = logging.getLogger(__name__)

GRID_COLUMNS = ["epsilon", "tau", "status", "acc", "nmi", "ari", "epochs", "error"]


class GridCell(BaseModel):
    """Result of training and scoring one (epsilon, tau) pair."""

    epsilon: float
    tau: float
    status: str = "ok"
    acc: Optional[float] = None
    nmi: Optional[float] = None
    ari: Optional[float] = None
    epochs: int = 0
    error: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"


class GridResult(BaseModel):
    """All cells plus the selected one."""

    cells: list[GridCell] = Field(default_factory=list)
    best: GridCell
    selection: str = "validation_split"


def validation_split(
    dataset: Dataset, fraction: float = 0.25, seed: int = 0
) -> tuple[Dataset, Dataset]:
    """Carve a label-stratified validation set out of a training set.

    Each class contributes round(fraction * count) trajectories, at least one
    when it has two or more.

    Raises:
        TrainingError: If the dataset is unlabeled or the split leaves either
            side empty.
    """
    if not dataset.is_labeled:
        raise TrainingError("grid search needs a labeled dataset")
    rng = np.random.default_rng(seed)
    val: list[int] = []
    for label in np.unique(dataset.labels):
        members = rng.permutation(np.flatnonzero(dataset.labels == label))
        take = int(round(fraction * members.size))
        if members.size >= 2:
            take = min(max(take, 1), members.size - 1)
        val.extend(members[:take].tolist())
    val_idx = np.array(sorted(val), dtype=np.int64)
    fit_idx = np.setdiff1d(np.arange(dataset.n), val_idx)
    if val_idx.size == 0 or fit_idx.size == 0:
        raise TrainingError("validation split left an empty side")
    return dataset.subset(fit_idx), dataset.subset(val_idx)


def _score_cell(
    fit: Dataset,
    val: Dataset,
    epsilon: float,
    tau: float,
    encoder_config: EncoderConfig,
    train_config: TrainConfig,
) -> GridCell:
    cell = GridCell(epsilon=epsilon, tau=tau)
    try:
        config = train_config.model_copy(update={"epsilon": epsilon, "tau": tau})
        result = train(fit, encoder_config, config)
        encoder = result.checkpoint.encoder
        fit_repr = instance_repr(
            encode_dataset(encoder, feature_dataset(fit, config.features), fit.lengths, fit.ids, fit.labels)
        )
        val_repr = instance_repr(
            encode_dataset(encoder, feature_dataset(val, config.features), val.lengths, val.ids, val.labels)
        )
        scores = evaluate_representations(fit_repr, val_repr, seed=config.seed)
    except AtsccError as e:
        logger.warning(f"Grid cell epsilon={epsilon}, tau={tau} failed: {e}")
        return cell.model_copy(update={"status": "failed", "error": str(e)})
    return cell.model_copy(
        update={"acc": scores.acc, "nmi": scores.nmi, "ari": scores.ari, "epochs": result.epochs_run}
    )


def grid_search(
    dataset: Dataset,
    encoder_config: EncoderConfig,
    train_config: TrainConfig,
    epsilons: Sequence[float],
    taus: Sequence[float],
    val_fraction: float = 0.25,
    threads: int = 1,
) -> GridResult:
    """Train and score every (epsilon, tau) cell on a validation split.

    Cells whose segmentation is degenerate (one segment per trajectory) or
    whose training fails are marked failed and skipped. The best cell has the
    highest validation accuracy, NMI breaking ties.

    Raises:
        TrainingError: If either grid is empty or every cell fails.
    """
    if not epsilons or not taus:
        raise TrainingError("empty grid")
    fit, val = validation_split(dataset, val_fraction, train_config.seed)
    logger.info(f"Grid search on {fit.n} fitting / {val.n} validation trajectories")

    jobs = []
    failed: list[GridCell] = []
    for epsilon in epsilons:
        segment_ids = segment_dataset(fit, RdpParams(epsilon=epsilon), threads)
        if is_degenerate(segment_ids, fit.lengths):
            logger.warning(f"Epsilon {epsilon} yields one segment per trajectory; skipping its cells")
            failed.extend(
                GridCell(epsilon=epsilon, tau=tau, status="failed", error="degenerate segmentation")
                for tau in taus
            )
            continue
        segmented = fit.model_copy(update={"segment_ids": segment_ids})
        jobs.extend((segmented, epsilon, tau) for tau in taus)

    scored = ordered_map(
        lambda job: _score_cell(job[0], val, job[1], job[2], encoder_config, train_config), jobs, threads
    )
    order = {(e, t): i for i, (e, t) in enumerate((e, t) for e in epsilons for t in taus)}
    cells = sorted(scored + failed, key=lambda c: order[(c.epsilon, c.tau)])

    candidates = [c for c in cells if c.ok]
    if not candidates:
        raise TrainingError("every grid cell failed")
    best = max(candidates, key=lambda c: (c.acc, c.nmi))
    logger.info(f"Best cell: epsilon={best.epsilon}, tau={best.tau} (acc {best.acc:.4f}, NMI {best.nmi:.4f})")
    return GridResult(cells=cells, best=best)


def write_grid_table(result: GridResult, path: Path) -> None:
    """One CSV row per cell in grid order."""
    frame = pd.DataFrame([c.model_dump() for c in result.cells], columns=GRID_COLUMNS)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n", float_format="%.10g")
