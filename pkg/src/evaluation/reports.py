"""CSV tables produced by the evaluation commands."""

from pathlib import Path
from typing import Sequence

import pandas as pd

from .projection import Projection

METRICS_COLUMNS = ["dataset", "epsilon", "tau", "seed", "C", "gamma", "acc", "nmi", "ari"]


def _write(frame: pd.DataFrame, path: Path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n", float_format="%.10g")


def write_metrics_csv(rows: Sequence[dict], path: Path) -> None:
    """One row per (dataset, epsilon, tau, seed)."""
    _write(pd.DataFrame(list(rows), columns=METRICS_COLUMNS), path)


def write_sweep_csv(rows: Sequence[tuple[int, float]], path: Path) -> None:
    _write(pd.DataFrame(list(rows), columns=["k", "mi"]), path)


def write_projection_csv(ids: Sequence[str], labels: Sequence[int], projection: Projection, path: Path) -> None:
    """``id,label,pc1,pc2`` rows in input order."""
    frame = pd.DataFrame(
        {
            "id": list(ids),
            "label": list(labels),
            "pc1": projection.coords[:, 0],
            "pc2": projection.coords[:, 1],
        }
    )
    _write(frame, path)
