"""Read and write trajectory interchange files.

Raw surveillance CSV: ``flight_id,timestamp_s,lat_deg,lon_deg,baro_alt_m``.

Processed dataset container (little-endian):
    magic ``ATSC`` | u16 version | u32 N | u16 F | u32 + JSON metadata
    then per flight:
    u16 id length | UTF-8 id | u32 T_i | T_i x F float64 (row-major)
    | i32 label (-1 = unlabeled) | u8 has segment IDs | [T_i x u32 IDs]
"""

from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import ValidationError

from src.databases.clients.binary import BinaryReader, BinaryWriter
from src.errors import FormatError

from .models import Dataset, RawRecord

DATASET_MAGIC = b"ATSC"
DATASET_VERSION = 1

RAW_CSV_COLUMNS = ["flight_id", "timestamp_s", "lat_deg", "lon_deg", "baro_alt_m"]


def write_dataset(dataset: Dataset, path: Path) -> None:
    """Write a dataset to the binary container."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        w = BinaryWriter(f)
        w.header(DATASET_MAGIC, DATASET_VERSION)
        w.u32(dataset.n)
        w.u16(dataset.n_features)
        w.blob_json(dataset.metadata)
        for i, traj_id in enumerate(dataset.ids):
            length = int(dataset.lengths[i])
            w.text(traj_id)
            w.u32(length)
            w.f64_array(dataset.states[i, :length])
            w.i32(int(dataset.labels[i]))
            if dataset.segment_ids is None:
                w.u8(0)
            else:
                w.u8(1)
                w.u32_array(dataset.segment_ids[i, :length])


def read_dataset(path: Path) -> Dataset:
    """Read a dataset from the binary container, re-padding with NaN.

    Raises:
        FileNotFoundError: If the file does not exist.
        FormatError: If the file is malformed or has another format version.
    """
    path = Path(path)
    with open(path, "rb") as f:
        r = BinaryReader(f, path)
        r.header(DATASET_MAGIC, DATASET_VERSION)
        n = r.u32()
        n_features = r.u16()
        metadata = r.blob_json()

        ids: list[str] = []
        rows: list[np.ndarray] = []
        labels: list[int] = []
        seg_rows: list[np.ndarray | None] = []
        for _ in range(n):
            ids.append(r.text())
            length = r.u32()
            rows.append(r.f64_array(length * n_features).reshape(length, n_features))
            labels.append(r.i32())
            seg_rows.append(r.u32_array(length) if r.u8() else None)
        if not r.at_end():
            raise FormatError(f"trailing bytes after {n} flights in {path}")

    lengths = np.array([len(row) for row in rows], dtype=np.int64)
    t_max = int(lengths.max()) if n else 0
    states = np.full((n, t_max, n_features), np.nan, dtype=np.float64)
    for i, row in enumerate(rows):
        states[i, : len(row)] = row

    segment_ids = None
    if n and all(s is not None for s in seg_rows):
        segment_ids = np.full((n, t_max), np.nan, dtype=np.float64)
        for i, seg in enumerate(seg_rows):
            segment_ids[i, : len(seg)] = seg
    elif any(s is not None for s in seg_rows):
        raise FormatError(f"segment IDs present for only some flights in {path}")

    return Dataset(
        ids=ids,
        states=states,
        lengths=lengths,
        labels=np.array(labels, dtype=np.int64),
        segment_ids=segment_ids,
        metadata=metadata,
    )


def read_raw_csv(path: Path) -> list[RawRecord]:
    """Read raw surveillance records from CSV.

    Raises:
        FileNotFoundError: If the file does not exist.
        FormatError: If the header is wrong or a row fails validation.
    """
    frame = pd.read_csv(path, dtype={"flight_id": str}, encoding="utf-8")
    if list(frame.columns) != RAW_CSV_COLUMNS:
        raise FormatError(f"unexpected CSV header in {path}: {','.join(frame.columns)}")

    records: list[RawRecord] = []
    for row in frame.itertuples(index=False):
        try:
            records.append(
                RawRecord.model_validate({
                    "flight_id": row.flight_id,
                    "timestamp": row.timestamp_s,
                    "latitude": row.lat_deg,
                    "longitude": row.lon_deg,
                    "baro_altitude": row.baro_alt_m,
                })
            )
        except ValidationError as e:
            raise FormatError(f"invalid record for flight {row.flight_id} in {path}: {e}") from e
    return records


def write_raw_csv(records: list[RawRecord], path: Path) -> None:
    """Write raw surveillance records as UTF-8 CSV with LF line endings."""
    frame = pd.DataFrame(
        {
            "flight_id": [r.flight_id for r in records],
            "timestamp_s": [r.timestamp for r in records],
            "lat_deg": [r.latitude for r in records],
            "lon_deg": [r.longitude for r in records],
            "baro_alt_m": [r.baro_altitude for r in records],
        },
        columns=RAW_CSV_COLUMNS,
    )
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n", float_format="%.9f")


def read_labels_csv(path: Path) -> dict[str, int]:
    """Read a ``flight_id,label`` mapping."""
    frame = pd.read_csv(path, dtype={"flight_id": str}, encoding="utf-8")
    if list(frame.columns) != ["flight_id", "label"]:
        raise FormatError(f"unexpected labels header in {path}: {','.join(frame.columns)}")
    return {str(fid): int(label) for fid, label in zip(frame["flight_id"], frame["label"])}


def write_representations(
    path: Path,
    ids: list[str],
    vectors: np.ndarray,
    lengths: np.ndarray,
    labels: np.ndarray,
) -> None:
    """Write padded (N, T_max, K) representations to a compressed ``.npz``.

    Vectors are stored as float32; padded rows hold NaN.
    """
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        np.savez_compressed(
            f,
            ids=np.array(ids, dtype=str),
            vectors=np.asarray(vectors, dtype=np.float32),
            lengths=np.asarray(lengths, dtype=np.int64),
            labels=np.asarray(labels, dtype=np.int64),
        )


def read_representations(path: Path) -> tuple[list[str], np.ndarray, np.ndarray, np.ndarray]:
    """Read ``(ids, vectors, lengths, labels)`` written by ``write_representations``.

    Raises:
        FileNotFoundError: If the file does not exist.
        FormatError: If an array is missing.
    """
    with np.load(path, allow_pickle=False) as archive:
        try:
            return (
                [str(i) for i in archive["ids"]],
                archive["vectors"].astype(np.float64),
                archive["lengths"].astype(np.int64),
                archive["labels"].astype(np.int64),
            )
        except KeyError as e:
            raise FormatError(f"representation archive {path} lacks {e}") from e
