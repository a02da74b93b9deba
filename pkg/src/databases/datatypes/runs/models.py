"""SQLModel tables for recorded pipeline runs and their metrics."""

from datetime import datetime
from typing import Optional
from uuid import UUID, uuid4

from pydantic import field_validator
from sqlmodel import Field, SQLModel


class RunRecord(SQLModel, table=True):
    """One artifact-producing command invocation."""

    __tablename__ = "runs"

    id: UUID = Field(default_factory=uuid4, primary_key=True)
    command: str
    version: str
    config_json: str = "{}"
    seeds_json: str = "[]"
    inputs_json: str = "[]"
    outputs_json: str = "[]"
    wall_time_s: float = 0.0
    source_file: str
    created_at: datetime = Field(default_factory=datetime.now)

    @field_validator("wall_time_s")
    @classmethod
    def validate_wall_time(cls, v: float) -> float:
        """Validate wall time is not negative."""
        if v < 0:
            raise ValueError("wall_time_s must not be negative")
        return v


class MetricRecord(SQLModel, table=True):
    """One row of an evaluation metrics table."""

    __tablename__ = "metrics"

    id: UUID = Field(default_factory=uuid4, primary_key=True)
    run_id: UUID = Field(foreign_key="runs.id")
    dataset: str
    epsilon: Optional[float] = None
    tau: Optional[float] = None
    seed: int
    C: Optional[float] = None
    gamma: Optional[float] = None
    acc: float
    nmi: float
    ari: float

    @field_validator("acc", "nmi")
    @classmethod
    def validate_unit_score(cls, v: float) -> float:
        """Validate accuracy and NMI lie in [0, 1]."""
        if v < 0 or v > 1:
            raise ValueError("acc and nmi must be between 0 and 1")
        return v
