"""Repository for run registry access."""

from typing import Optional
from uuid import UUID

from sqlmodel import select

from ..base import BaseRepository
from .models import MetricRecord, RunRecord


class RunRepository(BaseRepository):
    """Repository for run registry operations."""

    def list_runs(self, command: Optional[str] = None) -> list[RunRecord]:
        """List runs newest first, optionally for one command."""
        return self.newest_first(RunRecord, command=command)

    def get_run(self, id_prefix: str) -> RunRecord | None:
        """Get a run by a unique prefix of its id."""
        return self.find_by_id_prefix(RunRecord, id_prefix)

    def get_metrics(self, run_id: UUID) -> list[MetricRecord]:
        """Metrics of one run ordered by dataset and seed."""
        statement = (
            select(MetricRecord)
            .where(MetricRecord.run_id == run_id)
            .order_by(MetricRecord.dataset, MetricRecord.seed)
        )
        return list(self.session.exec(statement).all())

    def save_run(self, run: RunRecord, metrics: Optional[list[MetricRecord]] = None) -> bool:
        """Stage a run with its metrics; the caller's session commits them together.

        Returns:
            True if newly added, False if its manifest was already recorded.
        """
        if self.find_by_source_file(RunRecord, run.source_file):
            return False

        self.session.add(run)
        self.session.flush()

        for metric in metrics or []:
            metric.run_id = run.id
            self.session.add(metric)
        self.session.flush()
        return True
