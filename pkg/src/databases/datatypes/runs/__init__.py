"""Run registry models and repository."""

from .models import MetricRecord, RunRecord
from .repository import RunRepository

__all__ = [
    "MetricRecord",
    "RunRecord",
    "RunRepository",
]
