"""Tests for RunRepository and the registry models."""

from datetime import datetime
from uuid import UUID, uuid4

import pytest
from pydantic import ValidationError

from src.databases.clients.sqlite import RegistryClient
from src.databases.datatypes.runs import MetricRecord, RunRecord, RunRepository


@pytest.fixture
def db_client(tmp_path):
    """Create a test registry client."""
    client = RegistryClient(db_path=tmp_path / "runs.db")
    yield client
    client.close()


@pytest.fixture
def db_session(db_client):
    """Create a database session for testing."""
    with db_client.session() as session:
        yield session


@pytest.fixture
def repo(db_session):
    """Create a RunRepository instance."""
    return RunRepository(db_session)


def make_run(command: str, source_file: str, hour: int = 0, **kwargs) -> RunRecord:
    return RunRecord(
        **kwargs,
        command=command,
        version="0.1.0",
        source_file=source_file,
        created_at=datetime(2026, 1, 1, hour),
    )


def make_metric(run_id: UUID, dataset: str, seed: int, acc: float = 0.9) -> MetricRecord:
    return MetricRecord.model_validate(
        {"run_id": run_id, "dataset": dataset, "epsilon": 0.01, "tau": 0.1, "seed": seed, "acc": acc, "nmi": 0.8, "ari": 0.7}
    )


class TestMetricRecord:
    """Tests for MetricRecord validation."""

    def test_scores_must_be_fractions(self):
        """Accuracy above 1 is rejected."""
        with pytest.raises(ValidationError, match="acc and nmi must be between 0 and 1"):
            MetricRecord.model_validate(
                {"run_id": uuid4(), "dataset": "syn", "seed": 0, "acc": 1.5, "nmi": 0.5, "ari": 0.1}
            )

    def test_ari_may_be_negative(self):
        """ARI below zero is a valid score."""
        assert make_metric(uuid4(), "syn", 0).ari == 0.7
        record = MetricRecord.model_validate(
            {"run_id": uuid4(), "dataset": "syn", "seed": 0, "acc": 0.5, "nmi": 0.0, "ari": -0.2}
        )
        assert record.ari == -0.2


class TestSaveRun:
    """Tests for save_run."""

    def test_saves_run_with_metrics(self, repo):
        """Metrics are attached to the saved run."""
        run = make_run("evaluate", "/tmp/metrics.csv.manifest.yaml")
        assert repo.save_run(run, [make_metric(run.id, "syn", 1), make_metric(run.id, "syn", 0)]) is True
        metrics = repo.get_metrics(run.id)
        assert [m.seed for m in metrics] == [0, 1]
        assert all(m.run_id == run.id for m in metrics)

    def test_duplicate_manifest_is_skipped(self, repo):
        """A manifest already recorded is not saved twice."""
        assert repo.save_run(make_run("train", "/tmp/a.manifest.yaml")) is True
        assert repo.save_run(make_run("train", "/tmp/a.manifest.yaml")) is False
        assert repo.count(RunRecord) == 1


class TestQueries:
    """Tests for list_runs and get_run."""

    def test_list_runs_newest_first(self, repo):
        """Runs come back newest first."""
        repo.save_run(make_run("segment", "a", hour=1))
        repo.save_run(make_run("train", "b", hour=3))
        repo.save_run(make_run("segment", "c", hour=2))
        assert [r.source_file for r in repo.list_runs()] == ["b", "c", "a"]

    def test_list_runs_by_command(self, repo):
        """Runs can be filtered by command."""
        repo.save_run(make_run("segment", "a"))
        repo.save_run(make_run("train", "b"))
        assert [r.command for r in repo.list_runs("train")] == ["train"]

    def test_get_run_by_prefix(self, repo):
        """A unique id prefix finds its run."""
        run = make_run("train", "a")
        repo.save_run(run)
        assert repo.get_run(str(run.id)[:8]).id == run.id
        assert repo.get_run("zzzz") is None

    def test_get_run_accepts_hyphenated_prefix(self, repo):
        """A prefix copied from the printed id works with its hyphens."""
        run = make_run("train", "a")
        repo.save_run(run)
        assert repo.get_run(str(run.id)[:13]).id == run.id
        assert repo.get_run(str(run.id).upper()).id == run.id

    def test_ambiguous_prefix_finds_nothing(self, repo):
        """A prefix shared by two runs identifies neither."""
        repo.save_run(make_run("train", "a", id=UUID("abcd0000-0000-4000-8000-000000000001")))
        repo.save_run(make_run("train", "b", id=UUID("abcd0000-0000-4000-8000-000000000002")))
        assert repo.get_run("abcd") is None
        assert repo.get_run("") is None
        assert repo.get_run("abcd0000-0000-4000-8000-000000000002").source_file == "b"

    def test_saved_runs_survive_the_session(self, db_client):
        """Rows staged by save_run are committed when the session closes."""
        run = make_run("evaluate", "m.manifest.yaml")
        with db_client.session() as session:
            RunRepository(session).save_run(run, [make_metric(run.id, "syn", 0)])
        with db_client.session() as session:
            repo = RunRepository(session)
            assert [r.source_file for r in repo.list_runs()] == ["m.manifest.yaml"]
            assert len(repo.get_metrics(run.id)) == 1

    def test_empty_registry(self, repo):
        """Queries on an empty registry return nothing."""
        assert repo.list_runs() == []
        assert repo.count(MetricRecord) == 0
