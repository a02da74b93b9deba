"""Tests for the SQLite RegistryClient."""

import sqlite3
from pathlib import Path
from uuid import uuid4

import pytest
from sqlalchemy import text
from sqlalchemy.exc import IntegrityError
from sqlmodel import Session

from src.databases.clients.sqlite import DEFAULT_DB_PATH, REGISTRY_SCHEMA_VERSION, RegistryClient
from src.databases.datatypes.runs import RunRecord
from src.errors import RegistryError


def table_names(client: RegistryClient) -> list[str]:
    with client.engine.connect() as conn:
        result = conn.execute(text("SELECT name FROM sqlite_master WHERE type='table' ORDER BY name"))
        return [row[0] for row in result.fetchall()]


def stamp(path: Path, version: int) -> None:
    conn = sqlite3.connect(path)
    conn.execute(f"PRAGMA user_version = {version}")
    conn.close()


@pytest.fixture
def client(tmp_path):
    """Create a test client with temporary database."""
    client = RegistryClient(db_path=tmp_path / "runs.db")
    yield client
    client.close()


class TestRegistryClientInit:
    """Tests for RegistryClient initialization."""

    def test_default_db_path(self):
        """Test default database path points at the run registry."""
        client = RegistryClient()
        assert client.db_path == DEFAULT_DB_PATH
        assert DEFAULT_DB_PATH.name == "runs.db"

    def test_custom_db_path(self):
        """Test a string path is accepted."""
        assert RegistryClient(db_path="/tmp/registry.db").db_path == Path("/tmp/registry.db")

    def test_nothing_is_opened_eagerly(self, tmp_path):
        """Test the file is not touched until the engine is first used."""
        client = RegistryClient(db_path=tmp_path / "runs.db")
        assert client._engine is None
        assert not client.exists


class TestRegistryClientEngine:
    """Tests for engine creation."""

    def test_engine_creates_parent_directories(self, tmp_path):
        """Test a new registry gets its directories."""
        db_path = tmp_path / "nested" / "dir" / "runs.db"
        with RegistryClient(db_path=db_path) as client:
            _ = client.engine
        assert db_path.is_file()

    def test_missing_registry_without_create(self, tmp_path):
        """Test create=False never makes a file."""
        client = RegistryClient(db_path=tmp_path / "absent.db", create=False)
        with pytest.raises(RegistryError, match="no run registry"):
            _ = client.engine
        assert not (tmp_path / "absent.db").exists()

    def test_existing_registry_without_create(self, tmp_path):
        """Test create=False opens a registry that is already there."""
        with RegistryClient(db_path=tmp_path / "runs.db") as writer:
            _ = writer.engine
        with RegistryClient(db_path=tmp_path / "runs.db", create=False) as reader:
            assert table_names(reader) == ["metrics", "runs"]

    def test_engine_enables_foreign_keys(self, client):
        """Test engine enables foreign key constraints."""
        with client.engine.connect() as conn:
            assert conn.execute(text("PRAGMA foreign_keys")).fetchone()[0] == 1

    def test_context_manager(self, tmp_path):
        """Test context manager disposes the engine on exit."""
        with RegistryClient(db_path=tmp_path / "runs.db") as client:
            _ = client.engine
            assert client._engine is not None
        assert client._engine is None


class TestRegistrySchema:
    """Tests for schema creation and versioning."""

    def test_creates_registry_tables(self, client):
        """Test the runs and metrics tables exist after first use."""
        assert table_names(client) == ["metrics", "runs"]

    def test_new_registry_is_stamped(self, client):
        """Test a fresh file carries the current schema version."""
        assert client.schema_version() == REGISTRY_SCHEMA_VERSION

    def test_unstamped_file_is_adopted(self, tmp_path):
        """Test an existing file without a version is stamped on open."""
        path = tmp_path / "runs.db"
        stamp(path, 0)
        with RegistryClient(db_path=path, create=False) as client:
            assert client.schema_version() == REGISTRY_SCHEMA_VERSION
            assert table_names(client) == ["metrics", "runs"]

    def test_foreign_schema_version_rejected(self, tmp_path):
        """Test a registry stamped by another release is refused."""
        path = tmp_path / "runs.db"
        stamp(path, REGISTRY_SCHEMA_VERSION + 1)
        client = RegistryClient(db_path=path)
        with pytest.raises(RegistryError, match="schema version"):
            _ = client.engine
        assert client._engine is None

    def test_runs_columns(self, client):
        """Test runs table has the provenance columns."""
        with client.engine.connect() as conn:
            columns = {row[1] for row in conn.execute(text("PRAGMA table_info(runs)")).fetchall()}
        assert {"id", "command", "version", "config_json", "seeds_json", "source_file", "created_at"} <= columns

    def test_metric_requires_valid_run_id(self, client):
        """Test a metric row must reference an existing run."""
        with pytest.raises(IntegrityError):
            with client.engine.connect() as conn:
                conn.execute(
                    text(
                        "INSERT INTO metrics (id, run_id, dataset, seed, acc, nmi, ari) "
                        "VALUES (:id, :run_id, 'syn', 0, 1.0, 1.0, 1.0)"
                    ),
                    {"id": uuid4().hex, "run_id": uuid4().hex},
                )
                conn.commit()


class TestRegistrySession:
    """Tests for the transactional session."""

    def test_commits_on_exit(self, client):
        """Test rows added inside the block are visible afterwards."""
        with client.session() as session:
            assert isinstance(session, Session)
            session.add(RunRecord(command="train", version="0.1.0", source_file="a"))
        with client.session() as session:
            assert session.execute(text("SELECT source_file FROM runs")).scalars().all() == ["a"]

    def test_rolls_back_on_error(self, client):
        """Test an exception discards everything staged in the block."""
        with pytest.raises(RuntimeError, match="interrupted"):
            with client.session() as session:
                session.add(RunRecord(command="train", version="0.1.0", source_file="a"))
                session.flush()
                raise RuntimeError("interrupted")
        with client.engine.connect() as conn:
            assert conn.execute(text("SELECT COUNT(*) FROM runs")).scalar_one() == 0
