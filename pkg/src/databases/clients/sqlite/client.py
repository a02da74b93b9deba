"""SQLite run registry with SQLModel."""

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

from sqlalchemy import Engine, event, text
from sqlmodel import SQLModel, Session, create_engine

# Import all models to register them with SQLModel metadata
from src.databases.datatypes.runs.models import MetricRecord, RunRecord  # noqa: F401
from src.errors import RegistryError

logger = logging.getLogger(__name__)

# client.py is at src/databases/clients/sqlite/client.py (5 levels deep)
_PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent.parent.parent

DEFAULT_DB_PATH = _PROJECT_ROOT / "data/databases/sqlite/runs.db"

# Stored in PRAGMA user_version; bump when the runs or metrics tables change.
REGISTRY_SCHEMA_VERSION = 1


def _enable_foreign_keys(dbapi_connection, connection_record):
    """Metric rows must point at a recorded run."""
    cursor = dbapi_connection.cursor()
    cursor.execute("PRAGMA foreign_keys = ON")
    cursor.close()


class RegistryClient:
    """Opens the run registry and hands out transactional sessions.

    A registry opened with ``create=False`` is never created on disk, so
    read-only commands can inspect a path without leaving a file behind.
    """

    def __init__(self, db_path: Optional[Path] = None, create: bool = True):
        self.db_path = Path(db_path) if db_path else DEFAULT_DB_PATH
        self.create = create
        self._engine: Optional[Engine] = None

    @property
    def exists(self) -> bool:
        return self.db_path.is_file()

    @property
    def engine(self) -> Engine:
        """The SQLAlchemy engine; the schema is checked on first use.

        Raises:
            RegistryError: If the file is absent and ``create`` is off, or the
                stored schema version differs from this release's.
        """
        if self._engine is None:
            if not self.exists:
                if not self.create:
                    raise RegistryError(f"no run registry at {self.db_path}")
                self.db_path.parent.mkdir(parents=True, exist_ok=True)
                logger.info(f"Creating run registry at {self.db_path}")
            self._engine = create_engine(f"sqlite:///{self.db_path}")
            event.listen(self._engine, "connect", _enable_foreign_keys)
            try:
                self._init_schema(self._engine)
            except RegistryError:
                self.close()
                raise
        return self._engine

    def schema_version(self) -> int:
        """Version stamped into the registry file, 0 for an unstamped file."""
        with self.engine.connect() as conn:
            return int(conn.execute(text("PRAGMA user_version")).scalar_one())

    @staticmethod
    def _init_schema(engine: Engine) -> None:
        with engine.begin() as conn:
            stored = int(conn.execute(text("PRAGMA user_version")).scalar_one())
            if stored not in (0, REGISTRY_SCHEMA_VERSION):
                raise RegistryError(
                    f"run registry schema version {stored} is not supported "
                    f"(expected {REGISTRY_SCHEMA_VERSION})"
                )
        SQLModel.metadata.create_all(engine)
        if stored == 0:
            with engine.begin() as conn:
                conn.execute(text(f"PRAGMA user_version = {REGISTRY_SCHEMA_VERSION}"))

    @contextmanager
    def session(self) -> Iterator[Session]:
        """A session committed on normal exit and rolled back on error."""
        with Session(self.engine) as session:
            try:
                yield session
                session.commit()
            except Exception:
                session.rollback()
                raise

    def close(self) -> None:
        if self._engine:
            self._engine.dispose()
            self._engine = None

    def __enter__(self) -> "RegistryClient":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()
