"""SQLite client for the run registry."""

from .client import DEFAULT_DB_PATH, REGISTRY_SCHEMA_VERSION, RegistryClient

__all__ = ["DEFAULT_DB_PATH", "REGISTRY_SCHEMA_VERSION", "RegistryClient"]
