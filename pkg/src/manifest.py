"""Run manifests written next to every artifact."""

import subprocess
from datetime import datetime
from importlib import metadata
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, Field

from src.errors import FormatError

_PROJECT_ROOT = Path(__file__).resolve().parent.parent

MANIFEST_SUFFIX = ".manifest.yaml"


class RunManifest(BaseModel):
    """Provenance of one artifact-producing command."""

    command: str
    config: dict[str, Any] = Field(default_factory=dict)
    seeds: list[int] = Field(default_factory=list)
    inputs: list[str] = Field(default_factory=list)
    outputs: list[str] = Field(default_factory=list)
    version: str
    wall_time_s: float = Field(default=0.0, ge=0)
    created_at: datetime = Field(default_factory=datetime.now)


def package_version() -> str:
    """``git describe`` of the source tree, else the installed package version."""
    try:
        result = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            cwd=_PROJECT_ROOT,
            capture_output=True,
            text=True,
            timeout=5,
            check=True,
        )
        if result.stdout.strip():
            return result.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        pass
    try:
        return f"v{metadata.version('atscc')}"
    except metadata.PackageNotFoundError:
        return "unknown"


def manifest_path(artifact: Path) -> Path:
    """``<artifact>.manifest.yaml`` in the artifact's directory."""
    artifact = Path(artifact)
    return artifact.with_name(artifact.name + MANIFEST_SUFFIX)


def write_manifest(manifest: RunManifest, artifact: Path) -> Path:
    path = manifest_path(artifact)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(manifest.model_dump(mode="json"), f, sort_keys=True)
    return path


def read_manifest(path: Path) -> RunManifest:
    """Load a manifest file.

    Raises:
        FileNotFoundError: If the file does not exist.
        FormatError: If the file is not a manifest.
    """
    with open(path, encoding="utf-8") as f:
        try:
            return RunManifest.model_validate(yaml.safe_load(f))
        except (yaml.YAMLError, ValueError) as e:
            raise FormatError(f"invalid manifest {path}: {e}") from e
