"""Synthetic terminal-area scenarios: procedures, runways and noise settings."""

import math
from pathlib import Path
from typing import Optional

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.errors import ScenarioError
from src.preprocess.filters import SmoothingConfig
from src.preprocess.pipeline import PreprocessConfig
from src.trajectories.validators import Latitude, Longitude, PositiveFloat

KNOT_MPS = 1852.0 / 3600.0


class Waypoint(BaseModel):
    """A fix in airport-centered ENU meters."""

    model_config = ConfigDict(frozen=True)

    x_m: float
    y_m: float
    alt_m: float = Field(ge=0)

    def as_array(self) -> np.ndarray:
        return np.array([self.x_m, self.y_m, self.alt_m], dtype=np.float64)


class Racetrack(BaseModel):
    """One right-hand holding circuit flown at a waypoint of the chain."""

    model_config = ConfigDict(frozen=True)

    fix_index: int = Field(default=0, ge=0)
    inbound_course_deg: float = 0.0
    leg_m: PositiveFloat = 7400.0
    turn_radius_m: PositiveFloat = 3500.0
    laps: int = Field(default=1, ge=1)


def unit_heading(deg: float) -> np.ndarray:
    """Horizontal unit vector for a bearing measured clockwise from north."""
    rad = math.radians(deg)
    return np.array([math.sin(rad), math.cos(rad)])


class ProcedureSpec(BaseModel):
    """An arrival procedure flown by every trajectory of one class.

    The chain runs entry point, intermediate waypoints, final approach fix,
    runway threshold. The threshold sits ``runway_offset_m`` to the right of
    the airport reference line for the landing heading; the final approach
    fix lies ``final_length_m`` before it on the glide slope.
    """

    model_config = ConfigDict(frozen=True)

    class_id: int = Field(ge=0)
    name: str = ""
    entry_bearing_deg: float
    entry_range_m: PositiveFloat = 55000.0
    entry_alt_m: float = Field(default=4500.0, ge=0)
    waypoints: list[Waypoint] = Field(default_factory=list)
    runway_heading_deg: float = 0.0
    runway_offset_m: float = 0.0
    final_length_m: PositiveFloat = 15000.0
    glide_slope_deg: float = Field(default=3.0, gt=0, lt=90)
    holding: Optional[Racetrack] = None

    @model_validator(mode="after")
    def validate_holding(self) -> "ProcedureSpec":
        """Validate the holding fix refers to an intermediate waypoint."""
        if self.holding is not None and self.holding.fix_index >= len(self.waypoints):
            raise ValueError(
                f"holding fix_index {self.holding.fix_index} needs at least "
                f"{self.holding.fix_index + 1} intermediate waypoints"
            )
        return self

    @property
    def label(self) -> str:
        return self.name or f"class{self.class_id}"

    def threshold(self) -> np.ndarray:
        heading = unit_heading(self.runway_heading_deg)
        right = np.array([heading[1], -heading[0]])
        x, y = self.runway_offset_m * right
        return np.array([x, y, 0.0])

    def final_approach_fix(self) -> np.ndarray:
        heading = unit_heading(self.runway_heading_deg)
        threshold = self.threshold()
        x, y = threshold[:2] - self.final_length_m * heading
        return np.array([x, y, self.final_length_m * math.tan(math.radians(self.glide_slope_deg))])

    def entry_point(self) -> np.ndarray:
        x, y = self.entry_range_m * unit_heading(self.entry_bearing_deg)
        return np.array([x, y, self.entry_alt_m])

    def chain(self) -> np.ndarray:
        """Nominal vertices (entry, waypoints, FAF, threshold), shape (V, 3)."""
        return np.vstack(
            [self.entry_point()]
            + [w.as_array() for w in self.waypoints]
            + [self.final_approach_fix(), self.threshold()]
        )


class ScenarioSpec(BaseModel):
    """Airport frame, procedures and generation settings."""

    name: str = "default"
    ref_lat: Latitude = 37.46
    ref_lon: Longitude = 126.44
    ref_alt_m: float = 0.0
    r_max_m: PositiveFloat = 60000.0
    per_class: int = Field(default=100, ge=1)
    noise_h_m: float = Field(default=150.0, ge=0)
    noise_v_m: float = Field(default=30.0, ge=0)
    noise_correlation: float = Field(default=0.95, ge=0, lt=1)
    entry_jitter_m: float = Field(default=2000.0, ge=0)
    enroute_speed_kn: PositiveFloat = 220.0
    final_speed_kn: PositiveFloat = 140.0
    downsample_s: int = Field(default=5, ge=1)
    procedures: list[ProcedureSpec]

    @field_validator("procedures")
    @classmethod
    def validate_procedures(cls, v: list[ProcedureSpec]) -> list[ProcedureSpec]:
        """Validate at least two procedures with distinct class ids."""
        if len(v) < 2:
            raise ValueError("a scenario needs at least 2 procedures")
        ids = [p.class_id for p in v]
        if len(set(ids)) != len(ids):
            raise ValueError(f"procedure class ids must be unique, got {ids}")
        return v

    @model_validator(mode="after")
    def validate_inside_radius(self) -> "ScenarioSpec":
        """Validate every nominal vertex lies inside the bounding radius."""
        for proc in self.procedures:
            radius = np.hypot(proc.chain()[:, 0], proc.chain()[:, 1])
            if np.any(radius > self.r_max_m):
                raise ValueError(f"procedure {proc.label} leaves the {self.r_max_m:.0f} m radius")
        return self

    @property
    def enroute_speed_mps(self) -> float:
        return self.enroute_speed_kn * KNOT_MPS

    @property
    def final_speed_mps(self) -> float:
        return self.final_speed_kn * KNOT_MPS

    def preprocess_config(self) -> PreprocessConfig:
        """Preprocessing settings matching this scenario's frame."""
        # noise-free tracks keep their exact corners
        noiseless = self.noise_h_m == 0 and self.noise_v_m == 0
        return PreprocessConfig(
            ref_lat=self.ref_lat,
            ref_lon=self.ref_lon,
            ref_alt_m=self.ref_alt_m,
            r_max_m=self.r_max_m,
            downsample_s=self.downsample_s,
            smoothing=SmoothingConfig(enabled=not noiseless),
        )


def default_scenario() -> ScenarioSpec:
    """Four northbound arrival classes onto two parallel runways 1.5 km apart.

    Classes 0 and 1 share every waypoint and differ only in the final
    segment, one to each runway.
    """
    shared = [Waypoint(x_m=-9000.0, y_m=-34000.0, alt_m=2500.0)]
    return ScenarioSpec(
        procedures=[
            ProcedureSpec(
                class_id=0, name="sw-left", entry_bearing_deg=200.0, entry_alt_m=4500.0,
                waypoints=shared, runway_offset_m=-750.0,
            ),
            ProcedureSpec(
                class_id=1, name="sw-right", entry_bearing_deg=200.0, entry_alt_m=4500.0,
                waypoints=shared, runway_offset_m=750.0,
            ),
            ProcedureSpec(
                class_id=2, name="se-right", entry_bearing_deg=130.0, entry_alt_m=5000.0,
                waypoints=[Waypoint(x_m=14000.0, y_m=-30000.0, alt_m=2500.0)], runway_offset_m=750.0,
            ),
            ProcedureSpec(
                class_id=3, name="west-left", entry_bearing_deg=275.0, entry_alt_m=4000.0,
                waypoints=[
                    Waypoint(x_m=-30000.0, y_m=-8000.0, alt_m=3000.0),
                    Waypoint(x_m=-14000.0, y_m=-24000.0, alt_m=2000.0),
                ],
                runway_offset_m=-750.0,
            ),
        ]
    )


def load_scenario(path: Path) -> ScenarioSpec:
    """Read a scenario YAML file; missing keys take the default scenario's values.

    Raises:
        FileNotFoundError: If the file does not exist.
        ScenarioError: If the document is not a valid scenario.
    """
    with open(path, encoding="utf-8") as f:
        try:
            document = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ScenarioError(f"invalid scenario YAML in {path}: {e}") from e
    if not isinstance(document, dict):
        raise ScenarioError(f"scenario file {path} must hold a mapping")
    document.setdefault("procedures", [p.model_dump() for p in default_scenario().procedures])
    try:
        return ScenarioSpec.model_validate(document)
    except ValidationError as e:
        raise ScenarioError(f"invalid scenario in {path}: {e}") from e
