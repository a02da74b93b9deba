"""Synthetic labeled arrival trajectories for end-to-end runs."""

from .generator import (
    ar1_noise,
    disc_offset,
    flight_chain,
    generate,
    generate_tracks,
    passage_times,
    racetrack_points,
    sample_chain,
    synth_dataset,
    tracks_to_records,
)
from .scenario import (
    KNOT_MPS,
    ProcedureSpec,
    Racetrack,
    ScenarioSpec,
    Waypoint,
    default_scenario,
    load_scenario,
    unit_heading,
)

__all__ = [
    "KNOT_MPS",
    "ProcedureSpec",
    "Racetrack",
    "ScenarioSpec",
    "Waypoint",
    "ar1_noise",
    "default_scenario",
    "disc_offset",
    "flight_chain",
    "generate",
    "generate_tracks",
    "load_scenario",
    "passage_times",
    "racetrack_points",
    "sample_chain",
    "synth_dataset",
    "tracks_to_records",
    "unit_heading",
]
