"""Deterministic generation of labeled synthetic arrival trajectories."""

import logging
import math

import numpy as np

from src.errors import PreprocessError, ScenarioError
from src.parallel import ordered_map
from src.preprocess.enu import enu_to_geodetic
from src.preprocess.filters import Track
from src.preprocess.pipeline import process_enu_track
from src.trajectories.dataset import pad_dataset
from src.trajectories.models import Dataset, RawRecord, Trajectory

from .scenario import ProcedureSpec, Racetrack, ScenarioSpec, unit_heading

logger = logging.getLogger(__name__)

EPOCH_S = 1_700_000_000.0
ARC_POINTS = 12


def racetrack_points(fix: np.ndarray, holding: Racetrack) -> np.ndarray:
    """Vertices of right-hand holding laps that start and end at ``fix``.

    Each lap turns outbound through 180 degrees, flies the outbound leg,
    turns back and flies the inbound leg to the fix, all at the fix altitude.
    """
    inbound = unit_heading(holding.inbound_course_deg)
    right = np.array([inbound[1], -inbound[0]])
    r = holding.turn_radius_m
    angles = np.linspace(0.0, math.pi, ARC_POINTS + 1)[1:]

    outbound_turn_center = fix[:2] + r * right
    # Sweep from the fix around the center to the abeam point
    first_turn = outbound_turn_center - r * (
        np.outer(np.cos(angles), right) - np.outer(np.sin(angles), inbound)
    )
    outbound_end = first_turn[-1] - holding.leg_m * inbound
    inbound_turn_center = outbound_end[:2] - r * right
    second_turn = inbound_turn_center + r * (
        np.outer(np.cos(angles), right) - np.outer(np.sin(angles), inbound)
    )
    lap = np.vstack([first_turn, outbound_end[None, :], second_turn, fix[None, :2]])
    lap = np.column_stack([lap, np.full(len(lap), fix[2])])
    return np.vstack([lap] * holding.laps)


def flight_chain(spec: ProcedureSpec, entry_offset: np.ndarray | None = None) -> tuple[np.ndarray, int]:
    """Chain vertices for one flight and the index where the final segment starts.

    ``entry_offset`` shifts the entry point horizontally.
    """
    vertices = [spec.entry_point()]
    if entry_offset is not None:
        vertices[0] = vertices[0] + np.array([entry_offset[0], entry_offset[1], 0.0])
    for i, waypoint in enumerate(spec.waypoints):
        fix = waypoint.as_array()
        vertices.append(fix)
        if spec.holding is not None and spec.holding.fix_index == i:
            vertices.extend(racetrack_points(fix, spec.holding))
    vertices.append(spec.final_approach_fix())
    vertices.append(spec.threshold())
    chain = np.vstack(vertices)
    return chain, len(chain) - 2


def passage_times(chain: np.ndarray, final_index: int, enroute_mps: float, final_mps: float) -> np.ndarray:
    """Seconds since entry at which each vertex is passed.

    Legs before ``final_index`` are flown at the en-route speed, the rest at
    the final-approach speed.
    """
    legs = np.sqrt(np.sum(np.diff(chain, axis=0) ** 2, axis=1))
    speeds = np.where(np.arange(len(legs)) < final_index, enroute_mps, final_mps)
    return np.concatenate([[0.0], np.cumsum(legs / speeds)])


def sample_chain(chain: np.ndarray, times: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Positions at whole seconds from entry up to the last full second."""
    grid = np.arange(0.0, math.floor(times[-1]) + 1.0)
    positions = np.column_stack([np.interp(grid, times, chain[:, k]) for k in range(3)])
    return grid, positions


def ar1_noise(n: int, std: float, rho: float, rng: np.random.Generator, dims: int = 1) -> np.ndarray:
    """Stationary AR(1) Gaussian noise with marginal ``std`` and lag-1 correlation ``rho``."""
    shocks = rng.standard_normal((n, dims))
    out = np.empty((n, dims))
    out[0] = std * shocks[0]
    innovation = std * math.sqrt(1.0 - rho * rho)
    for t in range(1, n):
        out[t] = rho * out[t - 1] + innovation * shocks[t]
    return out


def disc_offset(radius: float, rng: np.random.Generator) -> np.ndarray:
    """Uniform point in a disc of the given radius."""
    r = radius * math.sqrt(rng.random())
    theta = 2.0 * math.pi * rng.random()
    return np.array([r * math.cos(theta), r * math.sin(theta)])


def generate_tracks(scenario: ScenarioSpec, seed: int = 0, threads: int = 1) -> list[Track]:
    """Noisy 1 Hz ENU tracks in meters, ``per_class`` per procedure.

    Each flight draws from its own child of the seed sequence, so results do
    not depend on the thread count.
    """
    jobs = [(spec, j) for spec in scenario.procedures for j in range(scenario.per_class)]
    children = np.random.SeedSequence(seed).spawn(len(jobs))

    def run(item: tuple[tuple[ProcedureSpec, int], np.random.SeedSequence]) -> Track:
        (spec, j), child = item
        rng = np.random.default_rng(child)
        offset = disc_offset(scenario.entry_jitter_m / 2.0, rng)
        chain, final_index = flight_chain(spec, offset)
        times = passage_times(chain, final_index, scenario.enroute_speed_mps, scenario.final_speed_mps)
        grid, positions = sample_chain(chain, times)

        rho = scenario.noise_correlation
        positions = positions.copy()
        if scenario.noise_h_m > 0:
            positions[:, :2] += ar1_noise(len(grid), scenario.noise_h_m, rho, rng, dims=2)
        if scenario.noise_v_m > 0:
            positions[:, 2:] += ar1_noise(len(grid), scenario.noise_v_m, rho, rng)
        start = EPOCH_S + 3600.0 * spec.class_id + 60.0 * j + rng.random()
        return Track(
            flight_id=f"syn-{spec.label}-{j:04d}",
            timestamps=start + grid,
            positions=positions,
            label=spec.class_id,
        )

    return ordered_map(run, list(zip(jobs, children)), threads)


def tracks_to_records(tracks: list[Track], scenario: ScenarioSpec) -> list[RawRecord]:
    """Convert ENU tracks to geodetic surveillance records."""
    frame = scenario.preprocess_config().frame
    records: list[RawRecord] = []
    for track in tracks:
        lat, lon, alt = enu_to_geodetic(track.positions, frame)
        records.extend(
            RawRecord(
                flight_id=track.flight_id,
                timestamp=float(t),
                latitude=float(la),
                longitude=float(lo),
                baro_altitude=float(al),
            )
            for t, la, lo, al in zip(track.timestamps, lat, lon, alt)
        )
    return records


def generate(scenario: ScenarioSpec, seed: int = 0, threads: int = 1) -> list[Trajectory]:
    """Labeled, cleaned and scaled trajectories for a scenario.

    Tracks go through the same ENU-side stages as surveillance data.

    Raises:
        ScenarioError: If a generated flight is rejected by preprocessing.
    """
    config = scenario.preprocess_config()

    def run(track: Track) -> Trajectory:
        try:
            return process_enu_track(track, config)
        except PreprocessError as e:
            raise ScenarioError(f"generated flight {track.flight_id} rejected: {e}") from e

    trajs = ordered_map(run, generate_tracks(scenario, seed, threads), threads)
    logger.info(f"Generated {len(trajs)} trajectories in {len(scenario.procedures)} classes")
    return trajs


def synth_dataset(scenario: ScenarioSpec, seed: int = 0, threads: int = 1) -> Dataset:
    """Generate and pad a scenario into a labeled Dataset."""
    metadata = {
        "stages": ["synth", "bound", "resample", "outliers", "smooth", "scale", "downsample"],
        "scenario": scenario.model_dump(mode="json"),
        "seed": seed,
    }
    return pad_dataset(generate(scenario, seed, threads), metadata)
