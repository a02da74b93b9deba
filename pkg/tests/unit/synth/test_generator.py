"""Tests for synthetic trajectory generation."""

import numpy as np
import pytest

from src.synth import (
    Racetrack,
    ScenarioSpec,
    ar1_noise,
    default_scenario,
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
from src.segmentation import RdpParams, rdp_mask
from src.synth.generator import ARC_POINTS
from src.trajectories import validate_trajectory


@pytest.fixture
def small_scenario() -> ScenarioSpec:
    """The default procedures with two flights per class."""
    return default_scenario().model_copy(update={"per_class": 2})


class TestNoise:
    """Tests for ar1_noise and disc_offset."""

    def test_ar1_statistics(self):
        """Marginal spread and lag-1 correlation match the parameters."""
        noise = ar1_noise(20000, std=2.0, rho=0.5, rng=np.random.default_rng(0))[:, 0]
        assert noise.std() == pytest.approx(2.0, rel=0.05)
        assert np.corrcoef(noise[:-1], noise[1:])[0, 1] == pytest.approx(0.5, abs=0.03)

    def test_ar1_shape(self):
        """Each dimension is an independent series."""
        assert ar1_noise(10, 1.0, 0.9, np.random.default_rng(1), dims=2).shape == (10, 2)

    def test_disc_offset_stays_inside(self):
        """Offsets never leave the disc."""
        rng = np.random.default_rng(2)
        offsets = np.array([disc_offset(500.0, rng) for _ in range(500)])
        assert np.hypot(offsets[:, 0], offsets[:, 1]).max() <= 500.0
        assert np.abs(offsets.mean(axis=0)).max() < 50.0


class TestChains:
    """Tests for racetracks, chains and timing."""

    def test_racetrack_lap(self):
        """A lap returns to the fix after passing abeam two radii to the right."""
        fix = np.array([0.0, 0.0, 3000.0])
        holding = Racetrack(inbound_course_deg=0.0, leg_m=5000.0, turn_radius_m=2000.0)
        lap = racetrack_points(fix, holding)
        assert lap.shape == (2 * ARC_POINTS + 2, 3)
        np.testing.assert_allclose(lap[-1], fix, atol=1e-9)
        np.testing.assert_allclose(lap[ARC_POINTS - 1, :2], [4000.0, 0.0], atol=1e-9)
        np.testing.assert_allclose(lap[ARC_POINTS, :2], [4000.0, -5000.0], atol=1e-9)
        assert (lap[:, 2] == 3000.0).all()

    def test_racetrack_laps(self):
        """Multiple laps repeat the circuit."""
        fix = np.array([0.0, 0.0, 3000.0])
        assert len(racetrack_points(fix, Racetrack(laps=2))) == 2 * (2 * ARC_POINTS + 2)

    def test_flight_chain_with_holding(self):
        """The holding circuit is inserted after its fix."""
        spec = default_scenario().procedures[2]
        holding_spec = spec.model_copy(update={"holding": Racetrack(fix_index=0)})
        plain, plain_final = flight_chain(spec)
        held, held_final = flight_chain(holding_spec)
        assert len(held) == len(plain) + 2 * ARC_POINTS + 2
        assert (plain_final, held_final) == (len(plain) - 2, len(held) - 2)

    def test_flight_chain_entry_offset(self):
        """The entry offset shifts only the first vertex horizontally."""
        spec = default_scenario().procedures[0]
        base, _ = flight_chain(spec)
        shifted, _ = flight_chain(spec, np.array([100.0, -50.0]))
        np.testing.assert_allclose(shifted[0] - base[0], [100.0, -50.0, 0.0])
        np.testing.assert_allclose(shifted[1:], base[1:])

    def test_passage_times(self):
        """Legs before the final segment fly faster."""
        chain = np.array([[0.0, 0.0, 0.0], [100.0, 0.0, 0.0], [100.0, 50.0, 0.0]])
        np.testing.assert_allclose(passage_times(chain, 1, 10.0, 5.0), [0.0, 10.0, 20.0])

    def test_sample_chain(self):
        """Samples fall on whole seconds up to the last full second."""
        chain = np.array([[0.0, 0.0, 0.0], [105.0, 0.0, 0.0]])
        grid, positions = sample_chain(chain, np.array([0.0, 10.5]))
        assert grid.tolist() == list(range(11))
        assert positions[10, 0] == pytest.approx(100.0)


class TestGeneration:
    """Tests for track and dataset generation."""

    def test_tracks_per_class(self, small_scenario):
        """Every procedure yields per_class labeled tracks with stable ids."""
        tracks = generate_tracks(small_scenario, seed=0)
        assert len(tracks) == 8
        assert [t.label for t in tracks] == [0, 0, 1, 1, 2, 2, 3, 3]
        assert tracks[0].flight_id == "syn-sw-left-0000"
        assert len({t.flight_id for t in tracks}) == 8
        assert all(np.allclose(np.diff(t.timestamps), 1.0) for t in tracks)

    def test_seed_and_threads(self, small_scenario):
        """Output depends on the seed but not on the thread count."""
        serial = generate_tracks(small_scenario, seed=4)
        parallel = generate_tracks(small_scenario, seed=4, threads=4)
        other = generate_tracks(small_scenario, seed=5)
        for a, b in zip(serial, parallel):
            np.testing.assert_array_equal(a.positions, b.positions)
        assert not np.array_equal(serial[0].positions[:10], other[0].positions[:10])

    def test_noise_free_tracks_follow_the_chain(self, small_scenario):
        """Without noise or jitter a track starts at the entry and ends near the threshold."""
        quiet = small_scenario.model_copy(update={"noise_h_m": 0.0, "noise_v_m": 0.0, "entry_jitter_m": 0.0})
        track = generate_tracks(quiet)[0]
        chain, _ = flight_chain(quiet.procedures[0])
        np.testing.assert_allclose(track.positions[0], chain[0])
        assert np.linalg.norm(track.positions[-1] - chain[-1]) < 100.0

    def test_starts_stay_within_entry_jitter(self, small_scenario):
        """Flights of one class start inside the jitter disc around the nominal entry."""
        scenario = small_scenario.model_copy(update={"per_class": 6, "noise_h_m": 0.0, "noise_v_m": 0.0})
        entry = scenario.procedures[0].entry_point()[:2]
        starts = np.array([t.positions[0, :2] for t in generate_tracks(scenario, seed=7) if t.label == 0])

        assert len(starts) == 6
        assert np.hypot(*(starts - entry).T).max() <= scenario.entry_jitter_m / 2.0 + 1e-6
        pairwise = np.hypot(*(starts[:, None, :] - starts[None, :, :]).transpose(2, 0, 1))
        assert pairwise.max() <= scenario.entry_jitter_m
        assert pairwise.max() > 0.0

    def test_waypoints_become_significant_points(self, small_scenario):
        """Every turn of a noise-free flight is marked by RDP within 3 samples."""
        quiet = small_scenario.model_copy(
            update={"per_class": 1, "noise_h_m": 0.0, "noise_v_m": 0.0, "entry_jitter_m": 0.0}
        )
        for traj in generate(quiet):
            chain, _ = flight_chain(quiet.procedures[traj.label])
            significant = np.flatnonzero(rdp_mask(traj.states, RdpParams(epsilon=1e-4)))
            for vertex in chain[1:-1] / quiet.r_max_m:
                nearest = int(np.argmin(np.linalg.norm(traj.states - vertex, axis=1)))
                assert np.abs(significant - nearest).min() <= 3, f"{traj.id}: no significant point near {vertex}"

    def test_noise_free_scenarios_skip_smoothing(self, small_scenario):
        """Smoothing is only applied when the scenario adds noise."""
        assert small_scenario.preprocess_config().smoothing.enabled
        quiet = small_scenario.model_copy(update={"noise_h_m": 0.0, "noise_v_m": 0.0})
        assert not quiet.preprocess_config().smoothing.enabled
        only_vertical = small_scenario.model_copy(update={"noise_h_m": 0.0})
        assert only_vertical.preprocess_config().smoothing.enabled

    def test_generate_gives_scaled_trajectories(self, small_scenario):
        """Generated trajectories satisfy every trajectory invariant."""
        trajs = generate(small_scenario, seed=1)
        assert len(trajs) == 8
        for traj in trajs:
            assert validate_trajectory(traj) == []
            assert traj.states.shape[0] > 50

    def test_records_near_reference(self, small_scenario):
        """Geodetic records stay within the terminal area."""
        tracks = generate_tracks(small_scenario, seed=2)[:2]
        records = tracks_to_records(tracks, small_scenario)
        assert len(records) == sum(len(t.timestamps) for t in tracks)
        assert {r.flight_id for r in records} == {t.flight_id for t in tracks}
        assert max(abs(r.latitude - 37.46) for r in records) < 0.6

    def test_synth_dataset(self, small_scenario):
        """The dataset is labeled and records its provenance."""
        dataset = synth_dataset(small_scenario, seed=3)
        assert dataset.n == 8
        assert dataset.is_labeled
        assert dataset.metadata["seed"] == 3
        assert dataset.metadata["scenario"]["per_class"] == 2
