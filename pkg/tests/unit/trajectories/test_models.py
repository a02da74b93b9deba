"""Tests for trajectory models, validation and padding."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import DatasetError
from src.trajectories import (
    UNLABELED,
    Dataset,
    RawRecord,
    ReprSeq,
    Trajectory,
    pad_dataset,
    strip_padding,
    validate_trajectory,
)


class TestRawRecord:
    """Tests for RawRecord field validation."""

    def test_valid_record(self):
        """A record inside the coordinate ranges should validate."""
        record = RawRecord(flight_id="KAL123", timestamp=10.0, latitude=37.5, longitude=126.4, baro_altitude=900.0)
        assert record.flight_id == "KAL123"

    def test_latitude_out_of_range(self):
        """Latitude beyond 90 degrees should be rejected."""
        with pytest.raises(ValidationError, match="latitude must be between"):
            RawRecord(flight_id="A", timestamp=0.0, latitude=91.0, longitude=0.0, baro_altitude=0.0)

    def test_flight_id_with_comma(self):
        """Flight ids must not contain CSV separators."""
        with pytest.raises(ValidationError, match="commas or newlines"):
            RawRecord(flight_id="A,B", timestamp=0.0, latitude=0.0, longitude=0.0, baro_altitude=0.0)

    def test_non_finite_altitude(self):
        """NaN altitude should be rejected."""
        with pytest.raises(ValidationError, match="must be finite"):
            RawRecord(flight_id="A", timestamp=0.0, latitude=0.0, longitude=0.0, baro_altitude=float("nan"))


class TestTrajectory:
    """Tests for the Trajectory model."""

    def test_states_must_have_three_columns(self):
        """A (T, 2) array is not a valid trajectory."""
        with pytest.raises(ValidationError, match=r"shape \(T, 3\)"):
            Trajectory(id="A", states=[[0.0, 0.0], [1.0, 1.0]])

    def test_length(self):
        """Length should be the number of states."""
        traj = Trajectory(id="A", states=np.zeros((5, 3)))
        assert traj.length == 5


class TestValidateTrajectory:
    """Tests for validate_trajectory."""

    def test_valid_trajectory_has_no_violations(self):
        """A short finite scaled trajectory is valid."""
        traj = Trajectory(id="A", states=[[0.1, 0.2, 0.0], [0.2, 0.3, 0.0]])
        assert validate_trajectory(traj) == []

    def test_single_state(self):
        """One state violates the minimum length."""
        traj = Trajectory(id="A", states=[[0.1, 0.2, 0.0]])
        violations = validate_trajectory(traj)
        assert [v.invariant for v in violations] == ["length"]

    def test_nan_and_out_of_range(self):
        """NaN rows and unscaled rows are reported with their index."""
        traj = Trajectory(id="A", states=[[0.0, 0.0, 0.0], [np.nan, 0.0, 0.0], [1.5, 0.0, 0.0]])
        violations = validate_trajectory(traj)
        assert [(v.invariant, v.index) for v in violations] == [("finite", 1), ("scaled", 2)]


class TestPadDataset:
    """Tests for pad_dataset and strip_padding."""

    def test_pads_with_nan_to_longest(self):
        """Shorter trajectories are NaN-padded to T_max."""
        trajs = [
            Trajectory(id="A", states=np.full((2, 3), 0.1), label=0),
            Trajectory(id="B", states=np.full((4, 3), 0.2)),
        ]
        dataset = pad_dataset(trajs)

        assert dataset.states.shape == (2, 4, 3)
        assert dataset.lengths.tolist() == [2, 4]
        assert np.isnan(dataset.states[0, 2:]).all()
        assert dataset.labels.tolist() == [0, UNLABELED]
        assert not dataset.is_labeled

    def test_empty_dataset(self):
        """An empty list cannot be padded."""
        with pytest.raises(DatasetError, match="empty dataset"):
            pad_dataset([])

    def test_invalid_trajectory(self):
        """Invalid trajectories are rejected with their id."""
        with pytest.raises(DatasetError, match="invalid trajectory B"):
            pad_dataset([
                Trajectory(id="A", states=np.zeros((2, 3))),
                Trajectory(id="B", states=np.zeros((1, 3))),
            ])

    def test_strip_padding_recovers_trajectories(self, labeled_dataset):
        """Stripping padding gives back the original states and labels."""
        trajs = strip_padding(labeled_dataset)
        assert [t.length for t in trajs] == labeled_dataset.lengths.tolist()
        assert trajs[0].label == 0
        np.testing.assert_array_equal(trajs[-1].states, labeled_dataset.valid_states(labeled_dataset.n - 1))


class TestDataset:
    """Tests for Dataset shape validation and subsets."""

    def test_t_max_must_match_longest(self):
        """Padding beyond the longest trajectory is rejected."""
        with pytest.raises(ValidationError, match="T_max must equal"):
            Dataset(ids=["A"], states=np.zeros((1, 5, 3)), lengths=[3], labels=[0])

    def test_segment_ids_shape(self):
        """Segment IDs must align with the states."""
        with pytest.raises(ValidationError, match="segment_ids shape"):
            Dataset(ids=["A"], states=np.zeros((1, 3, 3)), lengths=[3], labels=[0], segment_ids=np.ones((1, 2)))

    def test_subset_repads(self, labeled_dataset):
        """A subset of short trajectories has a smaller T_max."""
        shortest = int(np.argmin(labeled_dataset.lengths))
        subset = labeled_dataset.subset([shortest])
        assert subset.t_max == labeled_dataset.lengths[shortest]
        assert subset.ids == [labeled_dataset.ids[shortest]]
        assert subset.metadata == labeled_dataset.metadata

    def test_valid_segment_ids_without_segmentation(self, labeled_dataset):
        """Asking for segment IDs of an unsegmented dataset is an error."""
        with pytest.raises(ValueError, match="no segment IDs"):
            labeled_dataset.valid_segment_ids(0)


class TestReprSeq:
    """Tests for ReprSeq."""

    def test_instance_vector_is_last_row(self):
        """The instance vector is the final timestep."""
        seq = ReprSeq(id="A", vectors=[[1.0, 0.0], [0.0, 1.0]])
        np.testing.assert_array_equal(seq.instance_vector, [0.0, 1.0])
