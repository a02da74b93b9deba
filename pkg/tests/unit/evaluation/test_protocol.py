"""Tests for instance vectors, the evaluation protocol, sweeps and reports."""

import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from src.errors import EvaluationError
from src.evaluation import (
    METRICS_COLUMNS,
    EvalScores,
    InstanceRepr,
    aggregate_seeds,
    evaluate_representations,
    extract_instance_repr,
    instance_repr,
    mi_sweep,
    pca_project,
    raw_final_state,
    write_metrics_csv,
    write_projection_csv,
    write_sweep_csv,
)
from src.features import FeatureSelector
from src.trajectories import ReprSeq


def separable(seed: int, per_class: int = 10) -> InstanceRepr:
    """Two tight clusters of 3-vectors labeled 0 and 1."""
    rng = np.random.default_rng(seed)
    vectors = np.vstack(
        [rng.normal([1.0, 0.0, 0.0], 0.05, size=(per_class, 3)), rng.normal([0.0, 1.0, 0.0], 0.05, size=(per_class, 3))]
    )
    labels = np.repeat([0, 1], per_class)
    return InstanceRepr(ids=[f"t{i}" for i in range(len(labels))], vectors=vectors, labels=labels)


class TestInstanceRepr:
    """Tests for final-timestep extraction."""

    def test_extract_uses_last_valid_step(self):
        """Row i is taken at lengths[i] - 1, never from padding."""
        z = np.arange(2 * 3 * 2, dtype=float).reshape(2, 3, 2)
        z[1, 2] = np.nan
        np.testing.assert_array_equal(extract_instance_repr(z, np.array([3, 2])), [[4.0, 5.0], [8.0, 9.0]])

    @pytest.mark.parametrize("lengths", [[0, 1], [4, 1]])
    def test_extract_bad_lengths(self, lengths):
        """Lengths must lie between 1 and the padded size."""
        with pytest.raises(EvaluationError, match="length between 1"):
            extract_instance_repr(np.zeros((2, 3, 2)), np.array(lengths))

    def test_instance_repr_from_sequences(self):
        """Sequences contribute their final vectors; missing labels become -1."""
        seqs = [
            ReprSeq(id="a", vectors=[[1.0, 0.0], [0.0, 1.0]], label=2),
            ReprSeq(id="b", vectors=[[0.5, 0.5]]),
        ]
        result = instance_repr(seqs)
        assert result.ids == ["a", "b"]
        np.testing.assert_array_equal(result.vectors, [[0.0, 1.0], [0.5, 0.5]])
        assert result.labels.tolist() == [2, -1]

    def test_misaligned(self):
        """Ids, vectors and labels must align."""
        with pytest.raises(ValidationError, match="do not align"):
            InstanceRepr(ids=["a"], vectors=np.zeros((2, 3)), labels=np.zeros(2))

    def test_raw_final_state(self, labeled_dataset):
        """The baseline takes features of each final state."""
        baseline = raw_final_state(labeled_dataset, FeatureSelector.POS)
        assert baseline.vectors.shape == (labeled_dataset.n, 3)
        np.testing.assert_allclose(baseline.vectors[0], labeled_dataset.valid_states(0)[-1])
        assert baseline.labels.tolist() == labeled_dataset.labels.tolist()


class TestEvaluateRepresentations:
    """Tests for evaluate_representations and aggregate_seeds."""

    def test_separable_scores_perfectly(self):
        """Clean clusters give perfect accuracy, NMI and ARI."""
        scores = evaluate_representations(separable(0), separable(1), seed=3)
        assert (scores.acc, scores.k, scores.seed) == (1.0, 2, 3)
        assert scores.nmi == pytest.approx(1.0)
        assert scores.ari == pytest.approx(1.0)

    def test_explicit_hyperparameters(self):
        """C and gamma pass through to the classifier."""
        scores = evaluate_representations(separable(0), separable(1), C=5.0, gamma=2.0)
        assert (scores.C, scores.gamma) == (5.0, 2.0)

    def test_unlabeled(self):
        """Unlabeled instances cannot be scored."""
        test = separable(1)
        test = test.model_copy(update={"labels": np.full(test.labels.size, -1)})
        with pytest.raises(EvaluationError, match="labeled trajectories"):
            evaluate_representations(separable(0), test)

    def test_aggregate(self):
        """Mean and population standard deviation per metric."""
        scores = [EvalScores(acc=0.8, nmi=0.5, ari=0.4), EvalScores(acc=1.0, nmi=0.7, ari=0.6)]
        summary = aggregate_seeds(scores)
        assert summary["acc"]["mean"] == pytest.approx(0.9)
        assert summary["acc"]["std"] == pytest.approx(0.1)
        assert set(summary) == {"acc", "nmi", "ari"}

    def test_aggregate_nothing(self):
        """At least one seed is needed."""
        with pytest.raises(EvaluationError, match="no scores"):
            aggregate_seeds([])


class TestMiSweep:
    """Tests for mi_sweep."""

    def test_sweep_range(self):
        """k runs from k_min to k_max in steps; MI never exceeds the label entropy."""
        data = separable(2, per_class=15)
        sweep = mi_sweep(data.vectors, data.labels, 2, 22, step=5, threads=2)
        assert [k for k, _ in sweep] == [2, 7, 12, 17, 22]
        assert all(0.0 <= mi <= np.log(2) + 1e-12 for _, mi in sweep)
        assert sweep[0][1] == pytest.approx(np.log(2))

    @pytest.mark.parametrize(
        "k_min,k_max,step,message",
        [(1, 5, 5, "below the number of classes"), (5, 4, 5, "empty sweep range"), (2, 31, 5, "exceeds the number")],
    )
    def test_bad_ranges(self, k_min, k_max, step, message):
        """Out-of-range sweeps are rejected."""
        data = separable(3, per_class=15)
        with pytest.raises(EvaluationError, match=message):
            mi_sweep(data.vectors, data.labels, k_min, k_max, step)


class TestReports:
    """Tests for the CSV writers."""

    def test_metrics_csv(self, tmp_path):
        """Rows keep the fixed column order."""
        path = tmp_path / "out" / "metrics.csv"
        write_metrics_csv(
            [{"dataset": "syn", "epsilon": 0.01, "tau": 0.1, "seed": 0, "C": 1.0, "gamma": 0.25, "acc": 1.0, "nmi": 0.9, "ari": 0.8}],
            path,
        )
        frame = pd.read_csv(path)
        assert list(frame.columns) == METRICS_COLUMNS
        assert frame.loc[0, "dataset"] == "syn"
        assert (frame.loc[0, "C"], frame.loc[0, "gamma"]) == (1.0, 0.25)

    def test_sweep_csv(self, tmp_path):
        """Sweep rows are k and MI."""
        path = tmp_path / "sweep.csv"
        write_sweep_csv([(2, 0.5), (7, 0.6)], path)
        assert path.read_text().splitlines() == ["k,mi", "2,0.5", "7,0.6"]

    def test_projection_csv(self, tmp_path):
        """Projection rows carry id, label and two coordinates."""
        data = separable(4, per_class=3)
        path = tmp_path / "projection.csv"
        write_projection_csv(data.ids, data.labels.tolist(), pca_project(data.vectors), path)
        frame = pd.read_csv(path)
        assert list(frame.columns) == ["id", "label", "pc1", "pc2"]
        assert frame["id"].tolist() == data.ids
