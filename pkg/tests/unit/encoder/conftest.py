"""Fixtures for encoder tests."""

import numpy as np
import pytest

from src.encoder import CausalEncoder, EncoderConfig


@pytest.fixture
def small_config():
    """A one-block encoder small enough for finite differences."""
    return EncoderConfig(layers=1, model_dim=8, ff_dim=16, heads=2, repr_dim=4, input_dim=9, attn_dropout=0.0)


@pytest.fixture
def desk_encoder():
    """A randomly initialized desk-scale encoder."""
    return CausalEncoder(EncoderConfig(), seed=11)


@pytest.fixture
def feature_batch():
    """Three random 9-feature sequences of lengths 7, 4 and 1, NaN-padded."""
    rng = np.random.default_rng(5)
    lengths = np.array([7, 4, 1])
    features = np.full((3, 7, 9), np.nan)
    for i, length in enumerate(lengths):
        features[i, :length] = rng.uniform(-1.0, 1.0, size=(length, 9))
    return features, lengths
