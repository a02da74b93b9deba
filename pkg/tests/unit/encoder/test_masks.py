"""Tests for timestamp masking and attention masks."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.autodiff import NEG_INF
from src.encoder import PRESETS, EncoderConfig, build_attention_mask, encoder_preset, sample_binomial_mask, valid_mask
from src.errors import ConfigError


class TestEncoderConfig:
    """Tests for EncoderConfig and presets."""

    def test_defaults_are_desk_scale(self):
        """The default configuration is the desk preset."""
        config = EncoderConfig()
        assert (config.layers, config.model_dim, config.repr_dim, config.head_dim) == (2, 64, 32, 16)

    def test_heads_must_divide_model_dim(self):
        """The model dimension splits evenly across heads."""
        with pytest.raises(ValidationError, match="not divisible by heads"):
            EncoderConfig(model_dim=10, heads=4)

    def test_mask_prob_range(self):
        """Masking probabilities must lie in [0, 1)."""
        with pytest.raises(ValidationError, match="rate must be in"):
            EncoderConfig(mask_prob=1.0)

    def test_paper_preset(self):
        """The large preset matches the full-size architecture."""
        config = encoder_preset("paper")
        assert (config.layers, config.model_dim, config.ff_dim, config.heads, config.repr_dim) == (12, 768, 3072, 12, 320)
        assert set(PRESETS) == {"desk", "paper"}

    def test_preset_overrides(self):
        """Overrides replace preset values."""
        assert encoder_preset("desk", layers=3).layers == 3

    def test_unknown_preset(self):
        """Unknown preset names are rejected."""
        with pytest.raises(ConfigError, match="unknown encoder preset"):
            encoder_preset("huge")


class TestMasks:
    """Tests for valid, random and attention masks."""

    def test_valid_mask(self):
        """Valid positions are those below each length."""
        assert valid_mask(np.array([2, 0, 3]), 3).tolist() == [
            [True, True, False],
            [False, False, False],
            [True, True, True],
        ]

    def test_binomial_mask_keeps_first_and_skips_padding(self):
        """The first step is always kept and padding never is."""
        rng = np.random.default_rng(0)
        keep = sample_binomial_mask(np.array([5, 2]), 5, 0.9, rng)
        assert keep[:, 0].all()
        assert not keep[1, 2:].any()

    def test_binomial_mask_rate(self):
        """Roughly mask_prob of valid steps after the first are dropped."""
        rng = np.random.default_rng(1)
        keep = sample_binomial_mask(np.full(200, 100), 100, 0.2, rng)
        assert keep[:, 1:].mean() == pytest.approx(0.8, abs=0.01)

    def test_zero_probability_keeps_everything(self):
        """With probability 0 the keep mask equals the valid mask."""
        rng = np.random.default_rng(2)
        lengths = np.array([4, 2])
        np.testing.assert_array_equal(sample_binomial_mask(lengths, 4, 0.0, rng), valid_mask(lengths, 4))

    def test_attention_mask_is_causal_and_hides_padding(self):
        """Keys after the query and padded keys are hidden."""
        mask = build_attention_mask(np.array([3, 2]), 3)
        assert mask.shape == (2, 1, 3, 3)
        visible = mask[:, 0] == 0.0
        assert visible[0].tolist() == [[True, False, False], [True, True, False], [True, True, True]]
        assert visible[1].tolist() == [[True, False, False], [True, True, False], [True, True, False]]
        assert mask[0, 0, 0, 1] == NEG_INF

    def test_attention_mask_hides_dropped_keys(self):
        """Randomly dropped steps are hidden from later queries."""
        keep = np.array([[True, False, True]])
        visible = build_attention_mask(np.array([3]), 3, keep)[0, 0] == 0.0
        assert visible[2].tolist() == [True, False, True]
