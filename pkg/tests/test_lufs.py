import math

import numpy as np
import pytest

from metrics import get_metric
from metrics.loudness import lufs_integrated, normalize_loudness
from metrics.types import AnnoyanceThresholds
from signal_core.errors import DegenerateInputError
from stimuli.test_tones import silence, sine, white_noise


class TestLufsIntegrated:
    def test_full_scale_sine(self):
        assert lufs_integrated(sine(997.0, 1.0, 10.0)).value == pytest.approx(-3.01, abs=0.1)

    def test_minus_20_db_sine(self):
        assert lufs_integrated(sine(997.0, 0.1, 10.0)).value == pytest.approx(-23.01, abs=0.1)

    def test_through_registry(self):
        value = get_metric('LUFS').compute(sine(997.0, 1.0, 10.0), AnnoyanceThresholds())
        assert value.variant == 'bs1770-4'
        assert value.value == pytest.approx(-3.01, abs=0.1)

    def test_silence_is_undefined(self):
        value = lufs_integrated(silence(2.0))
        assert value.value is None
        assert value.unit == 'LUFS'

    def test_too_short(self):
        with pytest.raises(DegenerateInputError) as error:
            lufs_integrated(sine(997.0, duration_s=0.3))
        assert error.value.metric == 'lufs'

    def test_leading_silence_is_gated_out(self):
        tone = sine(997.0, 1.0, 20.0)
        padded = tone.with_samples(np.concatenate([silence(10.0).samples, tone.samples]))
        assert lufs_integrated(padded).value == pytest.approx(lufs_integrated(tone).value, abs=0.1)

    def test_gain_shift(self):
        signal = white_noise(-20.0, duration_s=3.0, seed=8)
        base = lufs_integrated(signal).value
        shifted = lufs_integrated(signal.scaled(0.5)).value
        assert shifted - base == pytest.approx(20.0 * math.log10(0.5), abs=0.05)


class TestNormalizeLoudness:
    def test_reaches_target(self):
        normalized = normalize_loudness(white_noise(-30.0, duration_s=3.0, seed=8), -23.0)
        assert lufs_integrated(normalized).value == pytest.approx(-23.0, abs=0.01)

    def test_silence(self):
        with pytest.raises(DegenerateInputError):
            normalize_loudness(silence(1.0), -23.0)
