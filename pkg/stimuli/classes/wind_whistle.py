import numpy as np

from signal_core.signal import dbfs_to_amplitude, dbfs_to_rms

from ..base_stimulus import Stimulus
from ..rng import PinnedRng
from ..spec import StimulusClass, StimulusSpec, WindWhistleParams


class WindWhistleStimulus(Stimulus):
    """Tone at 2-5 kHz over broadband white noise"""

    label = StimulusClass.WIND_WHISTLE

    def draw_params(self, rng: PinnedRng) -> WindWhistleParams:
        return self._uniform_params(WindWhistleParams, rng)

    def render(self, spec: StimulusSpec, t: np.ndarray, rng: PinnedRng) -> np.ndarray:
        p: WindWhistleParams = spec.params
        tone = dbfs_to_amplitude(p.tone_level_dbfs) * np.sin(2.0 * np.pi * p.tone_freq * t)
        noise = dbfs_to_rms(p.noise_level_dbfs) * rng.normal(t.size)
        return tone + noise
