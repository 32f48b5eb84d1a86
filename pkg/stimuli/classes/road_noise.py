import numpy as np

from signal_core.dsp import lowpass
from signal_core.signal import Signal, dbfs_to_rms

from ..base_stimulus import Stimulus
from ..rng import PinnedRng
from ..spec import RoadNoiseParams, StimulusClass, StimulusSpec


class RoadNoiseStimulus(Stimulus):
    """Low-pass filtered Gaussian noise, set to an exact RMS level"""

    label = StimulusClass.ROAD_NOISE

    def draw_params(self, rng: PinnedRng) -> RoadNoiseParams:
        return self._uniform_params(RoadNoiseParams, rng)

    def render(self, spec: StimulusSpec, t: np.ndarray, rng: PinnedRng) -> np.ndarray:
        p: RoadNoiseParams = spec.params
        white = Signal(rng.normal(t.size), spec.sample_rate)
        shaped = lowpass(white, p.cutoff).samples
        rms = float(np.sqrt(np.mean(shaped ** 2)))
        return shaped * (dbfs_to_rms(p.level_dbfs) / rms)
