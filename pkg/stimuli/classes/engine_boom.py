import numpy as np

from ..base_stimulus import Stimulus
from ..rng import PinnedRng
from ..spec import EngineBoomParams, StimulusClass, StimulusSpec

FUNDAMENTAL_AMPLITUDE = 0.5


class EngineBoomStimulus(Stimulus):
    """Amplitude-modulated harmonic series near 100-200 Hz"""

    label = StimulusClass.ENGINE_BOOM

    def draw_params(self, rng: PinnedRng) -> EngineBoomParams:
        return self._uniform_params(EngineBoomParams, rng)

    def render(self, spec: StimulusSpec, t: np.ndarray, rng: PinnedRng) -> np.ndarray:
        p: EngineBoomParams = spec.params
        out = np.zeros_like(t)
        for k in range(1, p.n_harmonics + 1):
            amplitude = FUNDAMENTAL_AMPLITUDE * 10.0 ** (-p.harmonic_rolloff_db * (k - 1) / 20.0)
            out += amplitude * np.sin(2.0 * np.pi * k * p.f0 * t)
        modulation = (1.0 + p.mod_depth * np.cos(2.0 * np.pi * p.mod_freq * t)) / (1.0 + p.mod_depth)
        return out * modulation
