from abc import ABC, abstractmethod

import numpy as np

from signal_core.signal import Signal

from .rng import PinnedRng
from .spec import StimulusClass, StimulusParams, StimulusSpec

PEAK_LIMIT = 0.99
FADE_S = 0.010

# Independent streams of one item seed
PARAMS_STREAM = 0
SYNTH_STREAM = 1


def time_axis(spec: StimulusSpec) -> np.ndarray:
    n = int(round(spec.duration_s * spec.sample_rate))
    return np.arange(n) / spec.sample_rate


def apply_fades(samples: np.ndarray, sample_rate: int, fade_s: float = FADE_S) -> np.ndarray:
    """Raised-cosine fade in and out"""
    n_fade = min(int(round(fade_s * sample_rate)), samples.size // 2)
    if n_fade == 0:
        return samples
    ramp = 0.5 - 0.5 * np.cos(np.pi * np.arange(n_fade) / n_fade)
    out = samples.copy()
    out[:n_fade] *= ramp
    out[samples.size - n_fade:] *= ramp[::-1]
    return out


def peak_limit(samples: np.ndarray, limit: float = PEAK_LIMIT) -> np.ndarray:
    """Scale down (never clip) so that max |x| <= limit"""
    peak = float(np.max(np.abs(samples))) if samples.size else 0.0
    if peak > limit:
        return samples * (limit / peak)
    return samples


class Stimulus(ABC):
    """Base class for the synthetic NVH case generators"""

    label: StimulusClass

    @abstractmethod
    def draw_params(self, rng: PinnedRng) -> StimulusParams:
        """Draw every jittered parameter uniformly from its declared range"""
        pass

    @abstractmethod
    def render(self, spec: StimulusSpec, t: np.ndarray, rng: PinnedRng) -> np.ndarray:
        """Raw waveform before fades and peak limiting"""
        pass

    def synth(self, spec: StimulusSpec) -> Signal:
        spec.validate()
        rng = PinnedRng(spec.seed, stream=SYNTH_STREAM)
        samples = self.render(spec, time_axis(spec), rng)
        samples = peak_limit(apply_fades(samples, spec.sample_rate))
        return Signal(samples, spec.sample_rate)

    def _uniform_params(self, params_type, rng: PinnedRng) -> StimulusParams:
        drawn = {
            name: rng.uniform_scalar(lo, hi)
            for name, (lo, hi) in params_type.RANGES.items()
        }
        return params_type(**drawn)
