import math
from dataclasses import dataclass, field, replace
from typing import Dict

import numpy as np

from .errors import DegenerateInputError, ParameterError

MIN_SAMPLE_RATE = 8000
CANONICAL_SAMPLE_RATE = 48000
DEFAULT_CALIBRATION_OFFSET_DB = 94.0


def dbfs_to_rms(level_dbfs: float) -> float:
    """RMS of a signal at the given level (AES17: a full-scale sine is 0 dBFS)"""
    return 10.0 ** (level_dbfs / 20.0) / math.sqrt(2.0)


def dbfs_to_amplitude(level_dbfs: float) -> float:
    """Peak amplitude of a sine at the given level"""
    return 10.0 ** (level_dbfs / 20.0)


def _as_samples(samples) -> np.ndarray:
    array = np.asarray(samples, dtype=np.float64)
    if array.ndim != 1:
        raise ParameterError(f"Expected mono samples, got array of shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ParameterError("Samples must be finite")
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Signal:
    """Mono audio with its sample rate and dBFS→SPL calibration"""

    samples: np.ndarray
    sample_rate: int = CANONICAL_SAMPLE_RATE
    calibration_offset_db: float = DEFAULT_CALIBRATION_OFFSET_DB

    def __post_init__(self):
        object.__setattr__(self, 'samples', _as_samples(self.samples))
        if int(self.sample_rate) != self.sample_rate or self.sample_rate < MIN_SAMPLE_RATE:
            raise ParameterError(
                f"Sample rate must be an integer >= {MIN_SAMPLE_RATE} Hz, got {self.sample_rate}"
            )
        object.__setattr__(self, 'sample_rate', int(self.sample_rate))

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate

    @property
    def nyquist(self) -> float:
        return self.sample_rate / 2.0

    def with_samples(self, samples) -> 'Signal':
        return replace(self, samples=samples)

    def scaled(self, gain: float) -> 'Signal':
        return self.with_samples(self.samples * gain)

    def require_samples(self, minimum: int = 1, what: str = 'analysis') -> None:
        if self.samples.size < minimum:
            raise DegenerateInputError(
                f"{what} needs at least {minimum} samples, got {self.samples.size}"
            )

    def rms(self) -> float:
        self.require_samples()
        return float(np.sqrt(np.mean(self.samples ** 2)))

    def level_dbfs(self) -> float:
        rms = self.rms()
        if rms == 0.0:
            return -math.inf
        return 20.0 * math.log10(math.sqrt(2.0) * rms)

    def level_spl(self) -> float:
        """Sound pressure level implied by the calibration offset"""
        return self.level_dbfs() + self.calibration_offset_db


@dataclass(frozen=True)
class Envelope:
    """Instantaneous amplitude of a signal, same length and rate as the source"""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        object.__setattr__(self, 'samples', _as_samples(self.samples))

    def __len__(self) -> int:
        return self.samples.size

    @property
    def nyquist(self) -> float:
        return self.sample_rate / 2.0

    def with_samples(self, samples) -> 'Envelope':
        return replace(self, samples=samples)


@dataclass(frozen=True)
class Spectrum:
    """One-sided magnitude spectrum (2/n scaling away from DC and Nyquist)"""

    bin_freqs: np.ndarray
    magnitudes: np.ndarray
    n: int

    def total_power(self) -> float:
        """Mean square of the transformed frame, recovered from the magnitudes"""
        power = self.magnitudes ** 2 / 2.0
        power[0] = self.magnitudes[0] ** 2
        if self.n % 2 == 0:
            power[-1] = self.magnitudes[-1] ** 2
        return float(np.sum(power))


@dataclass(frozen=True)
class PowerSpectralDensity:
    bin_freqs: np.ndarray
    psd: np.ndarray
    segment: int
    overlap: float
    window: str = 'hann'
    provenance: Dict[str, object] = field(default_factory=dict)

    @property
    def resolution(self) -> float:
        return float(self.bin_freqs[1] - self.bin_freqs[0])

    def total_power(self) -> float:
        return float(np.sum(self.psd) * self.resolution)
