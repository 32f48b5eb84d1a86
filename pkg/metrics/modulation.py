"""
Envelope-modulation proxies.

Both work on the Hilbert envelope, normalized by its mean so that they do not
depend on gain: roughness keeps 15-300 Hz modulation, fluctuation keeps
modulation below 20 Hz. The outer 5% at each end is discarded to drop
zero-phase filter transients.
"""
import numpy as np

from signal_core.dsp import bandpass, hilbert_envelope, interior, lowpass
from signal_core.errors import DegenerateInputError
from signal_core.signal import Envelope, Signal

from .types import MetricValue, params_hash

ROUGHNESS_BAND_HZ = (15.0, 300.0)
FLUCTUATION_CUTOFF_HZ = 20.0
INTERIOR_FRACTION = 0.9
ROUGHNESS_MIN_S = 0.5
FLUCTUATION_MIN_S = 1.0
_MIN_MEAN_ENVELOPE = 1e-12


def _envelope(signal: Signal, metric: str, min_duration: float) -> Envelope:
    if signal.duration < min_duration:
        raise DegenerateInputError(
            f"needs at least {min_duration} s of audio, got {signal.duration:.3f} s", metric=metric
        )
    return hilbert_envelope(signal)


def _mean_level(envelope: Envelope, metric: str) -> float:
    mean = float(np.mean(interior(envelope.samples, INTERIOR_FRACTION)))
    if mean <= _MIN_MEAN_ENVELOPE:
        raise DegenerateInputError("mean envelope is zero (silent input)", metric=metric)
    return mean


def roughness_proxy(signal: Signal) -> MetricValue:
    envelope = _envelope(signal, 'roughness', ROUGHNESS_MIN_S)
    mean = _mean_level(envelope, 'roughness')
    lo, hi = ROUGHNESS_BAND_HZ
    modulation = interior(bandpass(envelope, lo, hi).samples, INTERIOR_FRACTION)
    value = float(np.sqrt(np.mean(modulation ** 2))) / mean
    return MetricValue(
        metric='roughness',
        value=value,
        unit='asper-proxy',
        variant='envelope-bandpass-proxy',
        params_hash=params_hash({'band_hz': list(ROUGHNESS_BAND_HZ), 'interior': INTERIOR_FRACTION}),
    )


def fluctuation_proxy(signal: Signal) -> MetricValue:
    envelope = _envelope(signal, 'fluctuation', FLUCTUATION_MIN_S)
    mean = _mean_level(envelope, 'fluctuation')
    centered = envelope.with_samples(envelope.samples - np.mean(envelope.samples))
    slow = interior(lowpass(centered, FLUCTUATION_CUTOFF_HZ).samples, INTERIOR_FRACTION)
    value = float(np.var(slow)) / mean ** 2
    return MetricValue(
        metric='fluctuation',
        value=value,
        unit='vacil-proxy',
        variant='envelope-lowpass-proxy',
        params_hash=params_hash({'cutoff_hz': FLUCTUATION_CUTOFF_HZ, 'interior': INTERIOR_FRACTION}),
    )
