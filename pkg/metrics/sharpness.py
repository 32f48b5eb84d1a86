import numpy as np

from signal_core.bark import N_BARK_BANDS
from signal_core.dsp import fft_magnitude, next_power_of_two
from signal_core.errors import DegenerateInputError
from signal_core.signal import Signal

from .loudness import ZWICKER_PARAMS, specific_loudness
from .types import MetricValue, params_hash

WEIGHTING_KNEE_BARK = 15.8
BAND_CENTERS = np.arange(N_BARK_BANDS) + 0.5


def high_frequency_weighting(z: np.ndarray) -> np.ndarray:
    """g(z): 1 up to 15.8 Bark, exponential emphasis above"""
    z = np.asarray(z, dtype=np.float64)
    return np.where(z <= WEIGHTING_KNEE_BARK, 1.0, 0.066 * np.exp(0.171 * z))


def sharpness_centroid(signal: Signal) -> MetricValue:
    """Magnitude-weighted mean frequency in kHz"""
    signal.require_samples(1, 'sharpness_centroid')
    spectrum = fft_magnitude(signal, max(16, next_power_of_two(len(signal))))
    mass = float(np.sum(spectrum.magnitudes))
    if mass <= 0.0:
        raise DegenerateInputError("no spectral mass", metric='sharpness_centroid')
    centroid_hz = float(np.sum(spectrum.bin_freqs * spectrum.magnitudes) / mass)
    return MetricValue(
        metric='sharpness_centroid',
        value=centroid_hz / 1000.0,
        unit='acum-proxy',
        variant='spectral-centroid',
        params_hash=params_hash({'transform': 'power-of-two-padded', 'scale_hz': 1000.0}),
    )


def weighted_sharpness_from_specific(specific: np.ndarray) -> float:
    specific = np.asarray(specific, dtype=np.float64)
    total = float(np.sum(specific))
    if total <= 0.0:
        raise DegenerateInputError("no specific loudness", metric='sharpness')
    weighted = high_frequency_weighting(BAND_CENTERS) * specific * BAND_CENTERS
    return float(np.sum(weighted) / total)


def sharpness_weighted(signal: Signal) -> MetricValue:
    return MetricValue(
        metric='sharpness',
        value=weighted_sharpness_from_specific(specific_loudness(signal)),
        unit='acum-proxy',
        variant='bismarck-weighted-proxy',
        params_hash=params_hash({**ZWICKER_PARAMS, 'knee_bark': WEIGHTING_KNEE_BARK}),
    )
