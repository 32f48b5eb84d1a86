"""
Critical-band rate (Bark) conversion and Bark-band energy integration.

Uses Zwicker's closed-form approximation
    z = 13 * atan(0.00076 * f) + 3.5 * atan((f / 7500)^2)
which is strictly increasing on [0, inf) and reaches 24 Bark near 15.5 kHz.
"""
from typing import Union

import numpy as np
from scipy.optimize import brentq

from .dsp import WELCH_OVERLAP, WELCH_SEGMENT, welch_psd
from .errors import ParameterError
from .signal import PowerSpectralDensity, Signal

N_BARK_BANDS = 24

ArrayLike = Union[float, np.ndarray]


def hz_to_bark(freq: ArrayLike) -> ArrayLike:
    freq = np.asarray(freq, dtype=np.float64)
    if np.any(freq < 0):
        raise ParameterError("Frequency must be non-negative")
    z = 13.0 * np.arctan(0.00076 * freq) + 3.5 * np.arctan((freq / 7500.0) ** 2)
    return float(z) if z.ndim == 0 else z


def bark_to_hz(z: float) -> float:
    """Numerical inverse of hz_to_bark"""
    if z < 0:
        raise ParameterError("Bark value must be non-negative")
    if z == 0:
        return 0.0
    # z(f) saturates near 26.8 Bark
    return float(brentq(lambda f: hz_to_bark(f) - z, 0.0, 1.0e6, xtol=1e-9))


def bark_band_edges_hz() -> np.ndarray:
    """Frequencies of the 25 unit-Bark boundaries 0, 1, ..., 24"""
    return np.array([bark_to_hz(z) for z in range(N_BARK_BANDS + 1)])


def band_index(freqs: np.ndarray) -> np.ndarray:
    """Bark band of each frequency; values >= 24 fall outside the partition"""
    return np.floor(hz_to_bark(np.asarray(freqs, dtype=np.float64))).astype(int)


def integrate_bark_bands(psd: PowerSpectralDensity) -> np.ndarray:
    """Integrate a PSD over the unit-Bark intervals [z, z+1), z = 0..23"""
    bands = band_index(psd.bin_freqs)
    inside = bands < N_BARK_BANDS
    energies = np.bincount(
        bands[inside],
        weights=psd.psd[inside] * psd.resolution,
        minlength=N_BARK_BANDS,
    )
    return energies


def bark_band_energies(
    signal: Signal,
    segment: int = WELCH_SEGMENT,
    overlap: float = WELCH_OVERLAP,
) -> np.ndarray:
    """24 band energies (mean-square units) from the Welch PSD"""
    return integrate_bark_bands(welch_psd(signal, segment, overlap))
