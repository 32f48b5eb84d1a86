"""Shared DSP primitives consumed by every metric.

All functions are pure: they return new objects and never touch their inputs.
"""
import logging
from typing import TypeVar, Union

import numpy as np
from scipy import signal as sp_signal

from .errors import ParameterError
from .signal import Envelope, PowerSpectralDensity, Signal, Spectrum

logger = logging.getLogger(__name__)

FILTER_ORDER = 4
WELCH_SEGMENT = 8192
WELCH_OVERLAP = 0.5
WELCH_WINDOW = 'hann'

Filterable = TypeVar('Filterable', Signal, Envelope)


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def next_power_of_two(n: int) -> int:
    return 1 << max(int(n) - 1, 0).bit_length()


def fft_magnitude(signal: Signal, n: int) -> Spectrum:
    """One-sided rectangular-window magnitude spectrum of the first n samples"""
    if not is_power_of_two(n) or n < 16:
        raise ParameterError(f"Transform size must be a power of two >= 16, got {n}")
    signal.require_samples(1, 'fft_magnitude')

    spectrum = np.fft.rfft(signal.samples, n=n)
    magnitudes = np.abs(spectrum) * (2.0 / n)
    magnitudes[0] /= 2.0
    magnitudes[-1] /= 2.0  # n is even, so the last bin is Nyquist
    freqs = np.fft.rfftfreq(n, d=1.0 / signal.sample_rate)
    return Spectrum(bin_freqs=freqs, magnitudes=magnitudes, n=n)


def welch_psd(
    signal: Signal,
    segment: int = WELCH_SEGMENT,
    overlap: float = WELCH_OVERLAP,
) -> PowerSpectralDensity:
    """Welch PSD (periodic Hann, density scaling) integrating to the signal variance"""
    if segment < 16:
        raise ParameterError(f"Welch segment must be at least 16 samples, got {segment}")
    if segment > len(signal):
        raise ParameterError(
            f"Welch segment of {segment} samples exceeds signal length {len(signal)}"
        )
    if not 0.0 <= overlap < 1.0:
        raise ParameterError(f"Welch overlap must be in [0, 1), got {overlap}")

    noverlap = int(segment * overlap)
    freqs, psd = sp_signal.welch(
        signal.samples,
        fs=signal.sample_rate,
        window=WELCH_WINDOW,
        nperseg=segment,
        noverlap=noverlap,
        detrend='constant',
        scaling='density',
        return_onesided=True,
    )
    return PowerSpectralDensity(
        bin_freqs=freqs,
        psd=np.maximum(psd, 0.0),
        segment=segment,
        overlap=overlap,
        window=WELCH_WINDOW,
        provenance={
            'segment': segment,
            'overlap': overlap,
            'window': WELCH_WINDOW,
            'sample_rate': signal.sample_rate,
        },
    )


def hilbert_envelope(signal: Signal) -> Envelope:
    """Magnitude of the analytic signal (FFT construction, full length)"""
    signal.require_samples(16, 'hilbert_envelope')
    analytic = sp_signal.hilbert(signal.samples)
    return Envelope(samples=np.abs(analytic), sample_rate=signal.sample_rate)


def _zero_phase_factor(order: int) -> float:
    # |H|^4 of a Butterworth prototype is 1/2 at this normalized frequency
    return (np.sqrt(2.0) - 1.0) ** (1.0 / (2 * order))


def _warp(freq: float, sample_rate: int) -> float:
    return 2.0 * sample_rate * np.tan(np.pi * freq / sample_rate)


def _unwarp(omega: float, sample_rate: int) -> float:
    return sample_rate / np.pi * np.arctan(omega / (2.0 * sample_rate))


def lowpass_design_edge(cutoff: float, sample_rate: int, order: int = FILTER_ORDER) -> float:
    """Design cutoff putting the forward-backward response at -3 dB on `cutoff`"""
    return _unwarp(_warp(cutoff, sample_rate) / _zero_phase_factor(order), sample_rate)


def bandpass_design_edges(lo: float, hi: float, sample_rate: int, order: int = FILTER_ORDER):
    """Design edges putting the forward-backward response at -3 dB on lo and hi"""
    w_lo, w_hi = _warp(lo, sample_rate), _warp(hi, sample_rate)
    bandwidth = (w_hi - w_lo) / _zero_phase_factor(order)
    center_sq = w_lo * w_hi
    w1 = (-bandwidth + np.sqrt(bandwidth ** 2 + 4.0 * center_sq)) / 2.0
    return _unwarp(w1, sample_rate), _unwarp(w1 + bandwidth, sample_rate)


def _apply_sos(data: Filterable, sos: np.ndarray) -> Filterable:
    samples = data.samples
    if not np.any(samples):
        return data.with_samples(np.zeros_like(samples))
    return data.with_samples(sp_signal.sosfiltfilt(sos, samples))


def bandpass(
    data: Filterable, lo: float, hi: float, order: int = FILTER_ORDER
) -> Filterable:
    """Zero-phase Butterworth band-pass, -3 dB at lo and hi"""
    nyquist = data.nyquist
    if not 0.0 < lo < hi < nyquist:
        raise ParameterError(
            f"Band-pass edges must satisfy 0 < lo < hi < {nyquist} Hz, got [{lo}, {hi}]"
        )
    sos = sp_signal.butter(
        order,
        bandpass_design_edges(lo, hi, data.sample_rate, order),
        btype='bandpass',
        fs=data.sample_rate,
        output='sos',
    )
    return _apply_sos(data, sos)


def lowpass(data: Filterable, cutoff: float, order: int = FILTER_ORDER) -> Filterable:
    """Zero-phase Butterworth low-pass, -3 dB at cutoff"""
    nyquist = data.nyquist
    if not 0.0 < cutoff < nyquist:
        raise ParameterError(f"Low-pass cutoff must satisfy 0 < cutoff < {nyquist} Hz, got {cutoff}")
    sos = sp_signal.butter(
        order,
        lowpass_design_edge(cutoff, data.sample_rate, order),
        btype='lowpass',
        fs=data.sample_rate,
        output='sos',
    )
    return _apply_sos(data, sos)


def interior(samples: np.ndarray, keep: float = 0.9) -> np.ndarray:
    """Central `keep` fraction of a sequence, dropping the same share at each edge"""
    trim = int(round(samples.size * (1.0 - keep) / 2.0))
    if trim == 0:
        return samples
    return samples[trim:samples.size - trim]


def dominant_frequency(spectrum: Union[Spectrum, PowerSpectralDensity]) -> float:
    values = spectrum.magnitudes if isinstance(spectrum, Spectrum) else spectrum.psd
    return float(spectrum.bin_freqs[int(np.argmax(values))])
