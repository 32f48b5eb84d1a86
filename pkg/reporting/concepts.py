"""Data behind the concept curves: Bark loudness distribution, g(z), modulation response, tonal prominence"""
from typing import Dict, List, Sequence, Tuple

import numpy as np

from metrics.loudness import specific_loudness
from metrics.modulation import fluctuation_proxy, roughness_proxy
from metrics.sharpness import BAND_CENTERS, high_frequency_weighting
from metrics.tonality import PSD_FLOOR, bark_smoothed_baseline, find_tonal_peaks
from signal_core.bark import N_BARK_BANDS
from signal_core.dsp import welch_psd
from signal_core.signal import Signal
from stimuli.test_tones import am_tone, tone_in_noise

MODULATION_FREQS_HZ = (1.0, 2.0, 4.0, 8.0, 15.0, 30.0, 50.0, 70.0, 100.0, 150.0, 200.0, 300.0, 400.0)

Table = Tuple[List[str], List[List[float]]]


def bark_loudness_distribution(signals: Dict[str, Signal]) -> Table:
    """Specific loudness per Bark band, one column per named signal"""
    names = list(signals)
    columns = [specific_loudness(signals[name]) for name in names]
    rows = [
        [band, float(BAND_CENTERS[band])] + [float(column[band]) for column in columns]
        for band in range(N_BARK_BANDS)
    ]
    return ['band', 'center_bark'] + names, rows


def weighting_curve(step: float = 0.1) -> Table:
    z = np.round(np.arange(0.0, N_BARK_BANDS + step / 2, step), 6)
    g = high_frequency_weighting(z)
    return ['z_bark', 'g'], [[float(a), float(b)] for a, b in zip(z, g)]


def modulation_response(
    mod_freqs: Sequence[float] = MODULATION_FREQS_HZ, carrier: float = 1000.0, duration_s: float = 2.0
) -> Table:
    """Roughness and fluctuation proxies of a fully modulated tone against modulation frequency"""
    rows = []
    for fm in mod_freqs:
        tone = am_tone(carrier=carrier, mod_freq=fm, depth=1.0, duration_s=duration_s)
        rows.append([float(fm), roughness_proxy(tone).value, fluctuation_proxy(tone).value])
    return ['mod_freq_hz', 'roughness', 'fluctuation'], rows


def tonal_prominence_example(
    tone_freq: float = 3000.0, snr_db: float = 20.0, duration_s: float = 4.0,
    band_hz: Tuple[float, float] = (1000.0, 6000.0),
) -> Tuple[Table, list]:
    """PSD and its Bark-smoothed baseline around a tone in noise, plus the detected peaks"""
    psd = welch_psd(tone_in_noise(tone_freq=tone_freq, snr_db=snr_db, duration_s=duration_s))
    freqs = psd.bin_freqs[1:-1]
    psd_db = 10.0 * np.log10(np.maximum(psd.psd[1:-1], PSD_FLOOR))
    baseline = bark_smoothed_baseline(freqs, psd_db)
    peaks = find_tonal_peaks(freqs, psd_db)
    inside = (freqs >= band_hz[0]) & (freqs <= band_hz[1])
    rows = [[float(f), float(level), float(base)]
            for f, level, base in zip(freqs[inside], psd_db[inside], baseline[inside])]
    return (['freq_hz', 'psd_db', 'baseline_db'], rows), peaks


def waveform_excerpt(signal: Signal, seconds: float = 0.05) -> Table:
    n = min(len(signal), int(round(seconds * signal.sample_rate)))
    t = np.arange(n) / signal.sample_rate
    return ['time_s', 'amplitude'], [[float(a), float(b)] for a, b in zip(t, signal.samples[:n])]
