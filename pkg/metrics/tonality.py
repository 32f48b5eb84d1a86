"""
Tonality proxy: prominence of PSD peaks over a Bark-smoothed baseline.

The baseline at each bin is the mean of the PSD (in dB) over all bins within
+/-1 Bark, truncated at the ends of the analysed range. DC and Nyquist bins are
excluded because Welch does not double them.
"""
import logging
from typing import List, Tuple

import numpy as np

from signal_core.bark import hz_to_bark
from signal_core.dsp import WELCH_OVERLAP, WELCH_SEGMENT, welch_psd
from signal_core.signal import Signal

from .types import MetricValue, TonalPeak, params_hash

logger = logging.getLogger(__name__)

DETECTION_THRESHOLD_DB = 6.0
REFERENCE_PROMINENCE_DB = 1.0
SMOOTHING_HALF_WIDTH_BARK = 1.0
PSD_FLOOR = 1e-30
# Bins this far below the PSD maximum are round-off, never tonal
PEAK_FLOOR_DB = 100.0


def bark_smoothed_baseline(
    freqs: np.ndarray, psd_db: np.ndarray, half_width_bark: float = SMOOTHING_HALF_WIDTH_BARK
) -> np.ndarray:
    """Centered moving average of psd_db over a window of 2*half_width_bark"""
    z = hz_to_bark(np.asarray(freqs, dtype=np.float64))
    lo = np.searchsorted(z, z - half_width_bark, side='left')
    hi = np.searchsorted(z, z + half_width_bark, side='right')
    cumulative = np.concatenate(([0.0], np.cumsum(psd_db)))
    return (cumulative[hi] - cumulative[lo]) / (hi - lo)


def find_tonal_peaks(
    freqs: np.ndarray,
    psd_db: np.ndarray,
    threshold_db: float = DETECTION_THRESHOLD_DB,
    half_width_bark: float = SMOOTHING_HALF_WIDTH_BARK,
    floor_db: float = PEAK_FLOOR_DB,
) -> List[TonalPeak]:
    """Local maxima whose level exceeds the smoothed baseline by at least threshold_db.

    Maxima more than floor_db below the strongest bin are ignored.
    """
    freqs = np.asarray(freqs, dtype=np.float64)
    psd_db = np.asarray(psd_db, dtype=np.float64)
    if psd_db.size < 3:
        return []
    baseline = bark_smoothed_baseline(freqs, psd_db, half_width_bark)
    centre = psd_db[1:-1]
    is_max = (centre > psd_db[:-2]) & (centre >= psd_db[2:])
    candidates = np.flatnonzero(is_max) + 1
    candidates = candidates[psd_db[candidates] >= np.max(psd_db) - floor_db]
    prominence = psd_db[candidates] - baseline[candidates]
    passing = candidates[prominence >= threshold_db]
    return [
        TonalPeak(
            freq=float(freqs[i]),
            level_db=float(psd_db[i]),
            baseline_db=float(baseline[i]),
            prominence_db=float(psd_db[i] - baseline[i]),
        )
        for i in passing
    ]


def tonality_from_peaks(peaks: List[TonalPeak]) -> float:
    if not peaks:
        return 0.0
    return max(peak.prominence_db for peak in peaks) / REFERENCE_PROMINENCE_DB


def tonality_proxy(
    signal: Signal, threshold_db: float = DETECTION_THRESHOLD_DB
) -> Tuple[MetricValue, List[TonalPeak]]:
    psd = welch_psd(signal)
    freqs = psd.bin_freqs[1:-1]
    psd_db = 10.0 * np.log10(np.maximum(psd.psd[1:-1], PSD_FLOOR))
    peaks = find_tonal_peaks(freqs, psd_db, threshold_db)
    for peak in peaks:
        logger.debug(f"Tonal peak at {peak.freq:.1f} Hz, prominence {peak.prominence_db:.2f} dB")
    value = MetricValue(
        metric='tonality',
        value=tonality_from_peaks(peaks),
        unit='tonality-units',
        variant='psd-prominence-proxy',
        params_hash=params_hash({
            'threshold_db': threshold_db,
            'reference_db': REFERENCE_PROMINENCE_DB,
            'half_width_bark': SMOOTHING_HALF_WIDTH_BARK,
            'peak_floor_db': PEAK_FLOOR_DB,
            'welch_segment': WELCH_SEGMENT,
            'welch_overlap': WELCH_OVERLAP,
        }),
    )
    return value, peaks
