"""
Loudness measures: RMS, a Bark-band power-law loudness proxy, and BS.1770-4
integrated program loudness (pyloudnorm).
"""
import logging
import math
import warnings
from typing import Optional

import numpy as np
import pyloudnorm as pyln

from signal_core.bark import N_BARK_BANDS, bark_band_energies
from signal_core.dsp import WELCH_OVERLAP, WELCH_SEGMENT
from signal_core.errors import DegenerateInputError
from signal_core.signal import Signal, dbfs_to_rms

from .types import MetricValue, params_hash

logger = logging.getLogger(__name__)

LOUDNESS_EXPONENT = 0.23
REFERENCE_LEVEL_DBFS = -34.0
# Energy of a 1-Bark noise band at the reference level
E_REF = dbfs_to_rms(REFERENCE_LEVEL_DBFS) ** 2
# Bands this far below the strongest band are leakage
LEAKAGE_FLOOR_DB = 60.0

LUFS_BLOCK_S = 0.400

ZWICKER_PARAMS = {
    'exponent': LOUDNESS_EXPONENT,
    'e_ref': E_REF,
    'reference_level_dbfs': REFERENCE_LEVEL_DBFS,
    'leakage_floor_db': LEAKAGE_FLOOR_DB,
    'welch_segment': WELCH_SEGMENT,
    'welch_overlap': WELCH_OVERLAP,
}
LUFS_PARAMS = {'block_s': LUFS_BLOCK_S, 'overlap': 0.75, 'absolute_gate': -70.0, 'relative_gate': -10.0}


def loudness_rms(signal: Signal) -> MetricValue:
    return MetricValue(
        metric='loudness_rms',
        value=signal.rms(),
        unit='rms',
        variant='rms',
        params_hash=params_hash({}),
    )


def specific_loudness_from_energies(energies: np.ndarray) -> np.ndarray:
    """N'_z = (E_z / E_ref)^0.23, zero for bands more than 60 dB below the strongest band"""
    ratio = np.maximum(np.asarray(energies, dtype=np.float64) / E_REF, 0.0)
    strongest = float(np.max(ratio)) if ratio.size else 0.0
    kept = (ratio > 0.0) & (ratio >= strongest * 10.0 ** (-LEAKAGE_FLOOR_DB / 10.0))
    return np.where(kept, np.power(ratio, LOUDNESS_EXPONENT), 0.0)


def specific_loudness(signal: Signal) -> np.ndarray:
    """The 24 per-band loudness proxies"""
    energies = bark_band_energies(signal)
    return specific_loudness_from_energies(energies)


def loudness_zwicker_proxy(signal: Signal) -> MetricValue:
    specific = specific_loudness(signal)
    logger.debug(f"Specific loudness over {N_BARK_BANDS} bands: {np.round(specific, 4).tolist()}")
    return MetricValue(
        metric='loudness_zwicker',
        value=float(np.sum(specific)),
        unit='sone-proxy',
        variant='zwicker-band-proxy',
        params_hash=params_hash(ZWICKER_PARAMS),
    )


def _integrated_loudness(signal: Signal) -> Optional[float]:
    if signal.duration < LUFS_BLOCK_S:
        raise DegenerateInputError(
            f"needs at least {LUFS_BLOCK_S} s of audio, got {signal.duration:.3f} s", metric='lufs'
        )
    meter = pyln.Meter(signal.sample_rate, block_size=LUFS_BLOCK_S)
    # Fully gated-out input takes log10(0)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', RuntimeWarning)
        loudness = meter.integrated_loudness(np.asarray(signal.samples, dtype=np.float64))
    if loudness is None or not math.isfinite(loudness):
        return None
    return float(loudness)


def lufs_integrated(signal: Signal) -> MetricValue:
    """BS.1770-4 integrated loudness; value None means undefined (everything gated out)"""
    loudness = _integrated_loudness(signal)
    if loudness is None:
        logger.debug("Integrated loudness undefined: all blocks below the absolute gate")
    return MetricValue(
        metric='lufs',
        value=loudness,
        unit='LUFS',
        variant='bs1770-4',
        params_hash=params_hash(LUFS_PARAMS),
    )


def normalize_loudness(signal: Signal, target_lufs: float) -> Signal:
    """Gain-adjust a signal so its integrated loudness reads target_lufs"""
    loudness = _integrated_loudness(signal)
    if loudness is None:
        raise DegenerateInputError("cannot normalize a signal with undefined loudness", metric='lufs')
    gain_db = target_lufs - loudness
    logger.info(f"Normalizing {loudness:.2f} LUFS to {target_lufs:.2f} LUFS ({gain_db:+.2f} dB)")
    return signal.scaled(10.0 ** (gain_db / 20.0))
