from .errors import (
    SoundQualityError,
    ParameterError,
    DegenerateInputError,
    WavFormatError,
    UnsupportedFormatError,
    TrainingError,
    ArtifactMismatchError,
)
from .signal import (
    Signal,
    Envelope,
    Spectrum,
    PowerSpectralDensity,
    dbfs_to_rms,
    dbfs_to_amplitude,
    CANONICAL_SAMPLE_RATE,
)
from .wav_io import read_wav, write_wav
from .dsp import (
    fft_magnitude,
    welch_psd,
    hilbert_envelope,
    bandpass,
    lowpass,
    next_power_of_two,
)
from .bark import hz_to_bark, bark_to_hz, bark_band_energies, N_BARK_BANDS

__all__ = [
    'SoundQualityError',
    'ParameterError',
    'DegenerateInputError',
    'WavFormatError',
    'UnsupportedFormatError',
    'TrainingError',
    'ArtifactMismatchError',
    'Signal',
    'Envelope',
    'Spectrum',
    'PowerSpectralDensity',
    'dbfs_to_rms',
    'dbfs_to_amplitude',
    'CANONICAL_SAMPLE_RATE',
    'read_wav',
    'write_wav',
    'fft_magnitude',
    'welch_psd',
    'hilbert_envelope',
    'bandpass',
    'lowpass',
    'next_power_of_two',
    'hz_to_bark',
    'bark_to_hz',
    'bark_band_energies',
    'N_BARK_BANDS',
]
