from typing import Optional


class SoundQualityError(Exception):
    """Base class for every error raised by the toolkit"""


class ParameterError(SoundQualityError, ValueError):
    """A parameter is outside its declared range"""


class DegenerateInputError(SoundQualityError, ValueError):
    """The input carries no usable content (silence, empty, no spectral mass)"""

    def __init__(self, message: str, metric: Optional[str] = None):
        self.metric = metric
        if metric:
            message = f"{metric}: {message}"
        super().__init__(message)


class WavFormatError(SoundQualityError, ValueError):
    """Malformed RIFF/WAVE data"""


class UnsupportedFormatError(WavFormatError):
    """Well-formed WAV using a codec or sample width we do not read"""


class TrainingError(SoundQualityError, RuntimeError):
    """A classifier failed to train"""


class ArtifactMismatchError(SoundQualityError, ValueError):
    """Two artifacts (model, dataset, sidecar) do not belong together"""
