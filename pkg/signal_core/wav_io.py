import io
import logging
import sys
import warnings
from typing import BinaryIO, Union

import numpy as np
from scipy.io import wavfile

from .errors import DegenerateInputError, UnsupportedFormatError, WavFormatError
from .signal import DEFAULT_CALIBRATION_OFFSET_DB, Signal

logger = logging.getLogger(__name__)

PathOrFile = Union[str, BinaryIO]

# scipy returns 24-bit PCM left-justified in int32, so both widths scale by 2^31
_INTEGER_SCALE = {
    np.dtype(np.int16): 2.0 ** 15,
    np.dtype(np.int32): 2.0 ** 31,
}


def _classify_scipy_error(error: ValueError, source: str) -> WavFormatError:
    message = str(error)
    if 'Unknown wave file format' in message or 'Unsupported' in message:
        return UnsupportedFormatError(f"{source}: {message}")
    return WavFormatError(f"{source}: {message}")


def read_wav(path: PathOrFile, calibration_offset_db: float = DEFAULT_CALIBRATION_OFFSET_DB) -> Signal:
    """Read a PCM 16/24/32-bit or float32 WAV file, downmixing to mono.

    `path` may be a file path, '-' for stdin, or a binary file object.
    """
    source = path if isinstance(path, str) else getattr(path, 'name', '<stream>')
    if path == '-':
        path = io.BytesIO(sys.stdin.buffer.read())
        source = '<stdin>'

    try:
        with warnings.catch_warnings():
            # Unknown chunks (LIST, bext, ...) are skipped
            warnings.simplefilter('ignore', wavfile.WavFileWarning)
            sample_rate, data = wavfile.read(path)
    except ValueError as e:
        raise _classify_scipy_error(e, str(source)) from e
    except EOFError as e:
        raise WavFormatError(f"{source}: truncated file ({e})") from e

    if data.dtype in _INTEGER_SCALE:
        samples = data.astype(np.float64) / _INTEGER_SCALE[data.dtype]
    elif data.dtype == np.float32:
        samples = data.astype(np.float64)
    else:
        raise UnsupportedFormatError(f"{source}: unsupported sample type {data.dtype}")

    if samples.ndim == 2:
        logger.debug(f"Downmixing {samples.shape[1]} channels from {source}")
        samples = samples.mean(axis=1)

    logger.debug(f"Read {samples.size} samples at {sample_rate} Hz from {source}")
    return Signal(samples, int(sample_rate), calibration_offset_db)


def write_wav(signal: Signal, path: PathOrFile) -> None:
    """Write a mono 32-bit float WAV file"""
    if len(signal) == 0:
        raise DegenerateInputError("Refusing to write an empty signal")
    wavfile.write(path, signal.sample_rate, signal.samples.astype(np.float32))
    logger.debug(f"Wrote {len(signal)} samples at {signal.sample_rate} Hz")
