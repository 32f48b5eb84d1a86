"""
Layered configuration: built-in defaults, then an INI config file, then CLI flags.

Config file sections mirror the dataclasses below; keys are the field names:

    [dataset]
    n_per_class = 100
    base_seed = 123

    [forest]
    n_trees = 100
    max_features = none
"""
import configparser
import logging
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, Optional

from metrics.types import AnnoyanceThresholds
from signal_core.errors import ParameterError
from signal_core.signal import CANONICAL_SAMPLE_RATE, DEFAULT_CALIBRATION_OFFSET_DB

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AnalysisSettings:
    calibration_offset_db: float = DEFAULT_CALIBRATION_OFFSET_DB
    workers: int = 1


@dataclass(frozen=True)
class DatasetSettings:
    n_per_class: int = 100
    base_seed: int = 123
    train_fraction: float = 0.7
    duration_s: float = 2.0
    sample_rate: int = CANONICAL_SAMPLE_RATE


@dataclass(frozen=True)
class LogregSettings:
    learning_rate: float = 0.1
    iterations: int = 2000
    l2: float = 1e-3


@dataclass(frozen=True)
class ForestSettings:
    n_trees: int = 100
    max_features: Optional[int] = 2
    bootstrap: bool = True
    training_seed: int = 123


@dataclass(frozen=True)
class SvmSettings:
    epochs: int = 200
    lam: float = 1e-3
    training_seed: int = 123


@dataclass(frozen=True)
class SynthSettings:
    duration_s: float = 2.0
    sample_rate: int = CANONICAL_SAMPLE_RATE


SECTIONS = {
    'analysis': AnalysisSettings,
    'thresholds': AnnoyanceThresholds,
    'dataset': DatasetSettings,
    'logreg': LogregSettings,
    'forest': ForestSettings,
    'svm': SvmSettings,
    'synth': SynthSettings,
}

_TRUE = ('true', '1', 'yes', 'on')
_FALSE = ('false', '0', 'no', 'off')


@dataclass(frozen=True)
class Settings:
    analysis: AnalysisSettings = field(default_factory=AnalysisSettings)
    thresholds: AnnoyanceThresholds = field(default_factory=AnnoyanceThresholds)
    dataset: DatasetSettings = field(default_factory=DatasetSettings)
    logreg: LogregSettings = field(default_factory=LogregSettings)
    forest: ForestSettings = field(default_factory=ForestSettings)
    svm: SvmSettings = field(default_factory=SvmSettings)
    synth: SynthSettings = field(default_factory=SynthSettings)

    def override(self, section: str, **values: Any) -> 'Settings':
        """New settings with non-None values replacing those of one section"""
        current = getattr(self, section)
        known = {f.name for f in fields(current)}
        unknown = set(values) - known
        if unknown:
            raise ParameterError(f"Unknown settings for [{section}]: {sorted(unknown)}")
        changes = {k: v for k, v in values.items() if v is not None}
        if not changes:
            return self
        return replace(self, **{section: replace(current, **changes)})

    def to_dict(self) -> Dict[str, Dict[str, Any]]:
        return {name: asdict(getattr(self, name)) for name in SECTIONS}


def _convert(section: str, key: str, raw: str, default: Any) -> Any:
    text = raw.strip()
    try:
        if isinstance(default, bool):
            lowered = text.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(f"not a boolean: {text}")
        if text.lower() == 'none' and (default is None or key == 'max_features'):
            return None
        if isinstance(default, int) or key == 'max_features':
            return int(text)
        if isinstance(default, float):
            return float(text)
    except ValueError as e:
        raise ParameterError(f"Invalid value for [{section}] {key}: {e}") from e
    return text


def load_settings(path: Optional[str] = None, base: Optional[Settings] = None) -> Settings:
    """Defaults, updated from the INI file at path when given"""
    settings = base or Settings()
    if not path:
        return settings

    parser = configparser.ConfigParser()
    with open(path, 'r', encoding='utf-8') as f:
        try:
            parser.read_file(f)
        except configparser.Error as e:
            raise ParameterError(f"Malformed config file {path}: {e}") from e

    for section in parser.sections():
        if section not in SECTIONS:
            raise ParameterError(f"Unknown config section [{section}] in {path}")
        current = getattr(settings, section)
        defaults = asdict(current)
        values = {}
        for key, raw in parser.items(section):
            if key not in defaults:
                raise ParameterError(f"Unknown key '{key}' in [{section}] of {path}")
            values[key] = _convert(section, key, raw, defaults[key])
        settings = replace(settings, **{section: replace(current, **values)})
        logger.debug(f"Config [{section}]: {values}")

    logger.info(f"Loaded configuration from {path}")
    return settings
