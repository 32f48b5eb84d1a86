from dataclasses import asdict, dataclass, field, fields
from enum import Enum
from typing import Dict, Tuple, Type, Union

from signal_core.errors import ParameterError
from signal_core.signal import CANONICAL_SAMPLE_RATE

DEFAULT_DURATION_S = 2.0


class StimulusClass(str, Enum):
    ENGINE_BOOM = 'EngineBoom'
    WIND_WHISTLE = 'WindWhistle'
    ROAD_NOISE = 'RoadNoise'

    @property
    def cli_name(self) -> str:
        return {
            StimulusClass.ENGINE_BOOM: 'engine-boom',
            StimulusClass.WIND_WHISTLE: 'wind-whistle',
            StimulusClass.ROAD_NOISE: 'road-noise',
        }[self]

    @property
    def index(self) -> int:
        return list(StimulusClass).index(self)

    @classmethod
    def parse(cls, name: Union[str, 'StimulusClass']) -> 'StimulusClass':
        if isinstance(name, StimulusClass):
            return name
        key = name.strip().lower().replace('_', '-')
        for label in cls:
            if key in (label.cli_name, label.value.lower()):
                return label
        raise ParameterError(f"Unknown stimulus class: {name}")


def _check_range(name: str, value: float, bounds: Tuple[float, float]) -> None:
    lo, hi = bounds
    if not lo <= value <= hi:
        raise ParameterError(f"{name}={value} outside [{lo}, {hi}]")


class _Params:
    """Shared validation for the class parameter records"""

    # name -> (lo, hi); only these fields are jittered
    RANGES: Dict[str, Tuple[float, float]] = {}

    def validate(self, sample_rate: int) -> None:
        for name, bounds in self.RANGES.items():
            _check_range(name, getattr(self, name), bounds)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)

    def with_overrides(self, **overrides):
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ParameterError(f"Unknown parameters for {type(self).__name__}: {sorted(unknown)}")
        values = self.to_dict()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return type(self)(**values)


@dataclass(frozen=True)
class EngineBoomParams(_Params):
    f0: float = 120.0
    n_harmonics: int = 5
    harmonic_rolloff_db: float = 4.0
    mod_freq: float = 50.0
    mod_depth: float = 0.75

    RANGES = {'f0': (100.0, 200.0), 'mod_freq': (30.0, 70.0), 'mod_depth': (0.5, 1.0)}

    def validate(self, sample_rate: int) -> None:
        super().validate(sample_rate)
        if self.n_harmonics < 1:
            raise ParameterError(f"n_harmonics must be >= 1, got {self.n_harmonics}")
        if self.n_harmonics * self.f0 >= sample_rate / 2:
            raise ParameterError(
                f"Harmonic {self.n_harmonics} of {self.f0} Hz is above Nyquist ({sample_rate / 2} Hz)"
            )


@dataclass(frozen=True)
class WindWhistleParams(_Params):
    tone_freq: float = 3000.0
    tone_level_dbfs: float = -12.0
    noise_level_dbfs: float = -30.0

    RANGES = {
        'tone_freq': (2000.0, 5000.0),
        'tone_level_dbfs': (-20.0, -10.0),
        'noise_level_dbfs': (-35.0, -25.0),
    }

    def validate(self, sample_rate: int) -> None:
        if self.tone_freq >= sample_rate / 2:
            raise ParameterError(
                f"tone_freq={self.tone_freq} Hz is above Nyquist ({sample_rate / 2} Hz)"
            )
        super().validate(sample_rate)
        if self.tone_level_dbfs - self.noise_level_dbfs < 5.0:
            raise ParameterError("Tone level must exceed noise level by at least 5 dB")


@dataclass(frozen=True)
class RoadNoiseParams(_Params):
    cutoff: float = 450.0
    level_dbfs: float = -15.0

    RANGES = {'cutoff': (300.0, 600.0), 'level_dbfs': (-20.0, -10.0)}


StimulusParams = Union[EngineBoomParams, WindWhistleParams, RoadNoiseParams]

PARAMS_TYPES: Dict[StimulusClass, Type[_Params]] = {
    StimulusClass.ENGINE_BOOM: EngineBoomParams,
    StimulusClass.WIND_WHISTLE: WindWhistleParams,
    StimulusClass.ROAD_NOISE: RoadNoiseParams,
}


@dataclass(frozen=True)
class StimulusSpec:
    class_label: StimulusClass
    seed: int
    params: StimulusParams
    duration_s: float = DEFAULT_DURATION_S
    sample_rate: int = CANONICAL_SAMPLE_RATE

    def validate(self) -> None:
        if self.duration_s <= 0:
            raise ParameterError(f"duration_s must be positive, got {self.duration_s}")
        if not 0 <= self.seed < 2 ** 64:
            raise ParameterError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        expected = PARAMS_TYPES[self.class_label]
        if not isinstance(self.params, expected):
            raise ParameterError(
                f"{self.class_label.value} expects {expected.__name__}, got {type(self.params).__name__}"
            )
        self.params.validate(self.sample_rate)

    def to_dict(self) -> Dict[str, object]:
        return {
            'class_label': self.class_label.value,
            'seed': self.seed,
            'duration_s': self.duration_s,
            'sample_rate': self.sample_rate,
            'params': self.params.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> 'StimulusSpec':
        label = StimulusClass.parse(data['class_label'])
        return cls(
            class_label=label,
            seed=int(data['seed']),
            params=PARAMS_TYPES[label](**data['params']),
            duration_s=float(data.get('duration_s', DEFAULT_DURATION_S)),
            sample_rate=int(data.get('sample_rate', CANONICAL_SAMPLE_RATE)),
        )
