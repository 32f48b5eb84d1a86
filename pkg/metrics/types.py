import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, Optional

import numpy as np

from signal_core.errors import ParameterError

UNITS = ('sone-proxy', 'acum-proxy', 'asper-proxy', 'vacil-proxy', 'tonality-units', 'pa-units', 'LUFS', 'rms')


def params_hash(params: Dict[str, object]) -> str:
    """Short content hash of the parameters a metric value was computed with"""
    payload = json.dumps(params, sort_keys=True, separators=(',', ':'), default=str)
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()[:16]


@dataclass(frozen=True)
class MetricValue:
    """One metric result; value is None when the quantity is undefined (gated-out LUFS)"""

    metric: str
    value: Optional[float]
    unit: str
    variant: str
    params_hash: str = ''

    def __post_init__(self):
        if self.unit not in UNITS:
            raise ParameterError(f"Unknown metric unit: {self.unit}")
        if self.value is not None:
            value = float(self.value)
            if not math.isfinite(value):
                raise ParameterError(f"{self.metric} produced a non-finite value: {value}")
            object.__setattr__(self, 'value', value)

    @property
    def is_defined(self) -> bool:
        return self.value is not None

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


@dataclass(frozen=True)
class AnnoyanceThresholds:
    """Reference values S0, R0, F0 of the psychoacoustic annoyance model"""

    s0: float = 0.0
    r0: float = 0.0
    f0: float = 0.0

    def __post_init__(self):
        for name in ('s0', 'r0', 'f0'):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ParameterError(f"Annoyance threshold {name} must be finite and >= 0, got {value}")

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class TonalPeak:
    freq: float
    level_db: float
    baseline_db: float
    prominence_db: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


FEATURE_NAMES = ('N', 'S', 'R', 'F', 'T', 'PA')


@dataclass(frozen=True)
class FeatureVector:
    """The six-metric vector [N, S, R, F, T, PA] of one stimulus"""

    n: float
    s: float
    r: float
    f: float
    t: float
    pa: float
    label: Optional[str] = None
    variants: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        values = self.as_array()
        if not np.all(np.isfinite(values)):
            raise ParameterError(f"Feature vector must be finite, got {values.tolist()}")

    def as_array(self) -> np.ndarray:
        return np.array([self.n, self.s, self.r, self.f, self.t, self.pa], dtype=np.float64)

    def with_label(self, label: str) -> 'FeatureVector':
        return FeatureVector(self.n, self.s, self.r, self.f, self.t, self.pa, label, dict(self.variants))

    def to_dict(self) -> Dict[str, object]:
        record: Dict[str, object] = dict(zip(FEATURE_NAMES, self.as_array().tolist()))
        record['label'] = self.label
        record['variants'] = dict(self.variants)
        return record
