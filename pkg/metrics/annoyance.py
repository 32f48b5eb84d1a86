import math
from typing import Optional

from signal_core.errors import ParameterError

from .types import AnnoyanceThresholds, MetricValue, params_hash


def annoyance(
    n: float, s: float, r: float, f: float, thresholds: Optional[AnnoyanceThresholds] = None
) -> MetricValue:
    """PA = N * (1 + sqrt(((S-S0)^2 + (R-R0)^2 + (F-F0)^2) / 3))"""
    thresholds = thresholds or AnnoyanceThresholds()
    if not n >= 0:
        raise ParameterError(f"Loudness must be >= 0 for annoyance, got {n}")
    deviation = ((s - thresholds.s0) ** 2 + (r - thresholds.r0) ** 2 + (f - thresholds.f0) ** 2) / 3.0
    return MetricValue(
        metric='annoyance',
        value=n * (1.0 + math.sqrt(deviation)),
        unit='pa-units',
        variant='zwicker-pa',
        params_hash=params_hash(thresholds.to_dict()),
    )
