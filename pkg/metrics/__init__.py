from signal_core.errors import ParameterError

from .types import (
    MetricValue,
    AnnoyanceThresholds,
    TonalPeak,
    FeatureVector,
    FEATURE_NAMES,
    params_hash,
)
from .loudness import (
    loudness_rms,
    loudness_zwicker_proxy,
    lufs_integrated,
    normalize_loudness,
    specific_loudness,
)
from .sharpness import sharpness_centroid, sharpness_weighted
from .modulation import roughness_proxy, fluctuation_proxy
from .tonality import tonality_proxy, find_tonal_peaks
from .annoyance import annoyance
from .base_metric import Metric
from .catalog import METRICS_REGISTRY
from .analyzer import analyze_all, analyze_batch, MetricSuite


def get_metric(metric_name: str) -> Metric:
    """Get a metric instance by name"""
    metric_class = METRICS_REGISTRY.get(metric_name.lower())
    if not metric_class:
        raise ParameterError(f"Unsupported metric: {metric_name}")
    return metric_class()


__all__ = [
    'MetricValue',
    'AnnoyanceThresholds',
    'TonalPeak',
    'FeatureVector',
    'FEATURE_NAMES',
    'params_hash',
    'loudness_rms',
    'loudness_zwicker_proxy',
    'lufs_integrated',
    'normalize_loudness',
    'specific_loudness',
    'sharpness_centroid',
    'sharpness_weighted',
    'roughness_proxy',
    'fluctuation_proxy',
    'tonality_proxy',
    'find_tonal_peaks',
    'annoyance',
    'Metric',
    'METRICS_REGISTRY',
    'get_metric',
    'analyze_all',
    'analyze_batch',
    'MetricSuite',
]
