from typing import Dict, Optional

from signal_core.signal import Signal

from .annoyance import annoyance
from .base_metric import Metric
from .loudness import loudness_rms, loudness_zwicker_proxy, lufs_integrated
from .modulation import fluctuation_proxy, roughness_proxy
from .sharpness import sharpness_centroid, sharpness_weighted
from .tonality import tonality_proxy
from .types import AnnoyanceThresholds, MetricValue


class _FunctionMetric(Metric):
    """Metric backed by a single function of the signal"""

    function = None

    def compute(self, signal: Signal, thresholds: AnnoyanceThresholds,
                computed: Optional[Dict[str, MetricValue]] = None) -> MetricValue:
        return type(self).function(signal)


class ZwickerLoudnessMetric(_FunctionMetric):
    function = staticmethod(loudness_zwicker_proxy)

    def __init__(self):
        super().__init__('loudness_zwicker', 'sone-proxy', 'zwicker-band-proxy')


class RmsLoudnessMetric(_FunctionMetric):
    function = staticmethod(loudness_rms)

    def __init__(self):
        super().__init__('loudness_rms', 'rms', 'rms')


class LufsMetric(_FunctionMetric):
    function = staticmethod(lufs_integrated)

    def __init__(self):
        super().__init__('lufs', 'LUFS', 'bs1770-4')


class SharpnessMetric(_FunctionMetric):
    function = staticmethod(sharpness_weighted)

    def __init__(self):
        super().__init__('sharpness', 'acum-proxy', 'bismarck-weighted-proxy')


class CentroidSharpnessMetric(_FunctionMetric):
    function = staticmethod(sharpness_centroid)

    def __init__(self):
        super().__init__('sharpness_centroid', 'acum-proxy', 'spectral-centroid', default=False)


class RoughnessMetric(_FunctionMetric):
    function = staticmethod(roughness_proxy)

    def __init__(self):
        super().__init__('roughness', 'asper-proxy', 'envelope-bandpass-proxy')


class FluctuationMetric(_FunctionMetric):
    function = staticmethod(fluctuation_proxy)

    def __init__(self):
        super().__init__('fluctuation', 'vacil-proxy', 'envelope-lowpass-proxy')


class TonalityMetric(Metric):
    def __init__(self):
        super().__init__('tonality', 'tonality-units', 'psd-prominence-proxy')

    def compute(self, signal: Signal, thresholds: AnnoyanceThresholds,
                computed: Optional[Dict[str, MetricValue]] = None) -> MetricValue:
        value, _ = tonality_proxy(signal)
        return value


class AnnoyanceMetric(Metric):
    """PA from N, S, R, F; reuses values computed earlier in the same pass"""

    requires = (
        ('loudness_zwicker', loudness_zwicker_proxy),
        ('sharpness', sharpness_weighted),
        ('roughness', roughness_proxy),
        ('fluctuation', fluctuation_proxy),
    )

    def __init__(self):
        super().__init__('annoyance', 'pa-units', 'zwicker-pa')

    def compute(self, signal: Signal, thresholds: AnnoyanceThresholds,
                computed: Optional[Dict[str, MetricValue]] = None) -> MetricValue:
        computed = computed or {}
        values = []
        for name, function in self.requires:
            result = computed.get(name) or function(signal)
            values.append(result.value)
        n, s, r, f = values
        return annoyance(n, s, r, f, thresholds)


# Registry of all metrics, in analyze-record order; annoyance must stay last
METRICS_REGISTRY = {
    'loudness_zwicker': ZwickerLoudnessMetric,
    'loudness_rms': RmsLoudnessMetric,
    'lufs': LufsMetric,
    'sharpness': SharpnessMetric,
    'sharpness_centroid': CentroidSharpnessMetric,
    'roughness': RoughnessMetric,
    'fluctuation': FluctuationMetric,
    'tonality': TonalityMetric,
    'annoyance': AnnoyanceMetric,
}
