import asyncio
import logging
from typing import Dict, List, Optional, Sequence

from signal_core.dsp import WELCH_SEGMENT
from signal_core.errors import DegenerateInputError, ParameterError
from signal_core.signal import Signal

from .annoyance import annoyance
from .base_metric import Metric
from .catalog import METRICS_REGISTRY
from .loudness import loudness_zwicker_proxy
from .modulation import fluctuation_proxy, roughness_proxy
from .sharpness import sharpness_weighted
from .tonality import tonality_proxy
from .types import AnnoyanceThresholds, FeatureVector, MetricValue

logger = logging.getLogger(__name__)

MIN_ANALYSIS_S = 1.0


def analyze_all(signal: Signal, thresholds: Optional[AnnoyanceThresholds] = None) -> FeatureVector:
    """[N, S, R, F, T, PA] of one signal; a failing metric names itself in the error"""
    thresholds = thresholds or AnnoyanceThresholds()
    if signal.duration < MIN_ANALYSIS_S:
        raise DegenerateInputError(
            f"needs at least {MIN_ANALYSIS_S} s of audio, got {signal.duration:.3f} s",
            metric='analyze_all',
        )
    if len(signal) < WELCH_SEGMENT:
        raise DegenerateInputError(
            f"needs at least one {WELCH_SEGMENT}-sample spectral segment, got {len(signal)} samples",
            metric='analyze_all',
        )
    n = loudness_zwicker_proxy(signal)
    s = sharpness_weighted(signal)
    r = roughness_proxy(signal)
    f = fluctuation_proxy(signal)
    t, _ = tonality_proxy(signal)
    pa = annoyance(n.value, s.value, r.value, f.value, thresholds)
    return FeatureVector(
        n=n.value,
        s=s.value,
        r=r.value,
        f=f.value,
        t=t.value,
        pa=pa.value,
        variants={m.metric: m.variant for m in (n, s, r, f, t, pa)},
    )


async def analyze_batch(
    signals: Sequence[Signal],
    thresholds: Optional[AnnoyanceThresholds] = None,
    workers: int = 1,
) -> List[FeatureVector]:
    """analyze_all over many signals in worker threads; results keep input order"""
    semaphore = asyncio.Semaphore(max(1, workers))

    async def run(signal: Signal) -> FeatureVector:
        async with semaphore:
            return await asyncio.to_thread(analyze_all, signal, thresholds)

    results = await asyncio.gather(*(run(s) for s in signals), return_exceptions=True)
    for index, result in enumerate(results):
        if isinstance(result, Exception):
            logger.error(f"Analysis of item {index} failed: {result}")
            raise result
    return list(results)


class MetricSuite:
    """Selects metrics by name, the default set unless told otherwise"""

    def __init__(
        self,
        metric_names: Optional[List[str]] = None,
        exclude_metrics: Optional[List[str]] = None,
        proxies: bool = False,
    ):
        """
        Args:
            metric_names: metrics to include; if None or empty, the default record
            exclude_metrics: metrics to drop after inclusion
            proxies: also compute the non-default proxy variants
        """
        self.all_metrics = [metric_class() for metric_class in METRICS_REGISTRY.values()]
        self.metrics = self._filter_metrics(metric_names, exclude_metrics, proxies)

    def _check_names(self, names: Optional[List[str]]) -> set:
        selected = set(name.strip().lower() for name in names or [] if name.strip())
        unknown = selected - set(METRICS_REGISTRY)
        if unknown:
            raise ParameterError(
                f"Unknown metrics: {sorted(unknown)}; available: {', '.join(METRICS_REGISTRY)}"
            )
        return selected

    def _filter_metrics(
        self,
        include_names: Optional[List[str]],
        exclude_names: Optional[List[str]],
        proxies: bool,
    ) -> List[Metric]:
        include_set = self._check_names(include_names)
        exclude_set = self._check_names(exclude_names)

        if include_set:
            filtered = [m for m in self.all_metrics if m.name in include_set]
        else:
            filtered = [m for m in self.all_metrics if m.default or proxies]

        return [m for m in filtered if m.name not in exclude_set]

    @property
    def names(self) -> List[str]:
        return [metric.name for metric in self.metrics]

    def analyze(
        self, signal: Signal, thresholds: Optional[AnnoyanceThresholds] = None
    ) -> Dict[str, MetricValue]:
        thresholds = thresholds or AnnoyanceThresholds()
        computed: Dict[str, MetricValue] = {}
        for metric in self.metrics:
            computed[metric.name] = metric.compute(signal, thresholds, computed)
            logger.debug(f"{metric.name} = {computed[metric.name].value}")
        return computed

    def describe(self) -> List[Dict[str, object]]:
        return [
            {
                'name': metric.name,
                'unit': metric.unit,
                'variant': metric.variant,
                'default': metric.default,
                'selected': metric in self.metrics,
            }
            for metric in self.all_metrics
        ]
