from abc import ABC, abstractmethod
from typing import Dict, Optional

from signal_core.signal import Signal

from .types import AnnoyanceThresholds, MetricValue


class Metric(ABC):
    """Base class for metrics selectable by name"""

    def __init__(self, name: str, unit: str, variant: str, default: bool = True):
        self.name = name
        self.unit = unit
        self.variant = variant
        self.default = default  # part of the standard analyze record

    @abstractmethod
    def compute(
        self,
        signal: Signal,
        thresholds: AnnoyanceThresholds,
        computed: Optional[Dict[str, MetricValue]] = None,
    ) -> MetricValue:
        """
        Compute the metric for one signal

        Args:
            computed: values already produced in the same pass, keyed by metric name
        """
        pass
