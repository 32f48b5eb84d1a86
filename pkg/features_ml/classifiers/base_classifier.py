from abc import ABC, abstractmethod
from typing import Dict, Optional

import numpy as np

from signal_core.errors import ParameterError


class Classifier(ABC):
    """Base class for the from-scratch classifiers"""

    kind: str = ''

    def __init__(self, training_seed: int = 0, **hyperparameters):
        self.training_seed = training_seed
        self.hyperparameters = hyperparameters
        self.n_classes: Optional[int] = None

    @abstractmethod
    def fit(self, features: np.ndarray, labels: np.ndarray, n_classes: Optional[int] = None) -> 'Classifier':
        pass

    @abstractmethod
    def predict(self, features: np.ndarray) -> np.ndarray:
        """Class index per row; ties go to the lowest index"""
        pass

    @abstractmethod
    def get_parameters(self) -> Dict[str, object]:
        """Fitted state as plain JSON types"""
        pass

    @abstractmethod
    def set_parameters(self, parameters: Dict[str, object]) -> None:
        pass

    def _check_fit_inputs(self, features: np.ndarray, labels: np.ndarray, n_classes: Optional[int]):
        features = np.asarray(features, dtype=np.float64)
        labels = np.asarray(labels, dtype=np.int64)
        if features.ndim != 2 or features.shape[0] != labels.size or labels.size == 0:
            raise ParameterError(
                f"Expected a non-empty (rows, features) matrix matching {labels.size} labels, got {features.shape}"
            )
        if np.any(labels < 0):
            raise ParameterError("Class labels must be non-negative indices")
        self.n_classes = int(n_classes if n_classes is not None else labels.max() + 1)
        return features, labels

    def _check_fitted(self) -> None:
        if self.n_classes is None:
            raise ParameterError(f"{self.kind} model has not been trained")
