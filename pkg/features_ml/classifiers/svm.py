"""One-vs-rest linear SVM trained by full-batch hinge subgradient steps"""
import logging
from typing import Dict, Optional

import numpy as np

from signal_core.errors import ParameterError
from stimuli.rng import PinnedRng

from .base_classifier import Classifier

logger = logging.getLogger(__name__)

DEFAULT_EPOCHS = 200
DEFAULT_LAMBDA = 1e-3


def augment(features: np.ndarray) -> np.ndarray:
    """Append a constant 1 column so the bias is an ordinary weight"""
    features = np.asarray(features, dtype=np.float64)
    return np.hstack([features, np.ones((features.shape[0], 1))])


def train_binary(features: np.ndarray, signs: np.ndarray, epochs: int, lam: float,
                 rng: PinnedRng) -> np.ndarray:
    """
    Epoch t takes the step 1/(lam*t) along the averaged subgradient of
    (lam/2)*||w||^2 + mean hinge loss, then projects onto ||w|| <= 1/sqrt(lam).
    The seeded shuffle only fixes the summation order.
    """
    n, d = features.shape
    weights = np.zeros(d)
    radius = 1.0 / np.sqrt(lam)
    for epoch in range(1, epochs + 1):
        order = rng.permutation(n)
        margins = signs[order] * (features[order] @ weights)
        active = order[margins < 1.0]
        hinge = (signs[active, None] * features[active]).sum(axis=0) / n
        weights = weights - (lam * weights - hinge) / (lam * epoch)
        norm = np.linalg.norm(weights)
        if norm > radius:
            weights = weights * (radius / norm)
    return weights


class LinearSVM(Classifier):
    kind = 'svm'

    def __init__(self, epochs: int = DEFAULT_EPOCHS, lam: float = DEFAULT_LAMBDA, training_seed: int = 123):
        if epochs < 1 or lam <= 0:
            raise ParameterError(f"SVM needs epochs >= 1 and lambda > 0, got {epochs}, {lam}")
        super().__init__(training_seed, epochs=epochs, lam=lam)
        self.weights: Optional[np.ndarray] = None  # n_classes x (features + 1)

    def fit(self, features: np.ndarray, labels: np.ndarray, n_classes: Optional[int] = None) -> 'LinearSVM':
        features, labels = self._check_fit_inputs(features, labels, n_classes)
        augmented = augment(features)
        rng = PinnedRng(self.training_seed)
        self.weights = np.array([
            train_binary(
                augmented,
                np.where(labels == k, 1.0, -1.0),
                self.hyperparameters['epochs'],
                self.hyperparameters['lam'],
                rng,
            )
            for k in range(self.n_classes)
        ])
        logger.info(f"Linear SVM trained: {self.n_classes} one-vs-rest classifiers on {labels.size} rows")
        return self

    def decision_function(self, features: np.ndarray) -> np.ndarray:
        self._check_fitted()
        return augment(features) @ self.weights.T

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.argmax(self.decision_function(features), axis=1)

    def get_parameters(self) -> Dict[str, object]:
        self._check_fitted()
        return {'n_classes': self.n_classes, 'weights': self.weights.tolist()}

    def set_parameters(self, parameters: Dict[str, object]) -> None:
        self.n_classes = int(parameters['n_classes'])
        self.weights = np.asarray(parameters['weights'], dtype=np.float64)
