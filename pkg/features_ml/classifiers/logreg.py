"""Multinomial logistic regression trained by full-batch gradient descent"""
import logging
from typing import Dict, Optional, Tuple

import numpy as np

from signal_core.errors import TrainingError

from .base_classifier import Classifier

logger = logging.getLogger(__name__)

DEFAULT_LEARNING_RATE = 0.1
DEFAULT_ITERATIONS = 2000
DEFAULT_L2 = 1e-3
MAX_CONSECUTIVE_INCREASES = 10


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def one_hot(labels: np.ndarray, n_classes: int) -> np.ndarray:
    encoded = np.zeros((labels.size, n_classes))
    encoded[np.arange(labels.size), labels] = 1.0
    return encoded


def loss_and_gradient(
    weights: np.ndarray, bias: np.ndarray, features: np.ndarray, targets: np.ndarray, l2: float
) -> Tuple[float, np.ndarray, np.ndarray]:
    """Mean softmax cross-entropy plus (l2/2)*||W||^2 (bias unpenalized), with its gradients"""
    n = features.shape[0]
    logits = features @ weights + bias
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    log_probs = shifted - log_norm
    loss = -float(np.sum(targets * log_probs)) / n + 0.5 * l2 * float(np.sum(weights ** 2))
    residual = np.exp(log_probs) - targets
    grad_weights = features.T @ residual / n + l2 * weights
    grad_bias = residual.sum(axis=0) / n
    return loss, grad_weights, grad_bias


class LogisticRegression(Classifier):
    kind = 'logreg'

    def __init__(
        self,
        learning_rate: float = DEFAULT_LEARNING_RATE,
        iterations: int = DEFAULT_ITERATIONS,
        l2: float = DEFAULT_L2,
        training_seed: int = 0,
    ):
        super().__init__(training_seed, learning_rate=learning_rate, iterations=iterations, l2=l2)
        self.weights: Optional[np.ndarray] = None
        self.bias: Optional[np.ndarray] = None
        self.loss_history = []

    def fit(self, features: np.ndarray, labels: np.ndarray, n_classes: Optional[int] = None) -> 'LogisticRegression':
        features, labels = self._check_fit_inputs(features, labels, n_classes)
        lr = self.hyperparameters['learning_rate']
        l2 = self.hyperparameters['l2']
        targets = one_hot(labels, self.n_classes)
        weights = np.zeros((features.shape[1], self.n_classes))
        bias = np.zeros(self.n_classes)

        self.loss_history = []
        increases = 0
        previous = None
        for step in range(self.hyperparameters['iterations']):
            loss, grad_weights, grad_bias = loss_and_gradient(weights, bias, features, targets, l2)
            if not np.isfinite(loss):
                raise TrainingError(f"Loss became non-finite at iteration {step}")
            if previous is not None and loss > previous:
                increases += 1
                logger.warning(f"Loss increased at iteration {step}: {previous:.6g} -> {loss:.6g}")
                if increases > MAX_CONSECUTIVE_INCREASES:
                    raise TrainingError(
                        f"Logistic regression diverged: loss rose for {increases} consecutive iterations"
                    )
            else:
                increases = 0
            self.loss_history.append(loss)
            previous = loss
            weights = weights - lr * grad_weights
            bias = bias - lr * grad_bias

        self.weights, self.bias = weights, bias
        if self.loss_history:
            logger.info(f"Logistic regression trained: final loss {self.loss_history[-1]:.6f}")
        return self

    def decision_function(self, features: np.ndarray) -> np.ndarray:
        self._check_fitted()
        return np.asarray(features, dtype=np.float64) @ self.weights + self.bias

    def predict_proba(self, features: np.ndarray) -> np.ndarray:
        return softmax(self.decision_function(features))

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.argmax(self.decision_function(features), axis=1)

    def get_parameters(self) -> Dict[str, object]:
        self._check_fitted()
        return {
            'n_classes': self.n_classes,
            'weights': self.weights.tolist(),
            'bias': self.bias.tolist(),
        }

    def set_parameters(self, parameters: Dict[str, object]) -> None:
        self.n_classes = int(parameters['n_classes'])
        self.weights = np.asarray(parameters['weights'], dtype=np.float64)
        self.bias = np.asarray(parameters['bias'], dtype=np.float64)
