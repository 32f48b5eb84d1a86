"""
CART trees with Gini impurity and a bagged forest of them.

Split search is exhaustive over the midpoints between consecutive distinct
values. The lowest weighted Gini wins; ties go to the lowest feature index,
then the lowest threshold. Nodes split while impure and splittable.
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from signal_core.errors import ParameterError
from stimuli.rng import PinnedRng, derive_seed

from .base_classifier import Classifier

logger = logging.getLogger(__name__)

DEFAULT_N_TREES = 100
DEFAULT_MAX_FEATURES = 2
MIN_TRAIN_ROWS = 10
LEAF = -1


def gini(counts: np.ndarray) -> np.ndarray:
    """Gini impurity of class-count vectors along the last axis"""
    counts = np.asarray(counts, dtype=np.float64)
    totals = counts.sum(axis=-1, keepdims=True)
    shares = np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
    return 1.0 - np.sum(shares ** 2, axis=-1)


def best_split_on_feature(
    values: np.ndarray, labels: np.ndarray, n_classes: int
) -> Optional[Tuple[float, float]]:
    """(weighted Gini, threshold) of the best split on one feature, None if constant"""
    order = np.argsort(values, kind='stable')
    sorted_values = values[order]
    n = values.size
    distinct = sorted_values[:-1] < sorted_values[1:]
    if not np.any(distinct):
        return None
    left_counts = np.cumsum(np.eye(n_classes)[labels[order]], axis=0)[:-1]
    right_counts = left_counts[-1] + np.eye(n_classes)[labels[order[-1]]] - left_counts
    n_left = np.arange(1, n, dtype=np.float64)
    n_right = n - n_left
    weighted = (n_left * gini(left_counts) + n_right * gini(right_counts)) / n
    positions = np.flatnonzero(distinct)
    best = positions[int(np.argmin(weighted[positions]))]
    threshold = (sorted_values[best] + sorted_values[best + 1]) / 2.0
    return float(weighted[best]), float(threshold)


def find_best_split(
    features: np.ndarray, labels: np.ndarray, n_classes: int, candidates: List[int]
) -> Optional[Tuple[int, float, float]]:
    """(feature, threshold, weighted Gini) over candidate features, tie-broken by index"""
    best = None
    for feature in sorted(candidates):
        result = best_split_on_feature(features[:, feature], labels, n_classes)
        if result is None:
            continue
        impurity, threshold = result
        if best is None or impurity < best[2]:
            best = (feature, threshold, impurity)
    return best


class DecisionTree:
    """CART tree stored as flat node arrays"""

    def __init__(self, max_features: Optional[int] = None):
        self.max_features = max_features
        self.feature: List[int] = []
        self.threshold: List[float] = []
        self.left: List[int] = []
        self.right: List[int] = []
        self.value: List[int] = []

    def _new_node(self) -> int:
        for column in (self.feature, self.left, self.right, self.value):
            column.append(LEAF)
        self.threshold.append(0.0)
        return len(self.feature) - 1

    def _candidates(self, n_features: int, rng: Optional[PinnedRng]) -> List[int]:
        if self.max_features is None or self.max_features >= n_features or rng is None:
            return list(range(n_features))
        return sorted(rng.choice(list(range(n_features)), self.max_features))

    def _split(self, features, labels, n_classes, rng) -> Optional[Tuple[int, float, float]]:
        n_features = features.shape[1]
        candidates = self._candidates(n_features, rng)
        best = find_best_split(features, labels, n_classes, candidates)
        if best is None and len(candidates) < n_features:
            remaining = [i for i in range(n_features) if i not in candidates]
            best = find_best_split(features, labels, n_classes, remaining)
        return best

    def _grow(self, features, labels, n_classes, rng) -> int:
        node = self._new_node()
        counts = np.bincount(labels, minlength=n_classes)
        self.value[node] = int(np.argmax(counts))
        if labels.size < 2 or np.count_nonzero(counts) == 1:
            return node
        best = self._split(features, labels, n_classes, rng)
        if best is None:
            return node
        feature, threshold, _ = best
        goes_left = features[:, feature] <= threshold
        self.feature[node] = feature
        self.threshold[node] = threshold
        self.left[node] = self._grow(features[goes_left], labels[goes_left], n_classes, rng)
        self.right[node] = self._grow(features[~goes_left], labels[~goes_left], n_classes, rng)
        return node

    def fit(self, features: np.ndarray, labels: np.ndarray, n_classes: int,
            rng: Optional[PinnedRng] = None) -> 'DecisionTree':
        for column in (self.feature, self.threshold, self.left, self.right, self.value):
            column.clear()
        self._grow(np.asarray(features, dtype=np.float64), np.asarray(labels, dtype=np.int64), n_classes, rng)
        return self

    @property
    def root_split(self) -> Optional[Tuple[int, float]]:
        if not self.feature or self.feature[0] == LEAF:
            return None
        return self.feature[0], self.threshold[0]

    def predict(self, features: np.ndarray) -> np.ndarray:
        features = np.asarray(features, dtype=np.float64)
        out = np.empty(features.shape[0], dtype=np.int64)
        for row_index, row in enumerate(features):
            node = 0
            while self.feature[node] != LEAF:
                node = self.left[node] if row[self.feature[node]] <= self.threshold[node] else self.right[node]
            out[row_index] = self.value[node]
        return out

    def to_dict(self) -> Dict[str, list]:
        return {
            'feature': list(self.feature),
            'threshold': list(self.threshold),
            'left': list(self.left),
            'right': list(self.right),
            'value': list(self.value),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, list], max_features: Optional[int] = None) -> 'DecisionTree':
        tree = cls(max_features)
        tree.feature = [int(v) for v in data['feature']]
        tree.threshold = [float(v) for v in data['threshold']]
        tree.left = [int(v) for v in data['left']]
        tree.right = [int(v) for v in data['right']]
        tree.value = [int(v) for v in data['value']]
        return tree


class RandomForest(Classifier):
    kind = 'random_forest'

    def __init__(
        self,
        n_trees: int = DEFAULT_N_TREES,
        max_features: Optional[int] = DEFAULT_MAX_FEATURES,
        bootstrap: bool = True,
        training_seed: int = 123,
    ):
        if n_trees < 1:
            raise ParameterError(f"n_trees must be >= 1, got {n_trees}")
        super().__init__(training_seed, n_trees=n_trees, max_features=max_features, bootstrap=bootstrap)
        self.trees: List[DecisionTree] = []

    def fit(self, features: np.ndarray, labels: np.ndarray, n_classes: Optional[int] = None) -> 'RandomForest':
        features, labels = self._check_fit_inputs(features, labels, n_classes)
        if labels.size < MIN_TRAIN_ROWS:
            raise ParameterError(f"Random forest needs at least {MIN_TRAIN_ROWS} train rows, got {labels.size}")
        n_rows = labels.size
        self.trees = []
        for tree_index in range(self.hyperparameters['n_trees']):
            rng = PinnedRng(derive_seed(self.training_seed, tree_index))
            if self.hyperparameters['bootstrap']:
                rows = rng.integers(n_rows, n_rows)
            else:
                rows = np.arange(n_rows)
            tree = DecisionTree(self.hyperparameters['max_features'])
            tree.fit(features[rows], labels[rows], self.n_classes, rng)
            self.trees.append(tree)
            logger.debug(f"Tree {tree_index}: {len(tree.feature)} nodes")
        logger.info(f"Random forest trained: {len(self.trees)} trees on {n_rows} rows")
        return self

    def votes(self, features: np.ndarray) -> np.ndarray:
        self._check_fitted()
        predictions = np.array([tree.predict(features) for tree in self.trees])
        return np.array([
            np.bincount(predictions[:, i], minlength=self.n_classes) for i in range(predictions.shape[1])
        ]).reshape(-1, self.n_classes)

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.argmax(self.votes(features), axis=1)

    def get_parameters(self) -> Dict[str, object]:
        self._check_fitted()
        return {'n_classes': self.n_classes, 'trees': [tree.to_dict() for tree in self.trees]}

    def set_parameters(self, parameters: Dict[str, object]) -> None:
        self.n_classes = int(parameters['n_classes'])
        self.trees = [
            DecisionTree.from_dict(tree, self.hyperparameters['max_features']) for tree in parameters['trees']
        ]
