import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from signal_core.errors import ParameterError
from stimuli.rng import PinnedRng

from .dataset import CLASS_LABELS, Dataset
from .preprocessing import standardize
from .training import TrainedModel

logger = logging.getLogger(__name__)

RATING_RANK_NOISE = 5.0
RATING_STREAM = 2
PA_COLUMN = 5


def spearman(x: Sequence[float], y: Sequence[float]) -> Optional[float]:
    """Pearson correlation of average ranks; None when either side is constant"""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ParameterError(f"Spearman needs two equal-length sequences, got {x.shape} and {y.shape}")
    if x.size < 3:
        raise ParameterError(f"Spearman needs at least 3 pairs, got {x.size}")
    rx = rankdata(x) - (x.size + 1) / 2.0
    ry = rankdata(y) - (y.size + 1) / 2.0
    sxx = float(np.sum(rx * rx))
    syy = float(np.sum(ry * ry))
    if sxx == 0.0 or syy == 0.0:
        return None
    return float(np.sum(rx * ry)) / math.sqrt(sxx * syy)


def synthetic_ratings(pa: np.ndarray, seed: int, noise: float = RATING_RANK_NOISE) -> np.ndarray:
    """Rank order of pa corrupted by seeded Gaussian rank noise"""
    return rankdata(pa) + noise * PinnedRng(seed, stream=RATING_STREAM).normal(pa.size)


def confusion_matrix(true: np.ndarray, predicted: np.ndarray, n_classes: int) -> np.ndarray:
    matrix = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(matrix, (np.asarray(true), np.asarray(predicted)), 1)
    return matrix


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    confusion: np.ndarray  # rows true, columns predicted
    precision: List[float]
    recall: List[float]
    spearman_pa: Optional[float]
    kind: str = ''
    n_test: int = 0

    @classmethod
    def from_predictions(cls, true: np.ndarray, predicted: np.ndarray, n_classes: int,
                         spearman_pa: Optional[float] = None, kind: str = '') -> 'EvalReport':
        confusion = confusion_matrix(true, predicted, n_classes)
        total = int(confusion.sum())
        diagonal = np.diag(confusion)
        predicted_counts = confusion.sum(axis=0)
        true_counts = confusion.sum(axis=1)
        precision = [float(diagonal[k] / predicted_counts[k]) if predicted_counts[k] else 0.0
                     for k in range(n_classes)]
        recall = [float(diagonal[k] / true_counts[k]) if true_counts[k] else 0.0 for k in range(n_classes)]
        return cls(
            accuracy=float(np.trace(confusion)) / total if total else 0.0,
            confusion=confusion,
            precision=precision,
            recall=recall,
            spearman_pa=spearman_pa,
            kind=kind,
            n_test=total,
        )

    def to_dict(self) -> Dict[str, object]:
        classes = [label.value for label in CLASS_LABELS][:self.confusion.shape[0]]
        return {
            'kind': self.kind,
            'accuracy': self.accuracy,
            'confusion': self.confusion.tolist(),
            'classes': classes,
            'precision': dict(zip(classes, self.precision)),
            'recall': dict(zip(classes, self.recall)),
            'spearman_pa': self.spearman_pa,
            'n_test': self.n_test,
        }


def evaluate(model: TrainedModel, dataset: Dataset) -> EvalReport:
    """Score a model on the frozen test split of the dataset it was trained on"""
    model.check_dataset(dataset)
    _, test_z, _ = standardize(dataset)
    predicted = model.predict(test_z)
    pa = dataset.test_features[:, PA_COLUMN]
    correlation = spearman(pa, synthetic_ratings(pa, dataset.base_seed)) if pa.size >= 3 else None
    report = EvalReport.from_predictions(
        dataset.test_labels, predicted, len(CLASS_LABELS), correlation, kind=model.kind
    )
    logger.info(f"{model.kind} test accuracy {report.accuracy:.2f} on {report.n_test} rows")
    return report
