"""Train-only standardization and PCA"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from signal_core.errors import DegenerateInputError, ParameterError

logger = logging.getLogger(__name__)

MIN_PCA_ROWS = 6
RANK_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Standardizer:
    """Per-feature z-score fitted on training rows; zero-variance features are only centered"""

    mean: np.ndarray
    std: np.ndarray
    zero_variance: np.ndarray

    @classmethod
    def fit(cls, train: np.ndarray, feature_names: List[str] = None) -> 'Standardizer':
        train = np.asarray(train, dtype=np.float64)
        if train.ndim != 2 or train.shape[0] < 2:
            raise ParameterError(f"Standardization needs a matrix with at least 2 rows, got {train.shape}")
        mean = train.mean(axis=0)
        std = train.std(axis=0)
        zero_variance = std <= 0.0
        for index in np.flatnonzero(zero_variance):
            name = feature_names[index] if feature_names else str(index)
            logger.warning(f"Feature {name} has zero variance on the train split; centering only")
        return cls(mean=mean, std=std, zero_variance=zero_variance)

    @property
    def scale(self) -> np.ndarray:
        return np.where(self.zero_variance, 1.0, self.std)

    def transform(self, matrix: np.ndarray) -> np.ndarray:
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.shape[-1] != self.mean.size:
            raise ParameterError(
                f"Expected {self.mean.size} features, got {matrix.shape[-1]}"
            )
        return (matrix - self.mean) / self.scale

    def to_dict(self) -> Dict[str, object]:
        return {
            'mean': self.mean.tolist(),
            'std': self.std.tolist(),
            'zero_variance': self.zero_variance.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> 'Standardizer':
        return cls(
            mean=np.asarray(data['mean'], dtype=np.float64),
            std=np.asarray(data['std'], dtype=np.float64),
            zero_variance=np.asarray(data['zero_variance'], dtype=bool),
        )


def standardize(dataset):
    """(train_z, test_z, standardizer) using the dataset's train statistics"""
    standardizer = dataset.standardizer
    return (
        standardizer.transform(dataset.train_features),
        standardizer.transform(dataset.test_features),
        standardizer,
    )


@dataclass(frozen=True)
class PcaProjection:
    mean: np.ndarray
    components: np.ndarray  # k x d, rows orthonormal
    eigenvalues: np.ndarray  # all d, descending
    explained_variance_ratio: np.ndarray  # first k
    informative: int = 0
    flagged: List[int] = field(default_factory=list)

    @property
    def n_components(self) -> int:
        return self.components.shape[0]

    def transform(self, matrix: np.ndarray) -> np.ndarray:
        return (np.asarray(matrix, dtype=np.float64) - self.mean) @ self.components.T

    def to_dict(self) -> Dict[str, object]:
        return {
            'mean': self.mean.tolist(),
            'components': self.components.tolist(),
            'eigenvalues': self.eigenvalues.tolist(),
            'explained_variance_ratio': self.explained_variance_ratio.tolist(),
            'informative': self.informative,
            'flagged': list(self.flagged),
        }


def _orient(vector: np.ndarray) -> np.ndarray:
    """Largest-magnitude entry positive (first one on ties)"""
    pivot = int(np.argmax(np.abs(vector)))
    return -vector if vector[pivot] < 0 else vector


def pca_fit(matrix: np.ndarray, k: int) -> PcaProjection:
    """Eigendecomposition of the covariance of `matrix`, components by descending eigenvalue"""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise ParameterError(f"PCA needs a 2-D matrix, got shape {matrix.shape}")
    n_rows, n_features = matrix.shape
    if not 1 <= k <= n_features:
        raise ParameterError(f"Number of components must be in [1, {n_features}], got {k}")
    if n_rows < MIN_PCA_ROWS:
        raise ParameterError(f"PCA needs at least {MIN_PCA_ROWS} rows, got {n_rows}")

    mean = matrix.mean(axis=0)
    centered = matrix - mean
    covariance = centered.T @ centered / (n_rows - 1)
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)
    order = np.argsort(eigenvalues, kind='stable')[::-1]
    eigenvalues = np.clip(eigenvalues[order], 0.0, None)
    eigenvectors = eigenvectors[:, order]

    total = float(np.sum(eigenvalues))
    if total <= 0.0:
        raise DegenerateInputError("all features are constant", metric='pca')

    informative = int(np.sum(eigenvalues > RANK_TOLERANCE * eigenvalues[0]))
    flagged = [i for i in range(k) if i >= informative]
    if flagged:
        logger.warning(
            f"Covariance is rank deficient (rank {informative}); components {flagged} carry no variance"
        )

    components = np.array([_orient(eigenvectors[:, i]) for i in range(k)])
    explained = eigenvalues[:k] / total
    logger.info(f"PCA with {k} components explains {float(np.sum(explained)):.3f} of the variance")
    return PcaProjection(
        mean=mean,
        components=components,
        eigenvalues=eigenvalues,
        explained_variance_ratio=explained,
        informative=informative,
        flagged=flagged,
    )
