import logging
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from reporting.tables import read_json, write_json
from signal_core.errors import ArtifactMismatchError

from .classifiers import Classifier, canonical_kind, get_classifier
from .dataset import CLASS_LABELS, Dataset
from .preprocessing import standardize

logger = logging.getLogger(__name__)


@dataclass
class TrainedModel:
    """A fitted classifier bound to the dataset it was trained on"""

    classifier: Classifier
    dataset_fingerprint: str

    @property
    def kind(self) -> str:
        return self.classifier.kind

    @property
    def training_seed(self) -> int:
        return self.classifier.training_seed

    @property
    def hyperparameters(self) -> Dict[str, object]:
        return dict(self.classifier.hyperparameters)

    def check_dataset(self, dataset: Dataset) -> None:
        fingerprint = dataset.fingerprint()
        if fingerprint != self.dataset_fingerprint:
            raise ArtifactMismatchError(
                f"Model was trained on dataset {self.dataset_fingerprint[:12]}, "
                f"got dataset {fingerprint[:12]}"
            )

    def predict(self, standardized: np.ndarray) -> np.ndarray:
        return self.classifier.predict(standardized)

    def to_dict(self) -> Dict[str, object]:
        return {
            'kind': self.kind,
            'hyperparameters': self.hyperparameters,
            'training_seed': self.training_seed,
            'dataset_fingerprint': self.dataset_fingerprint,
            'classes': [label.value for label in CLASS_LABELS],
            'parameters': self.classifier.get_parameters(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> 'TrainedModel':
        try:
            classifier_class = get_classifier(str(data['kind']))
            classifier = classifier_class(training_seed=int(data['training_seed']), **data['hyperparameters'])
            classifier.set_parameters(data['parameters'])
            return cls(classifier=classifier, dataset_fingerprint=str(data['dataset_fingerprint']))
        except (KeyError, TypeError, ValueError) as e:
            raise ArtifactMismatchError(f"Not a model file: {e}") from e


def train_model(
    kind: str,
    dataset: Dataset,
    training_seed: Optional[int] = None,
    **hyperparameters,
) -> TrainedModel:
    """Fit a classifier of the given kind on the standardized train split"""
    classifier_class = get_classifier(kind)
    seed = dataset.base_seed if training_seed is None else training_seed
    classifier = classifier_class(training_seed=seed, **hyperparameters)
    train_z, _, _ = standardize(dataset)
    logger.info(f"Training {canonical_kind(kind)} on {train_z.shape[0]} rows (seed {seed})")
    classifier.fit(train_z, dataset.train_labels, n_classes=len(CLASS_LABELS))
    return TrainedModel(classifier=classifier, dataset_fingerprint=dataset.fingerprint())


def train_logreg(dataset: Dataset, learning_rate: float = 0.1, iterations: int = 2000,
                 l2: float = 1e-3) -> TrainedModel:
    return train_model('logreg', dataset, learning_rate=learning_rate, iterations=iterations, l2=l2)


def train_random_forest(dataset: Dataset, n_trees: int = 100, training_seed: int = 123,
                        max_features: Optional[int] = 2, bootstrap: bool = True) -> TrainedModel:
    return train_model('random_forest', dataset, training_seed=training_seed, n_trees=n_trees,
                       max_features=max_features, bootstrap=bootstrap)


def train_svm(dataset: Dataset, epochs: int = 200, lam: float = 1e-3,
              training_seed: int = 123) -> TrainedModel:
    return train_model('svm', dataset, training_seed=training_seed, epochs=epochs, lam=lam)


def save_model(model: TrainedModel, path: str) -> str:
    write_json(path, model.to_dict())
    logger.info(f"Wrote {model.kind} model to {path}")
    return path


def load_model(path: str) -> TrainedModel:
    data = read_json(path)
    if not isinstance(data, dict):
        raise ArtifactMismatchError(f"{path} is not a model file")
    return TrainedModel.from_dict(data)
