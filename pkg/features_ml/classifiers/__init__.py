from signal_core.errors import ParameterError

from .base_classifier import Classifier
from .logreg import LogisticRegression, loss_and_gradient
from .random_forest import DecisionTree, RandomForest, find_best_split
from .svm import LinearSVM

# Map classifier kinds to their implementation classes
CLASSIFIERS = {
    'logreg': LogisticRegression,
    'random_forest': RandomForest,
    'svm': LinearSVM,
}

# Short names accepted on the command line
ALIASES = {
    'lr': 'logreg',
    'rf': 'random_forest',
    'forest': 'random_forest',
}


def canonical_kind(name: str) -> str:
    key = name.strip().lower().replace('-', '_')
    return ALIASES.get(key, key)


def get_classifier(name: str):
    """Get classifier class by kind or alias"""
    classifier_class = CLASSIFIERS.get(canonical_kind(name))
    if not classifier_class:
        raise ParameterError(f"Unsupported classifier: {name}")
    return classifier_class


__all__ = [
    'Classifier',
    'LogisticRegression',
    'RandomForest',
    'DecisionTree',
    'LinearSVM',
    'loss_and_gradient',
    'find_best_split',
    'CLASSIFIERS',
    'ALIASES',
    'canonical_kind',
    'get_classifier',
]
