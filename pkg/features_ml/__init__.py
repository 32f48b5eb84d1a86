from metrics.types import FeatureVector

from .dataset import (
    Dataset,
    CLASS_LABELS,
    build_dataset,
    build_dataset_async,
    export_dataset,
    load_dataset,
    stratified_split,
)
from .preprocessing import Standardizer, PcaProjection, standardize, pca_fit
from .classifiers import CLASSIFIERS, get_classifier
from .training import (
    TrainedModel,
    train_model,
    train_logreg,
    train_random_forest,
    train_svm,
    save_model,
    load_model,
)
from .evaluation import EvalReport, evaluate, spearman

__all__ = [
    'FeatureVector',
    'Dataset',
    'CLASS_LABELS',
    'build_dataset',
    'build_dataset_async',
    'export_dataset',
    'load_dataset',
    'stratified_split',
    'Standardizer',
    'PcaProjection',
    'standardize',
    'pca_fit',
    'CLASSIFIERS',
    'get_classifier',
    'TrainedModel',
    'train_model',
    'train_logreg',
    'train_random_forest',
    'train_svm',
    'save_model',
    'load_model',
    'EvalReport',
    'evaluate',
    'spearman',
]
