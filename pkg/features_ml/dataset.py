"""
Labeled feature datasets built from jittered stimuli, with a frozen stratified split.

On disk a dataset is a CSV (n,s,r,f,t,pa,label) plus a JSON sidecar holding the
seed, thresholds, split indices and train-only standardization statistics.
"""
import asyncio
import hashlib
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from metrics.analyzer import analyze_all
from metrics.types import FEATURE_NAMES, AnnoyanceThresholds, FeatureVector
from reporting.tables import dumps_json, format_cell, read_csv, read_json, write_csv, write_json
from signal_core.errors import ArtifactMismatchError, ParameterError
from signal_core.signal import CANONICAL_SAMPLE_RATE
from stimuli.generator import jittered_spec, synth
from stimuli.rng import PinnedRng
from stimuli.spec import DEFAULT_DURATION_S, StimulusClass, StimulusSpec

from .preprocessing import Standardizer

logger = logging.getLogger(__name__)

DEFAULT_N_PER_CLASS = 100
DEFAULT_BASE_SEED = 123
DEFAULT_TRAIN_FRACTION = 0.7
MIN_N_PER_CLASS = 10
CLASS_LABELS: List[StimulusClass] = list(StimulusClass)
CSV_HEADER = [name.lower() for name in FEATURE_NAMES] + ['label']


def stratified_split(
    labels: np.ndarray, base_seed: int, train_fraction: float = DEFAULT_TRAIN_FRACTION
) -> Tuple[np.ndarray, np.ndarray]:
    """Per-class shuffled split; both index arrays sorted ascending"""
    if not 0.0 < train_fraction < 1.0:
        raise ParameterError(f"Train fraction must be in (0, 1), got {train_fraction}")
    rng = PinnedRng(base_seed)
    train: List[int] = []
    test: List[int] = []
    for class_index in range(len(CLASS_LABELS)):
        members = np.flatnonzero(labels == class_index)
        order = rng.permutation(members.size)
        n_train = int(round(members.size * train_fraction))
        train.extend(members[order[:n_train]].tolist())
        test.extend(members[order[n_train:]].tolist())
    return np.array(sorted(train), dtype=np.int64), np.array(sorted(test), dtype=np.int64)


@dataclass
class Dataset:
    features: np.ndarray  # rows x 6
    labels: np.ndarray  # class index per row
    train_idx: np.ndarray
    test_idx: np.ndarray
    base_seed: int
    n_per_class: int
    thresholds: AnnoyanceThresholds = field(default_factory=AnnoyanceThresholds)
    train_fraction: float = DEFAULT_TRAIN_FRACTION
    duration_s: float = DEFAULT_DURATION_S
    sample_rate: int = CANONICAL_SAMPLE_RATE
    variants: Dict[str, str] = field(default_factory=dict)
    standardizer: Optional[Standardizer] = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.train_idx = np.asarray(self.train_idx, dtype=np.int64)
        self.test_idx = np.asarray(self.test_idx, dtype=np.int64)
        self._check_split()
        if self.standardizer is None:
            self.standardizer = Standardizer.fit(self.train_features, list(FEATURE_NAMES))

    def _check_split(self) -> None:
        n = self.features.shape[0]
        joined = np.concatenate([self.train_idx, self.test_idx])
        if np.intersect1d(self.train_idx, self.test_idx).size:
            raise ArtifactMismatchError("Train and test splits overlap")
        if joined.size != n or not np.array_equal(np.sort(joined), np.arange(n)):
            raise ArtifactMismatchError(f"Split does not cover the {n} dataset rows exactly")

    def __len__(self) -> int:
        return self.features.shape[0]

    @property
    def train_features(self) -> np.ndarray:
        return self.features[self.train_idx]

    @property
    def test_features(self) -> np.ndarray:
        return self.features[self.test_idx]

    @property
    def train_labels(self) -> np.ndarray:
        return self.labels[self.train_idx]

    @property
    def test_labels(self) -> np.ndarray:
        return self.labels[self.test_idx]

    @property
    def rows(self) -> List[FeatureVector]:
        return [
            FeatureVector(*row.tolist(), label=CLASS_LABELS[label].value, variants=dict(self.variants))
            for row, label in zip(self.features, self.labels)
        ]

    def class_counts(self, indices: Optional[np.ndarray] = None) -> np.ndarray:
        labels = self.labels if indices is None else self.labels[indices]
        return np.bincount(labels, minlength=len(CLASS_LABELS))

    def csv_rows(self) -> List[List[object]]:
        return [row.tolist() + [CLASS_LABELS[label].value] for row, label in zip(self.features, self.labels)]

    def sidecar(self) -> Dict[str, object]:
        return {
            'base_seed': self.base_seed,
            'n_per_class': self.n_per_class,
            'train_fraction': self.train_fraction,
            'duration_s': self.duration_s,
            'sample_rate': self.sample_rate,
            'thresholds': self.thresholds.to_dict(),
            'split': {'train': self.train_idx.tolist(), 'test': self.test_idx.tolist()},
            'standardization': self.standardizer.to_dict(),
            'variants': dict(self.variants),
            'classes': [label.value for label in CLASS_LABELS],
        }

    def fingerprint(self) -> str:
        """Content hash over rows, labels, split and seed"""
        digest = hashlib.sha256()
        for row in self.csv_rows():
            digest.update((','.join(format_cell(cell) for cell in row) + '\n').encode('utf-8'))
        digest.update(dumps_json({
            'base_seed': self.base_seed,
            'split': {'train': self.train_idx.tolist(), 'test': self.test_idx.tolist()},
            'thresholds': self.thresholds.to_dict(),
        }).encode('utf-8'))
        return digest.hexdigest()


def sidecar_path(csv_path: str) -> str:
    return os.path.splitext(csv_path)[0] + '.json'


def export_dataset(dataset: Dataset, csv_path: str) -> Tuple[str, str]:
    """Write the CSV and its JSON sidecar; returns both paths"""
    write_csv(csv_path, CSV_HEADER, dataset.csv_rows())
    json_path = write_json(sidecar_path(csv_path), dataset.sidecar())
    logger.info(f"Wrote dataset of {len(dataset)} rows to {csv_path}")
    return csv_path, json_path


def load_dataset(csv_path: str) -> Dataset:
    """Read a dataset CSV and its sidecar, checking they belong together"""
    json_path = sidecar_path(csv_path)
    records = read_csv(csv_path)
    meta = read_json(json_path)
    if not records or list(records[0].keys()) != CSV_HEADER:
        raise ArtifactMismatchError(f"{csv_path} does not have the header {','.join(CSV_HEADER)}")
    try:
        features = np.array(
            [[float(record[name]) for name in CSV_HEADER[:-1]] for record in records]
        )
        labels = np.array([StimulusClass.parse(record['label']).index for record in records])
        dataset = Dataset(
            features=features,
            labels=labels,
            train_idx=meta['split']['train'],
            test_idx=meta['split']['test'],
            base_seed=int(meta['base_seed']),
            n_per_class=int(meta['n_per_class']),
            thresholds=AnnoyanceThresholds(**meta['thresholds']),
            train_fraction=float(meta['train_fraction']),
            duration_s=float(meta['duration_s']),
            sample_rate=int(meta['sample_rate']),
            variants=dict(meta.get('variants', {})),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ArtifactMismatchError):
            raise
        raise ArtifactMismatchError(f"{csv_path} and {json_path} do not form a dataset: {e}") from e

    stored = Standardizer.from_dict(meta['standardization'])
    if not (np.allclose(stored.mean, dataset.standardizer.mean, rtol=0, atol=1e-12)
            and np.allclose(stored.std, dataset.standardizer.std, rtol=0, atol=1e-12)):
        raise ArtifactMismatchError(
            f"Standardization in {json_path} does not match the train rows of {csv_path}"
        )
    logger.info(f"Loaded dataset of {len(dataset)} rows from {csv_path}")
    return dataset


def _analyze_spec(spec: StimulusSpec, thresholds: AnnoyanceThresholds) -> FeatureVector:
    return analyze_all(synth(spec), thresholds).with_label(spec.class_label.value)


def dataset_specs(
    n_per_class: int,
    base_seed: int,
    duration_s: float = DEFAULT_DURATION_S,
    sample_rate: int = CANONICAL_SAMPLE_RATE,
) -> List[StimulusSpec]:
    """Item class_index * n_per_class + i of each class, in class order"""
    return [
        jittered_spec(label, base_seed, label.index * n_per_class + i, duration_s, sample_rate)
        for label in CLASS_LABELS
        for i in range(n_per_class)
    ]


async def build_dataset_async(
    n_per_class: int = DEFAULT_N_PER_CLASS,
    base_seed: int = DEFAULT_BASE_SEED,
    thresholds: Optional[AnnoyanceThresholds] = None,
    train_fraction: float = DEFAULT_TRAIN_FRACTION,
    duration_s: float = DEFAULT_DURATION_S,
    sample_rate: int = CANONICAL_SAMPLE_RATE,
    workers: int = 1,
) -> Dataset:
    if n_per_class < MIN_N_PER_CLASS:
        raise ParameterError(f"n_per_class must be >= {MIN_N_PER_CLASS}, got {n_per_class}")
    thresholds = thresholds or AnnoyanceThresholds()
    specs = dataset_specs(n_per_class, base_seed, duration_s, sample_rate)
    logger.info(f"Building dataset: {n_per_class} per class, seed {base_seed}, {workers} worker(s)")

    semaphore = asyncio.Semaphore(max(1, workers))

    async def run(spec: StimulusSpec) -> FeatureVector:
        async with semaphore:
            return await asyncio.to_thread(_analyze_spec, spec, thresholds)

    results = await asyncio.gather(*(run(spec) for spec in specs), return_exceptions=True)

    rows: List[FeatureVector] = []
    for spec, result in zip(specs, results):
        if isinstance(result, Exception):
            logger.error(f"Stimulus analysis failed for {dumps_json(spec.to_dict()).strip()}: {result}")
            raise result
        rows.append(result)
        logger.debug(f"{spec.class_label.value} seed {spec.seed}: {result.as_array().tolist()}")

    labels = np.array([StimulusClass.parse(row.label).index for row in rows], dtype=np.int64)
    train_idx, test_idx = stratified_split(labels, base_seed, train_fraction)
    dataset = Dataset(
        features=np.array([row.as_array() for row in rows]),
        labels=labels,
        train_idx=train_idx,
        test_idx=test_idx,
        base_seed=base_seed,
        n_per_class=n_per_class,
        thresholds=thresholds,
        train_fraction=train_fraction,
        duration_s=duration_s,
        sample_rate=sample_rate,
        variants=dict(rows[0].variants),
    )
    logger.info(f"Dataset built: {len(dataset)} rows, {train_idx.size} train / {test_idx.size} test")
    return dataset


def build_dataset(n_per_class: int = DEFAULT_N_PER_CLASS, base_seed: int = DEFAULT_BASE_SEED,
                  thresholds: Optional[AnnoyanceThresholds] = None, **kwargs) -> Dataset:
    """Synchronous wrapper around build_dataset_async"""
    return asyncio.run(build_dataset_async(n_per_class, base_seed, thresholds, **kwargs))
