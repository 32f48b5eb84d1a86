import itertools
import json

import numpy as np
import pytest

from features_ml.dataset import (
    CSV_HEADER,
    Dataset,
    build_dataset,
    dataset_specs,
    export_dataset,
    load_dataset,
    stratified_split,
)
from features_ml.evaluation import evaluate
from features_ml.preprocessing import pca_fit, standardize
from features_ml.training import train_model
from metrics.annoyance import annoyance
from metrics.sharpness import sharpness_centroid
from signal_core.errors import ArtifactMismatchError, ParameterError
from stimuli.generator import synth
from stimuli.spec import StimulusClass


class TestStratifiedSplit:
    labels = np.repeat([0, 1, 2], 10)

    def test_sizes_per_class(self):
        train, test = stratified_split(self.labels, 123)
        assert np.bincount(self.labels[train]).tolist() == [7, 7, 7]
        assert np.bincount(self.labels[test]).tolist() == [3, 3, 3]

    def test_disjoint_sorted_and_complete(self):
        train, test = stratified_split(self.labels, 123)
        assert not np.intersect1d(train, test).size
        assert np.all(np.diff(train) > 0) and np.all(np.diff(test) > 0)
        assert sorted(train.tolist() + test.tolist()) == list(range(30))

    def test_seeded(self):
        first = stratified_split(self.labels, 123)
        again = stratified_split(self.labels, 123)
        other = stratified_split(self.labels, 124)
        np.testing.assert_array_equal(first[0], again[0])
        assert not np.array_equal(first[0], other[0])

    @pytest.mark.parametrize('fraction', [0.0, 1.0, 1.5])
    def test_bad_fraction(self, fraction):
        with pytest.raises(ParameterError):
            stratified_split(self.labels, 123, fraction)


class TestDatasetSpecs:
    def test_layout(self):
        specs = dataset_specs(10, 123, duration_s=1.0)
        assert len(specs) == 30
        assert [spec.class_label for spec in specs[::10]] == list(StimulusClass)
        assert len({spec.seed for spec in specs}) == 30


class TestBuildDataset:
    def test_shape_and_split(self, small_dataset):
        assert small_dataset.features.shape == (30, 6)
        assert small_dataset.class_counts().tolist() == [10, 10, 10]
        assert small_dataset.train_idx.size == 21
        assert small_dataset.test_idx.size == 9
        assert small_dataset.class_counts(small_dataset.test_idx).tolist() == [3, 3, 3]

    def test_features_are_finite(self, small_dataset):
        assert np.all(np.isfinite(small_dataset.features))

    def test_pa_column_matches_annoyance(self, small_dataset):
        for n, s, r, f, _, pa in small_dataset.features:
            assert annoyance(n, s, r, f, small_dataset.thresholds).value == pytest.approx(pa, abs=1e-9)

    def test_road_noise_less_sharp_than_wind_whistle(self, small_dataset):
        sharpness = small_dataset.features[:, 1]
        road = sharpness[small_dataset.labels == StimulusClass.ROAD_NOISE.index]
        whistle = sharpness[small_dataset.labels == StimulusClass.WIND_WHISTLE.index]
        assert np.mean(road) < np.mean(whistle)

    def test_standardizer_uses_train_rows(self, small_dataset):
        np.testing.assert_allclose(small_dataset.standardizer.mean, small_dataset.train_features.mean(axis=0))

    def test_too_few_per_class(self):
        with pytest.raises(ParameterError):
            build_dataset(5, 123, duration_s=1.0)

    def test_overlapping_split_rejected(self, small_dataset):
        with pytest.raises(ArtifactMismatchError):
            Dataset(
                features=small_dataset.features,
                labels=small_dataset.labels,
                train_idx=np.arange(21),
                test_idx=np.arange(20, 30),
                base_seed=123,
                n_per_class=10,
            )

    @pytest.mark.slow
    def test_full_dataset_is_reproducible(self):
        first = build_dataset(100, 123, workers=4)
        again = build_dataset(100, 123, workers=1)
        assert first.fingerprint() == again.fingerprint()
        assert first.train_idx.size == 210


class TestExportLoad:
    def test_round_trip(self, small_dataset, tmp_path):
        csv_path, json_path = export_dataset(small_dataset, str(tmp_path / 'features.csv'))
        assert json_path == str(tmp_path / 'features.json')
        loaded = load_dataset(csv_path)
        np.testing.assert_array_equal(loaded.features, small_dataset.features)
        np.testing.assert_array_equal(loaded.train_idx, small_dataset.train_idx)
        assert loaded.fingerprint() == small_dataset.fingerprint()

    def test_header(self, small_dataset, tmp_path):
        csv_path, _ = export_dataset(small_dataset, str(tmp_path / 'features.csv'))
        with open(csv_path) as f:
            assert f.readline().strip() == ','.join(CSV_HEADER)
        assert CSV_HEADER == ['n', 's', 'r', 'f', 't', 'pa', 'label']

    def test_byte_stable(self, small_dataset, tmp_path):
        first, _ = export_dataset(small_dataset, str(tmp_path / 'a.csv'))
        second, _ = export_dataset(small_dataset, str(tmp_path / 'b.csv'))
        with open(first, 'rb') as a, open(second, 'rb') as b:
            assert a.read() == b.read()

    def test_tampered_sidecar(self, small_dataset, tmp_path):
        csv_path, json_path = export_dataset(small_dataset, str(tmp_path / 'features.csv'))
        with open(json_path) as f:
            meta = json.load(f)
        meta['standardization']['mean'][0] += 1.0
        with open(json_path, 'w') as f:
            json.dump(meta, f)
        with pytest.raises(ArtifactMismatchError):
            load_dataset(csv_path)

    def test_split_of_wrong_size(self, small_dataset, tmp_path):
        csv_path, json_path = export_dataset(small_dataset, str(tmp_path / 'features.csv'))
        with open(json_path) as f:
            meta = json.load(f)
        meta['split']['test'] = meta['split']['test'][:-1]
        with open(json_path, 'w') as f:
            json.dump(meta, f)
        with pytest.raises(ArtifactMismatchError):
            load_dataset(csv_path)

    def test_bad_header(self, small_dataset, tmp_path):
        csv_path, _ = export_dataset(small_dataset, str(tmp_path / 'features.csv'))
        with open(csv_path) as f:
            lines = f.readlines()
        lines[0] = 'a,b,c,d,e,f,g\n'
        with open(csv_path, 'w') as f:
            f.writelines(lines)
        with pytest.raises(ArtifactMismatchError):
            load_dataset(csv_path)

    def test_missing_sidecar(self, small_dataset, tmp_path):
        csv_path, json_path = export_dataset(small_dataset, str(tmp_path / 'features.csv'))
        (tmp_path / 'features.json').unlink()
        with pytest.raises(OSError):
            load_dataset(csv_path)


@pytest.fixture(scope='module')
def default_dataset():
    return build_dataset(workers=4)


@pytest.mark.slow
class TestDefaultDataset:
    def test_forest_accuracy(self, default_dataset):
        report = evaluate(train_model('rf', default_dataset), default_dataset)
        assert report.n_test == 90
        assert report.accuracy >= 0.90

    def test_pca_explains_most_train_variance(self, default_dataset):
        train_z, _, standardizer = standardize(default_dataset)
        projection = pca_fit(train_z, 2)
        assert float(np.sum(projection.explained_variance_ratio)) >= 0.60

        points = projection.transform(standardizer.transform(default_dataset.features))
        centroids = [points[default_dataset.labels == label].mean(axis=0) for label in range(3)]
        for i, j in itertools.combinations(range(3), 2):
            assert np.linalg.norm(centroids[i] - centroids[j]) > 0.0

    def test_class_centroid_frequency_ordering(self):
        means = {}
        for label in StimulusClass:
            specs = [spec for spec in dataset_specs(100, 123) if spec.class_label is label]
            means[label] = np.mean([sharpness_centroid(synth(spec)).value for spec in specs])
        assert means[StimulusClass.ROAD_NOISE] < means[StimulusClass.ENGINE_BOOM] < means[StimulusClass.WIND_WHISTLE]
