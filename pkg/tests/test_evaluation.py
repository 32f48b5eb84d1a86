import numpy as np
import pytest

from features_ml.dataset import Dataset
from features_ml.evaluation import EvalReport, evaluate, spearman, synthetic_ratings
from features_ml.training import TrainedModel, load_model, save_model, train_logreg, train_model
from signal_core.errors import ArtifactMismatchError, ParameterError


class TestSpearman:
    def test_self_correlation(self):
        assert spearman([3.0, 1.0, 2.0, 5.0], [3.0, 1.0, 2.0, 5.0]) == pytest.approx(1.0)

    def test_reversed(self):
        assert spearman([1.0, 2.0, 3.0, 4.0], [4.0, 3.0, 2.0, 1.0]) == pytest.approx(-1.0)

    def test_one_swap_in_five(self):
        assert spearman([1, 2, 3, 4, 5], [2, 1, 3, 4, 5]) == pytest.approx(0.9)

    def test_one_swap_in_three(self):
        assert spearman([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5)

    def test_ties_use_average_ranks(self):
        assert spearman([1, 2, 3, 4], [1, 1, 2, 2]) == pytest.approx(2.0 / np.sqrt(5.0))

    def test_monotone_transform_invariance(self):
        x = np.array([0.3, 2.0, 1.1, 5.0, 4.2])
        y = np.array([1.0, 3.0, 2.5, 2.0, 7.0])
        assert spearman(np.exp(x), y ** 3) == pytest.approx(spearman(x, y))

    def test_constant_side_is_undefined(self):
        assert spearman([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]) is None

    def test_length_mismatch(self):
        with pytest.raises(ParameterError):
            spearman([1, 2, 3], [1, 2])

    def test_too_short(self):
        with pytest.raises(ParameterError):
            spearman([1, 2], [2, 1])


class TestSyntheticRatings:
    def test_seeded(self):
        pa = np.linspace(0.0, 10.0, 20)
        np.testing.assert_array_equal(synthetic_ratings(pa, 123), synthetic_ratings(pa, 123))

    def test_no_noise_keeps_order(self):
        pa = np.array([3.0, 1.0, 2.0])
        np.testing.assert_array_equal(synthetic_ratings(pa, 1, noise=0.0), [3.0, 1.0, 2.0])


class TestEvalReport:
    def test_perfect_predictor(self):
        true = np.array([0, 1, 2, 0, 1, 2])
        report = EvalReport.from_predictions(true, true, 3)
        assert report.accuracy == 1.0
        np.testing.assert_array_equal(report.confusion, 2 * np.eye(3, dtype=int))
        assert report.precision == [1.0, 1.0, 1.0]

    def test_accuracy_is_trace_over_total(self):
        true = np.array([0, 0, 1, 1, 2, 2])
        predicted = np.array([0, 1, 1, 1, 0, 2])
        report = EvalReport.from_predictions(true, predicted, 3)
        assert report.accuracy == pytest.approx(np.trace(report.confusion) / report.confusion.sum())
        assert report.accuracy == pytest.approx(4.0 / 6.0)
        assert report.confusion[0, 1] == 1
        assert report.recall[0] == 0.5
        assert report.n_test == 6

    def test_never_predicted_class_has_zero_precision(self):
        report = EvalReport.from_predictions(np.array([0, 1, 2]), np.array([0, 0, 0]), 3)
        assert report.precision[1] == 0.0

    def test_dict_form(self):
        record = EvalReport.from_predictions(np.array([0, 1, 2]), np.array([0, 1, 2]), 3, 0.8, 'svm').to_dict()
        assert record['classes'] == ['EngineBoom', 'WindWhistle', 'RoadNoise']
        assert record['spearman_pa'] == 0.8
        assert record['kind'] == 'svm'


class TestEvaluate:
    def test_report_covers_test_split(self, small_dataset):
        report = evaluate(train_logreg(small_dataset), small_dataset)
        assert report.n_test == 9
        assert report.confusion.sum(axis=1).tolist() == [3, 3, 3]
        assert 0.0 <= report.accuracy <= 1.0

    def test_forest_beats_chance(self, small_dataset):
        report = evaluate(train_model('rf', small_dataset), small_dataset)
        assert report.accuracy > 1.0 / 3.0

    def test_model_round_trip(self, small_dataset, tmp_path):
        model = train_model('svm', small_dataset)
        path = save_model(model, str(tmp_path / 'svm.model.json'))
        restored = load_model(path)
        assert restored.kind == 'svm'
        assert restored.dataset_fingerprint == model.dataset_fingerprint
        assert evaluate(restored, small_dataset).accuracy == evaluate(model, small_dataset).accuracy

    def test_other_dataset_is_rejected(self, small_dataset):
        model = train_model('logreg', small_dataset, iterations=10)
        other = Dataset(
            features=small_dataset.features,
            labels=small_dataset.labels,
            train_idx=small_dataset.train_idx,
            test_idx=small_dataset.test_idx,
            base_seed=small_dataset.base_seed + 1,
            n_per_class=small_dataset.n_per_class,
        )
        with pytest.raises(ArtifactMismatchError):
            evaluate(model, other)

    def test_not_a_model_file(self, tmp_path):
        path = tmp_path / 'model.json'
        path.write_text('{"kind": "svm"}')
        with pytest.raises(ArtifactMismatchError):
            load_model(str(path))

    def test_unknown_kind_in_model_file(self):
        with pytest.raises(ArtifactMismatchError):
            TrainedModel.from_dict({
                'kind': 'knn', 'training_seed': 1, 'hyperparameters': {},
                'parameters': {}, 'dataset_fingerprint': 'x',
            })
