import math

import numpy as np
import pytest

from features_ml.classifiers import (
    DecisionTree,
    LinearSVM,
    LogisticRegression,
    RandomForest,
    find_best_split,
    get_classifier,
    loss_and_gradient,
)
from features_ml.classifiers.logreg import one_hot
from features_ml.preprocessing import standardize
from signal_core.errors import ParameterError
from stimuli.rng import PinnedRng

XOR_FEATURES = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
XOR_LABELS = np.array([0, 1, 1, 0])


def blobs(per_class=20, spread=0.5, seed=0):
    centers = np.array([[0.0, 0.0], [5.0, 0.0], [0.0, 5.0]])
    noise = PinnedRng(seed).normal(3 * per_class * 2).reshape(-1, 2)
    features = np.repeat(centers, per_class, axis=0) + spread * noise
    return features, np.repeat([0, 1, 2], per_class)


class TestLogisticRegression:
    def test_gradient_matches_finite_differences(self):
        rng = PinnedRng(1)
        features = rng.normal(24).reshape(8, 3)
        targets = one_hot(np.array([0, 1, 2, 0, 1, 2, 0, 1]), 3)
        weights = 0.1 * rng.normal(9).reshape(3, 3)
        bias = 0.1 * rng.normal(3)
        _, grad_weights, grad_bias = loss_and_gradient(weights, bias, features, targets, 1e-3)
        h = 1e-6
        for i in range(3):
            for j in range(3):
                step = np.zeros_like(weights)
                step[i, j] = h
                up = loss_and_gradient(weights + step, bias, features, targets, 1e-3)[0]
                down = loss_and_gradient(weights - step, bias, features, targets, 1e-3)[0]
                assert grad_weights[i, j] == pytest.approx((up - down) / (2 * h), abs=1e-6)
        for j in range(3):
            step = np.zeros(3)
            step[j] = h
            up = loss_and_gradient(weights, bias + step, features, targets, 1e-3)[0]
            down = loss_and_gradient(weights, bias - step, features, targets, 1e-3)[0]
            assert grad_bias[j] == pytest.approx((up - down) / (2 * h), abs=1e-6)

    def test_untrained_model_is_uniform(self):
        features, labels = blobs()
        model = LogisticRegression(iterations=0).fit(features, labels)
        np.testing.assert_allclose(model.predict_proba(features), 1.0 / 3.0)

    def test_first_loss_is_log_of_class_count(self):
        features, labels = blobs()
        model = LogisticRegression(iterations=5).fit(features, labels)
        assert model.loss_history[0] == pytest.approx(math.log(3.0))
        assert model.loss_history[-1] < model.loss_history[0]

    def test_separable_blobs(self):
        features, labels = blobs()
        model = LogisticRegression().fit(features, labels)
        assert np.mean(model.predict(features) == labels) == 1.0

    def test_prediction_is_argmax_of_probabilities(self):
        features, labels = blobs(seed=2)
        model = LogisticRegression(iterations=50).fit(features, labels)
        np.testing.assert_array_equal(model.predict(features), np.argmax(model.predict_proba(features), axis=1))

    def test_parameters_round_trip(self):
        features, labels = blobs()
        model = LogisticRegression(iterations=100).fit(features, labels)
        restored = LogisticRegression()
        restored.set_parameters(model.get_parameters())
        np.testing.assert_array_equal(restored.predict(features), model.predict(features))

    def test_predict_before_fit(self):
        with pytest.raises(ParameterError):
            LogisticRegression().predict(np.zeros((1, 2)))

    def test_mismatched_labels(self):
        with pytest.raises(ParameterError):
            LogisticRegression().fit(np.zeros((4, 2)), np.array([0, 1]))


class TestDecisionTree:
    def test_xor_root_split(self):
        feature, threshold, impurity = find_best_split(XOR_FEATURES, XOR_LABELS, 2, [0, 1])
        assert (feature, threshold) == (0, 0.5)
        assert impurity == pytest.approx(0.5)

    def test_xor_is_learned(self):
        tree = DecisionTree().fit(XOR_FEATURES, XOR_LABELS, 2)
        assert tree.root_split == (0, 0.5)
        np.testing.assert_array_equal(tree.predict(XOR_FEATURES), XOR_LABELS)

    def test_pure_node_is_leaf(self):
        tree = DecisionTree().fit(XOR_FEATURES, np.zeros(4, dtype=int), 2)
        assert tree.root_split is None
        assert tree.predict(XOR_FEATURES).tolist() == [0, 0, 0, 0]

    def test_constant_features_give_majority_leaf(self):
        tree = DecisionTree().fit(np.ones((3, 2)), np.array([1, 1, 0]), 2)
        assert tree.root_split is None
        assert tree.predict(np.ones((1, 2))).tolist() == [1]

    def test_dict_round_trip(self):
        tree = DecisionTree().fit(XOR_FEATURES, XOR_LABELS, 2)
        restored = DecisionTree.from_dict(tree.to_dict())
        np.testing.assert_array_equal(restored.predict(XOR_FEATURES), XOR_LABELS)


class TestRandomForest:
    def test_same_seed_same_forest(self):
        features, labels = blobs(seed=3)
        first = RandomForest(n_trees=10, training_seed=123).fit(features, labels)
        again = RandomForest(n_trees=10, training_seed=123).fit(features, labels)
        assert first.get_parameters() == again.get_parameters()

    def test_seed_changes_forest(self):
        features, labels = blobs(seed=3)
        first = RandomForest(n_trees=10, training_seed=123).fit(features, labels)
        other = RandomForest(n_trees=10, training_seed=124).fit(features, labels)
        assert first.get_parameters() != other.get_parameters()

    def test_fits_training_rows(self, small_dataset):
        train_z, _, _ = standardize(small_dataset)
        forest = RandomForest().fit(train_z, small_dataset.train_labels, 3)
        assert np.mean(forest.predict(train_z) == small_dataset.train_labels) >= 0.95

    def test_votes_sum_to_tree_count(self):
        features, labels = blobs()
        forest = RandomForest(n_trees=7).fit(features, labels)
        np.testing.assert_array_equal(forest.votes(features).sum(axis=1), 7)

    def test_too_few_rows(self):
        with pytest.raises(ParameterError):
            RandomForest().fit(np.zeros((9, 2)), np.zeros(9, dtype=int))

    def test_no_trees(self):
        with pytest.raises(ParameterError):
            RandomForest(n_trees=0)


class TestLinearSVM:
    def test_separates_margin_data(self):
        features = np.array([[-2.0, -2.0], [-3.0, -1.0], [-1.0, -3.0], [2.0, 2.0], [3.0, 1.0], [1.0, 3.0]])
        labels = np.array([0, 0, 0, 1, 1, 1])
        model = LinearSVM().fit(features, labels)
        np.testing.assert_array_equal(model.predict(features), labels)

    def test_blobs(self):
        features, labels = blobs()
        model = LinearSVM().fit(features, labels)
        assert np.mean(model.predict(features) == labels) >= 0.95

    def test_duplicated_rows_give_same_weights(self):
        features, labels = blobs(seed=4)
        single = LinearSVM().fit(features, labels)
        doubled = LinearSVM().fit(np.vstack([features, features]), np.concatenate([labels, labels]))
        np.testing.assert_allclose(doubled.weights, single.weights, atol=1e-6)

    def test_deterministic(self):
        features, labels = blobs(seed=5)
        first = LinearSVM(training_seed=9).fit(features, labels)
        again = LinearSVM(training_seed=9).fit(features, labels)
        np.testing.assert_array_equal(first.weights, again.weights)

    def test_bad_hyperparameters(self):
        with pytest.raises(ParameterError):
            LinearSVM(lam=0.0)


class TestGetClassifier:
    @pytest.mark.parametrize('name, expected', [
        ('logreg', LogisticRegression),
        ('LR', LogisticRegression),
        ('rf', RandomForest),
        ('random-forest', RandomForest),
        ('svm', LinearSVM),
    ])
    def test_aliases(self, name, expected):
        assert get_classifier(name) is expected

    def test_unknown(self):
        with pytest.raises(ParameterError):
            get_classifier('knn')
