import pytest

from settings import Settings, load_settings
from signal_core.errors import ParameterError


def write_config(tmp_path, text):
    path = tmp_path / 'sq.ini'
    path.write_text(text)
    return str(path)


class TestSettings:
    def test_defaults(self):
        settings = load_settings()
        assert settings.dataset.n_per_class == 100
        assert settings.dataset.base_seed == 123
        assert settings.forest.max_features == 2
        assert settings.thresholds.s0 == 0.0

    def test_config_file(self, tmp_path):
        path = write_config(tmp_path, '[dataset]\nn_per_class = 20\n\n[thresholds]\ns0 = 1.5\n')
        settings = load_settings(path)
        assert settings.dataset.n_per_class == 20
        assert settings.dataset.base_seed == 123
        assert settings.thresholds.s0 == 1.5

    def test_conversions(self, tmp_path):
        path = write_config(tmp_path, '[forest]\nmax_features = none\nbootstrap = no\n')
        settings = load_settings(path)
        assert settings.forest.max_features is None
        assert settings.forest.bootstrap is False

    def test_flags_override_file(self, tmp_path):
        path = write_config(tmp_path, '[svm]\nepochs = 50\n')
        settings = load_settings(path).override('svm', epochs=300, lam=None)
        assert settings.svm.epochs == 300
        assert settings.svm.lam == 1e-3

    def test_unknown_section(self, tmp_path):
        with pytest.raises(ParameterError):
            load_settings(write_config(tmp_path, '[network]\ntimeout = 30\n'))

    def test_unknown_key(self, tmp_path):
        with pytest.raises(ParameterError):
            load_settings(write_config(tmp_path, '[dataset]\nrows = 10\n'))

    def test_bad_value(self, tmp_path):
        with pytest.raises(ParameterError):
            load_settings(write_config(tmp_path, '[dataset]\nn_per_class = many\n'))

    def test_negative_threshold(self, tmp_path):
        with pytest.raises(ParameterError):
            load_settings(write_config(tmp_path, '[thresholds]\nr0 = -1\n'))

    def test_unknown_override(self):
        with pytest.raises(ParameterError):
            Settings().override('dataset', rows=10)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_settings(str(tmp_path / 'missing.ini'))

    def test_dict_form(self):
        record = Settings().to_dict()
        assert set(record) == {'analysis', 'thresholds', 'dataset', 'logreg', 'forest', 'svm', 'synth'}
