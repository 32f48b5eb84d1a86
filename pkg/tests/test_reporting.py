import numpy as np
import pytest

from manifest import RunManifest, file_sha256, manifest_path_for
from reporting import concepts
from reporting.figures import bar_plot, confusion_plot, line_plot
from reporting.tables import format_cell, read_csv, to_jsonable, write_csv
from stimuli.test_tones import sine


class TestTables:
    def test_float_cells_round_trip(self):
        assert float(format_cell(0.1 + 0.2)) == 0.1 + 0.2

    def test_special_cells(self):
        assert format_cell(None) == ''
        assert format_cell(float('nan')) == ''
        assert format_cell(np.bool_(True)) == 'true'
        assert format_cell(np.int64(3)) == '3'

    def test_csv_uses_lf(self, tmp_path):
        path = write_csv(str(tmp_path / 'sub' / 't.csv'), ['a', 'b'], [[1, 0.5], [2, None]])
        assert (tmp_path / 'sub' / 't.csv').read_bytes() == b'a,b\n1,0.5\n2,\n'
        assert read_csv(path) == [{'a': '1', 'b': '0.5'}, {'a': '2', 'b': ''}]

    def test_jsonable(self):
        assert to_jsonable({'x': np.arange(2), 'y': np.float64(np.inf)}) == {'x': [0, 1], 'y': None}


class TestFigures:
    def test_svg_is_byte_stable(self, tmp_path):
        x = np.linspace(0.0, 1.0, 50)
        first = line_plot(str(tmp_path / 'a.svg'), x, {'y': x ** 2}, 't', 'x', 'y')
        second = line_plot(str(tmp_path / 'b.svg'), x, {'y': x ** 2}, 't', 'x', 'y')
        assert file_sha256(first) == file_sha256(second)

    def test_other_plots_write_svg(self, tmp_path):
        bar = bar_plot(str(tmp_path / 'bar.svg'), ['a', 'b'], [1.0, 2.0], 't', 'v')
        matrix = confusion_plot(str(tmp_path / 'c.svg'), np.eye(3, dtype=int), ['a', 'b', 'c'], 't')
        for path in (bar, matrix):
            with open(path) as f:
                assert '<svg' in f.read()


class TestConcepts:
    def test_weighting_curve(self):
        header, rows = concepts.weighting_curve()
        assert header == ['z_bark', 'g']
        assert rows[0][1] == 1.0
        assert rows[-1][1] > 1.0

    def test_modulation_response_peaks(self):
        _, rows = concepts.modulation_response(mod_freqs=(4.0, 70.0))
        by_freq = {row[0]: row for row in rows}
        assert by_freq[70.0][1] > by_freq[4.0][1]
        assert by_freq[4.0][2] > by_freq[70.0][2]

    def test_tonal_prominence_finds_the_tone(self):
        (header, rows), peaks = concepts.tonal_prominence_example()
        assert header == ['freq_hz', 'psd_db', 'baseline_db']
        assert any(abs(peak.freq - 3000.0) < 6.0 for peak in peaks)

    def test_bark_distribution(self):
        header, rows = concepts.bark_loudness_distribution({'tone': sine(1000.0, 0.1)})
        assert header == ['band', 'center_bark', 'tone']
        assert len(rows) == 24
        assert max(rows, key=lambda row: row[2])[0] == 8


class TestRunManifest:
    def test_hash_ignores_metadata(self, tmp_path):
        out = tmp_path / 'x.csv'
        out.write_text('a\n')
        manifest = RunManifest(command=['pca'], seeds={'base_seed': 123}, root=str(tmp_path))
        assert manifest.add_output(str(out)) == 'x.csv'
        before = manifest.manifest_hash()
        manifest.metadata['created_unix'] = 1.0
        assert manifest.manifest_hash() == before

    def test_hash_tracks_outputs(self, tmp_path):
        out = tmp_path / 'x.csv'
        out.write_text('a\n')
        manifest = RunManifest(command=['pca'], root=str(tmp_path))
        manifest.add_output(str(out))
        before = manifest.manifest_hash()
        out.write_text('b\n')
        manifest.add_output(str(out))
        assert manifest.manifest_hash() != before

    def test_written_record(self, tmp_path):
        manifest = RunManifest(command=['repro'], results={'accuracy': 0.9})
        path = manifest.write(str(tmp_path / 'manifest.json'))
        with open(path) as f:
            text = f.read()
        assert '"manifest_hash"' in text
        assert '"python"' in text

    def test_manifest_path(self):
        assert manifest_path_for('out/model.json') == 'out/model.manifest.json'


@pytest.mark.parametrize('value, text', [(1.5, '1.5'), (True, 'true'), ('x', 'x')])
def test_format_cell(value, text):
    assert format_cell(value) == text
