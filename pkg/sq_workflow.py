import asyncio
import logging
import os
from dataclasses import asdict
from typing import Dict, List, Optional

import numpy as np

from features_ml.dataset import CLASS_LABELS, Dataset, build_dataset_async, export_dataset, load_dataset
from features_ml.evaluation import EvalReport, evaluate
from features_ml.preprocessing import PcaProjection, pca_fit, standardize
from features_ml.training import TrainedModel, load_model, save_model, train_model
from manifest import RunManifest, manifest_path_for
from metrics.analyzer import MetricSuite, analyze_all
from metrics.loudness import normalize_loudness
from metrics.tonality import tonality_proxy
from reporting import concepts
from reporting.figures import bar_plot, confusion_plot, line_plot, scatter_plot
from reporting.tables import dumps_json, format_cell, write_csv, write_json
from settings import Settings
from signal_core.signal import Signal
from signal_core.wav_io import read_wav
from stimuli.base_stimulus import peak_limit
from stimuli.generator import default_spec, export_stimulus, synth
from stimuli.spec import StimulusClass

logger = logging.getLogger(__name__)

ANALYZE_CSV_HEADER = ['metric', 'value', 'unit', 'variant', 'params_hash']


def analysis_record(signal: Signal, suite: MetricSuite, settings: Settings, source: str) -> Dict[str, object]:
    """The analyze record: levels plus one entry per selected metric"""
    values = suite.analyze(signal, settings.thresholds)
    for name, value in values.items():
        if not value.is_defined:
            logger.warning(f"{name}: undefined (all blocks fall below the absolute gate)")
    record = {
        'input': source,
        'sample_rate': signal.sample_rate,
        'duration_s': signal.duration,
        'calibration_offset_db': signal.calibration_offset_db,
        'level_dbfs': signal.level_dbfs(),
        'level_spl': signal.level_spl(),
        'thresholds': settings.thresholds.to_dict(),
        'metrics': [value.to_dict() for value in values.values()],
    }
    if 'tonality' in values:
        _, peaks = tonality_proxy(signal)
        record['tonal_peaks'] = [peak.to_dict() for peak in peaks]
    return record


def render_record(record: Dict[str, object], fmt: str) -> str:
    if fmt == 'json':
        return dumps_json(record)
    lines = [','.join(ANALYZE_CSV_HEADER)]
    for entry in record['metrics']:
        lines.append(','.join(format_cell(entry[column]) for column in ANALYZE_CSV_HEADER))
    lines.append(','.join(['level_dbfs', format_cell(record['level_dbfs']), 'dBFS', 'aes17', '']))
    lines.append(','.join(['level_spl', format_cell(record['level_spl']), 'dB SPL', 'calibrated', '']))
    return '\n'.join(lines) + '\n'


class SoundQualityWorkflow:
    """Ties stimuli, metrics, the ML chain and artifact writing together for the CLI verbs"""

    def __init__(self, settings: Settings, command: Optional[List[str]] = None):
        self.settings = settings
        self.command = list(command or [])
        self.workers = max(1, settings.analysis.workers)

    def _manifest(self, root: Optional[str] = None, **seeds: int) -> RunManifest:
        return RunManifest(
            command=self.command,
            parameters=self.settings.to_dict(),
            seeds=seeds,
            root=root,
        )

    async def synth(
        self,
        class_name: str,
        seed: int,
        out_path: str,
        overrides: Optional[Dict[str, float]] = None,
        target_lufs: Optional[float] = None,
    ) -> RunManifest:
        spec = default_spec(
            class_name,
            seed,
            overrides,
            duration_s=self.settings.synth.duration_s,
            sample_rate=self.settings.synth.sample_rate,
        )
        signal = await asyncio.to_thread(synth, spec)
        if target_lufs is not None:
            normalized = normalize_loudness(signal, target_lufs)
            limited = peak_limit(normalized.samples)
            if limited is not normalized.samples:
                logger.warning(f"Peak limit reduced the level below the {target_lufs} LUFS target")
            signal = normalized.with_samples(limited)

        sidecar = export_stimulus(spec, out_path, signal)
        manifest = self._manifest(root=os.path.dirname(os.path.abspath(out_path)), seed=seed)
        manifest.parameters['stimulus'] = spec.to_dict()
        manifest.parameters['target_lufs'] = target_lufs
        manifest.add_output(out_path)
        manifest.add_output(sidecar)
        manifest.write(manifest_path_for(out_path))
        return manifest

    async def analyze(
        self,
        in_path: str,
        fmt: str = 'json',
        suite: Optional[MetricSuite] = None,
        out_path: Optional[str] = None,
    ) -> str:
        signal = read_wav(in_path, calibration_offset_db=self.settings.analysis.calibration_offset_db)
        suite = suite or MetricSuite()
        source = 'stdin' if in_path == '-' else os.path.basename(in_path)
        logger.info(f"Analyzing {source}: {signal.duration:.2f} s at {signal.sample_rate} Hz, metrics {suite.names}")
        record = await asyncio.to_thread(analysis_record, signal, suite, self.settings, source)
        text = render_record(record, fmt)
        if out_path:
            os.makedirs(os.path.dirname(os.path.abspath(out_path)), exist_ok=True)
            with open(out_path, 'w', encoding='utf-8', newline='\n') as f:
                f.write(text)
            manifest = self._manifest(root=os.path.dirname(os.path.abspath(out_path)))
            manifest.variants = {m['metric']: m['variant'] for m in record['metrics']}
            manifest.add_output(out_path)
            manifest.write(manifest_path_for(out_path))
        return text

    async def build_dataset(self, out_csv: Optional[str] = None) -> Dataset:
        ds = self.settings.dataset
        dataset = await build_dataset_async(
            n_per_class=ds.n_per_class,
            base_seed=ds.base_seed,
            thresholds=self.settings.thresholds,
            train_fraction=ds.train_fraction,
            duration_s=ds.duration_s,
            sample_rate=ds.sample_rate,
            workers=self.workers,
        )
        if out_csv:
            csv_path, json_path = export_dataset(dataset, out_csv)
            manifest = self._manifest(root=os.path.dirname(os.path.abspath(out_csv)), base_seed=ds.base_seed)
            manifest.variants = dict(dataset.variants)
            manifest.results = {
                'rows': len(dataset),
                'train_rows': int(dataset.train_idx.size),
                'test_rows': int(dataset.test_idx.size),
                'fingerprint': dataset.fingerprint(),
            }
            manifest.add_output(csv_path)
            manifest.add_output(json_path)
            manifest.write(manifest_path_for(out_csv))
        return dataset

    def _hyperparameters(self, kind: str) -> Dict[str, object]:
        if kind == 'logreg':
            return asdict(self.settings.logreg)
        if kind == 'random_forest':
            return asdict(self.settings.forest)
        return asdict(self.settings.svm)

    def fit(self, kind: str, dataset: Dataset) -> TrainedModel:
        hyperparameters = self._hyperparameters(kind)
        seed = hyperparameters.pop('training_seed', None)
        return train_model(kind, dataset, training_seed=seed, **hyperparameters)

    async def train(self, kind: str, dataset_csv: str, model_path: str) -> TrainedModel:
        dataset = load_dataset(dataset_csv)
        model = await asyncio.to_thread(self.fit, kind, dataset)
        save_model(model, model_path)
        manifest = self._manifest(root=os.path.dirname(os.path.abspath(model_path)),
                                  base_seed=dataset.base_seed, training_seed=model.training_seed)
        manifest.results = {'kind': model.kind, 'dataset_fingerprint': model.dataset_fingerprint}
        manifest.add_output(model_path)
        manifest.write(manifest_path_for(model_path))
        return model

    @staticmethod
    def write_confusion(report: EvalReport, path: str) -> str:
        classes = [label.value for label in CLASS_LABELS]
        rows = [[classes[i]] + report.confusion[i].tolist() for i in range(len(classes))]
        return write_csv(path, ['true\\predicted'] + classes, rows)

    async def evaluate(self, model_path: str, dataset_csv: str, report_path: Optional[str] = None,
                       confusion_path: Optional[str] = None) -> EvalReport:
        dataset = load_dataset(dataset_csv)
        model = load_model(model_path)
        report = evaluate(model, dataset)
        print(f"accuracy: {report.accuracy:.2f}")
        outputs = []
        if report_path:
            outputs.append(write_json(report_path, report.to_dict()))
        if confusion_path:
            outputs.append(self.write_confusion(report, confusion_path))
        if outputs:
            manifest = self._manifest(root=os.path.dirname(os.path.abspath(outputs[0])),
                                      base_seed=dataset.base_seed, training_seed=model.training_seed)
            manifest.results = {'accuracy': report.accuracy, 'spearman_pa': report.spearman_pa}
            for path in outputs:
                manifest.add_output(path)
            manifest.write(manifest_path_for(outputs[0]))
        return report

    @staticmethod
    def project(dataset: Dataset, k: int = 2):
        train_z, _, standardizer = standardize(dataset)
        projection = pca_fit(train_z, k)
        return projection, projection.transform(standardizer.transform(dataset.features))

    @staticmethod
    def write_scatter(dataset: Dataset, points: np.ndarray, path: str) -> str:
        header = [f"pc{i + 1}" for i in range(points.shape[1])] + ['label']
        labels = [CLASS_LABELS[label].value for label in dataset.labels]
        return write_csv(path, header, [row.tolist() + [label] for row, label in zip(points, labels)])

    async def pca(self, dataset_csv: str, k: int, out_csv: str) -> PcaProjection:
        dataset = load_dataset(dataset_csv)
        projection, points = self.project(dataset, k)
        self.write_scatter(dataset, points, out_csv)
        json_path = write_json(os.path.splitext(out_csv)[0] + '.json', projection.to_dict())
        manifest = self._manifest(root=os.path.dirname(os.path.abspath(out_csv)), base_seed=dataset.base_seed)
        manifest.results = {'explained_variance_ratio': projection.explained_variance_ratio.tolist()}
        manifest.add_output(out_csv)
        manifest.add_output(json_path)
        manifest.write(manifest_path_for(out_csv))
        return projection

    async def repro(self, out_dir: str) -> RunManifest:
        """Regenerate every figure-data artifact under out_dir"""
        os.makedirs(out_dir, exist_ok=True)
        ds = self.settings.dataset
        manifest = self._manifest(root=out_dir, base_seed=ds.base_seed,
                                  training_seed=self.settings.forest.training_seed)

        def emit(path: str) -> None:
            manifest.add_output(path)

        def table(name: str, header, rows) -> str:
            path = write_csv(os.path.join(out_dir, name), header, rows)
            emit(path)
            return path

        # Case waveforms and per-case metric summary
        cases: Dict[str, Signal] = {}
        for label in StimulusClass:
            spec = default_spec(label, ds.base_seed, duration_s=ds.duration_s, sample_rate=ds.sample_rate)
            cases[label.value] = synth(spec)
        summary_rows = []
        for name, signal in cases.items():
            header, rows = concepts.waveform_excerpt(signal)
            table(f"waveform_{name}.csv", header, rows)
            emit(line_plot(os.path.join(out_dir, f"waveform_{name}.svg"), np.array([r[0] for r in rows]),
                           {name: np.array([r[1] for r in rows])}, f"{name} waveform", 'time (s)', 'amplitude'))
            vector = analyze_all(signal, self.settings.thresholds)
            summary_rows.append([name] + vector.as_array().tolist())
        table('metric_summary.csv', ['class', 'n', 's', 'r', 'f', 't', 'pa'], summary_rows)
        emit(bar_plot(os.path.join(out_dir, 'metric_summary.svg'), [r[0] for r in summary_rows],
                      [r[6] for r in summary_rows], 'Psychoacoustic annoyance per case', 'PA'))

        # Dataset, PCA scatter and classifier evaluation
        dataset = await self.build_dataset()
        csv_path, json_path = export_dataset(dataset, os.path.join(out_dir, 'dataset.csv'))
        emit(csv_path)
        emit(json_path)
        projection, points = self.project(dataset, 2)
        emit(self.write_scatter(dataset, points, os.path.join(out_dir, 'pca_scatter.csv')))
        emit(write_json(os.path.join(out_dir, 'pca.json'), projection.to_dict()))
        emit(scatter_plot(os.path.join(out_dir, 'pca_scatter.svg'), points,
                          [CLASS_LABELS[label].value for label in dataset.labels],
                          'Feature space (PCA)', 'PC1', 'PC2'))

        model = await asyncio.to_thread(self.fit, 'random_forest', dataset)
        report = evaluate(model, dataset)
        emit(self.write_confusion(report, os.path.join(out_dir, 'confusion.csv')))
        emit(write_json(os.path.join(out_dir, 'eval.json'), report.to_dict()))
        emit(confusion_plot(os.path.join(out_dir, 'confusion.svg'), report.confusion,
                            [label.value for label in CLASS_LABELS],
                            f"Random forest, accuracy {report.accuracy:.2f}"))

        # Concept curves
        header, rows = concepts.bark_loudness_distribution(cases)
        table('bark_loudness.csv', header, rows)
        emit(line_plot(os.path.join(out_dir, 'bark_loudness.svg'), np.array([r[1] for r in rows]),
                       {name: np.array([r[2 + i] for r in rows]) for i, name in enumerate(cases)},
                       'Specific loudness distribution', 'critical-band rate (Bark)', "N' (sone-proxy/Bark)"))

        header, rows = concepts.weighting_curve()
        table('sharpness_weighting.csv', header, rows)
        emit(line_plot(os.path.join(out_dir, 'sharpness_weighting.svg'), np.array([r[0] for r in rows]),
                       {'g(z)': np.array([r[1] for r in rows])}, 'Sharpness weighting', 'z (Bark)', 'g(z)'))

        header, rows = await asyncio.to_thread(concepts.modulation_response)
        table('modulation_response.csv', header, rows)
        emit(line_plot(os.path.join(out_dir, 'modulation_response.svg'), np.array([r[0] for r in rows]),
                       {'roughness': np.array([r[1] for r in rows]), 'fluctuation': np.array([r[2] for r in rows])},
                       'Modulation response, 1 kHz AM tone', 'modulation frequency (Hz)', 'proxy value'))

        (header, rows), peaks = concepts.tonal_prominence_example()
        table('tonal_prominence.csv', header, rows)
        emit(line_plot(os.path.join(out_dir, 'tonal_prominence.svg'), np.array([r[0] for r in rows]),
                       {'PSD': np.array([r[1] for r in rows]), 'baseline': np.array([r[2] for r in rows])},
                       'Tonal prominence', 'frequency (Hz)', 'level (dB)'))

        manifest.variants = dict(dataset.variants)
        manifest.results = {
            'accuracy': report.accuracy,
            'spearman_pa': report.spearman_pa,
            'explained_variance_2d': float(np.sum(projection.explained_variance_ratio)),
            'dataset_fingerprint': dataset.fingerprint(),
            'tonal_peaks': [peak.to_dict() for peak in peaks],
        }
        manifest.write(os.path.join(out_dir, 'manifest.json'))
        logger.info(f"Reproduction finished: accuracy {report.accuracy:.2f}, {len(manifest.outputs)} files")
        return manifest
