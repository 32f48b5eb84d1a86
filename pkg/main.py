import argparse
import asyncio
import logging
import sys
from dataclasses import replace
from typing import List, Optional

from features_ml.classifiers import canonical_kind
from metrics.analyzer import MetricSuite
from settings import Settings, load_settings
from signal_core.errors import ArtifactMismatchError, SoundQualityError
from sq_workflow import SoundQualityWorkflow
from stimuli.classes import STIMULI_REGISTRY

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_IO = 3
EXIT_MISMATCH = 4

# Stimulus parameter flags, all optional; each class accepts only its own
PARAM_FLAGS = {
    'f0': float,
    'n_harmonics': int,
    'harmonic_rolloff_db': float,
    'mod_freq': float,
    'mod_depth': float,
    'tone_freq': float,
    'tone_level_dbfs': float,
    'noise_level_dbfs': float,
    'cutoff': float,
    'level_dbfs': float,
}


def parse_name_list(names: str) -> List[str]:
    """Parse comma-separated name list string into a list"""
    if not names or names.lower() == 'all':
        return []  # Empty list means the default selection

    return [s.strip().lower() for s in names.split(',') if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Psychoacoustic sound-quality toolkit')
    parser.add_argument('--config', help='INI config file (flags override it)')
    parser.add_argument('--workers', type=int, help='Worker threads for batch analysis')
    parser.add_argument('--debug', action='store_true', help='Enable debug logging')
    verbs = parser.add_subparsers(dest='command', required=True)

    synth = verbs.add_parser('synth', help='Synthesize a stimulus WAV plus sidecar spec')
    synth.add_argument('stimulus', choices=sorted(STIMULI_REGISTRY), help='Stimulus class')
    synth.add_argument('--seed', type=int, default=0, help='Stimulus seed')
    synth.add_argument('-o', '--output', required=True, help='Output WAV path')
    synth.add_argument('--duration', type=float, help='Duration in seconds')
    synth.add_argument('--sample-rate', type=int, help='Sample rate in Hz')
    synth.add_argument('--target-lufs', type=float, help='Normalize integrated loudness before writing')
    for name, kind in PARAM_FLAGS.items():
        synth.add_argument(f"--{name.replace('_', '-')}", dest=name, type=kind, help=f"Override {name}")

    analyze = verbs.add_parser('analyze', help='Compute the metric record of a WAV file')
    analyze.add_argument('input', nargs='?', help="WAV path or '-' for stdin")
    analyze.add_argument('--format', choices=['json', 'csv'], default='json')
    analyze.add_argument('-o', '--output', help='Write the record to a file instead of stdout')
    analyze.add_argument('--metrics', default='all',
                         help='Comma-separated list of metrics to compute, or "all" for the default record')
    analyze.add_argument('--exclude-metrics', default='', help='Comma-separated list of metrics to skip')
    analyze.add_argument('--proxies', action='store_true', help='Also report the alternative proxy variants')
    analyze.add_argument('--list-metrics', action='store_true', help='List all available metrics and exit')
    analyze.add_argument('--calibration-offset', type=float, help='dB added to dBFS to give dB SPL')
    for name in ('s0', 'r0', 'f0'):
        analyze.add_argument(f"--{name}", type=float, help=f"Annoyance threshold {name.upper()}")

    dataset = verbs.add_parser('dataset', help='Build the labeled feature dataset')
    dataset.add_argument('--n', dest='n_per_class', type=int, help='Stimuli per class')
    dataset.add_argument('--seed', dest='base_seed', type=int, help='Base seed')
    dataset.add_argument('--train-fraction', type=float)
    dataset.add_argument('--duration', dest='duration_s', type=float)
    dataset.add_argument('-o', '--output', default='dataset.csv', help='Dataset CSV path')

    train = verbs.add_parser('train', help='Train a classifier on a dataset')
    train.add_argument('kind', choices=['logreg', 'lr', 'random_forest', 'rf', 'svm'])
    train.add_argument('--dataset', default='dataset.csv', help='Dataset CSV path')
    train.add_argument('-o', '--output', help='Model JSON path (default <kind>.model.json)')
    train.add_argument('--seed', type=int, help='Training seed (forest, svm)')
    train.add_argument('--trees', dest='n_trees', type=int)
    train.add_argument('--max-features', help='Features tried per split, or "all"')
    train.add_argument('--no-bootstrap', action='store_true')
    train.add_argument('--epochs', type=int)
    train.add_argument('--lambda', dest='lam', type=float)
    train.add_argument('--iterations', type=int)
    train.add_argument('--learning-rate', type=float)
    train.add_argument('--l2', type=float)

    evaluate = verbs.add_parser('eval', help='Evaluate a model on the frozen test split')
    evaluate.add_argument('--model', required=True)
    evaluate.add_argument('--dataset', default='dataset.csv')
    evaluate.add_argument('-o', '--output', default='eval.json', help='EvalReport JSON path')
    evaluate.add_argument('--confusion', default='confusion.csv', help='Confusion matrix CSV path')

    pca = verbs.add_parser('pca', help='Project a dataset on its principal components')
    pca.add_argument('--dataset', default='dataset.csv')
    pca.add_argument('-k', '--components', type=int, default=2)
    pca.add_argument('-o', '--output', default='pca_scatter.csv')

    repro = verbs.add_parser('repro', help='Regenerate all figure data')
    repro.add_argument('-o', '--output', default='repro', help='Output directory')

    return parser


def effective_settings(args: argparse.Namespace) -> Settings:
    """Defaults < config file < flags"""
    settings = load_settings(args.config)
    settings = settings.override('analysis', workers=args.workers)
    if args.command == 'synth':
        settings = settings.override('synth', duration_s=args.duration, sample_rate=args.sample_rate)
    elif args.command == 'analyze':
        settings = settings.override('analysis', calibration_offset_db=args.calibration_offset)
        settings = settings.override('thresholds', s0=args.s0, r0=args.r0, f0=args.f0)
    elif args.command == 'dataset':
        settings = settings.override('dataset', n_per_class=args.n_per_class, base_seed=args.base_seed,
                                     train_fraction=args.train_fraction, duration_s=args.duration_s)
    elif args.command == 'train':
        settings = settings.override('logreg', learning_rate=args.learning_rate,
                                     iterations=args.iterations, l2=args.l2)
        settings = settings.override('forest', n_trees=args.n_trees, training_seed=args.seed,
                                     bootstrap=False if args.no_bootstrap else None)
        settings = settings.override('svm', epochs=args.epochs, lam=args.lam, training_seed=args.seed)
        if args.max_features is not None:
            value = None if args.max_features.lower() == 'all' else int(args.max_features)
            settings = replace(settings, forest=replace(settings.forest, max_features=value))
    return settings


async def dispatch(args: argparse.Namespace, argv: List[str]) -> int:
    if args.command == 'analyze' and args.list_metrics:
        suite = MetricSuite(parse_name_list(args.metrics), parse_name_list(args.exclude_metrics), args.proxies)

        print("Available metrics:")
        print("==================")
        for metric in suite.describe():
            marker = '*' if metric['selected'] else ' '
            print(f"{marker} {metric['name']} ({metric['unit']}, {metric['variant']})")
        return EXIT_OK

    settings = effective_settings(args)
    workflow = SoundQualityWorkflow(settings, command=argv)

    if args.command == 'synth':
        overrides = {name: getattr(args, name) for name in PARAM_FLAGS if getattr(args, name) is not None}
        await workflow.synth(args.stimulus, args.seed, args.output, overrides, args.target_lufs)
    elif args.command == 'analyze':
        if not args.input:
            logger.error("analyze needs an input path or '-'")
            return EXIT_PARAMETER
        suite = MetricSuite(parse_name_list(args.metrics), parse_name_list(args.exclude_metrics), args.proxies)
        text = await workflow.analyze(args.input, args.format, suite, args.output)
        if not args.output:
            sys.stdout.write(text)
    elif args.command == 'dataset':
        await workflow.build_dataset(args.output)
    elif args.command == 'train':
        kind = canonical_kind(args.kind)
        await workflow.train(kind, args.dataset, args.output or f"{kind}.model.json")
    elif args.command == 'eval':
        await workflow.evaluate(args.model, args.dataset, args.output, args.confusion)
    elif args.command == 'pca':
        await workflow.pca(args.dataset, args.components, args.output)
    elif args.command == 'repro':
        await workflow.repro(args.output)
    return EXIT_OK


async def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if args.debug:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        return await dispatch(args, argv)
    except ArtifactMismatchError as e:
        logger.error(f"Artifact mismatch: {e}")
        return EXIT_MISMATCH
    except SoundQualityError as e:
        logger.error(f"{e}")
        return EXIT_PARAMETER
    except ValueError as e:
        logger.error(f"Invalid argument: {e}")
        return EXIT_PARAMETER
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO


def run(argv: Optional[List[str]] = None) -> int:
    return asyncio.run(main(argv))


if __name__ == "__main__":
    sys.exit(run())
