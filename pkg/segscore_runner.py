"""segscore command line: evaluate label maps, datasets, fixtures and perturbation sweeps."""
import argparse
import os
import sys
from typing import List, Optional, Sequence

from config import EXIT_CODES, FIXTURE_CONFIG, REPORT_CONFIG
from src.core.errors import SegScoreError, SegScoreIOError
from src.harness.dataset import load_manifest
from src.harness.evaluator import SegmentationEvaluator, resolve_selection
from src.harness.fixtures import (
    FIXTURE_NAMES, FixtureSpec, generate_fixture, named_fixture, rotated, rotation_base, rotation_series,
    translation_base,
)
from src.harness.label_io import load_label_map, save_label_map
from src.harness.report import emit_report
from src.harness.sweep import perturbation_sweep
from src.utils.logging_utils import configure_logging, get_logger

logger = get_logger(__name__)


class CommandLineError(Exception):
    """Invalid command-line arguments"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CommandLineError(message)


def _number_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from None


def _metric_selection(text: str) -> Optional[List[str]]:
    if text.strip().lower() == 'all':
        return None
    names = [item.strip() for item in text.split(',') if item.strip()]
    try:
        resolve_selection(names)
    except KeyError as e:
        raise CommandLineError(str(e).strip("'")) from None
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='segscore', description='Segmentation evaluation metrics')
    parser.add_argument('--log-level', default=None, help='Overrides LOG_LEVEL')
    commands = parser.add_subparsers(dest='command', required=True)

    def add_output_options(command):
        command.add_argument('--metrics', default='all', help="'all' or comma-separated metric names")
        command.add_argument('--format', default=REPORT_CONFIG['default_format'], choices=['json', 'csv'])
        command.add_argument('--out', default=None, help='Report path; stdout when omitted')

    evaluate = commands.add_parser('eval', help='Evaluate one prediction against its ground truths')
    evaluate.add_argument('--pred', required=True, help='Predicted label map (.png or .pgm)')
    evaluate.add_argument('--gt', required=True, help='Ground-truth label map(s), comma-separated')
    evaluate.add_argument('--id', default='image', help='Image id used in the report')
    add_output_options(evaluate)

    dataset = commands.add_parser('dataset', help='Evaluate every image of a manifest')
    dataset.add_argument('--manifest', required=True, help='JSON list of {id, pred, gts}')
    add_output_options(dataset)

    fixtures = commands.add_parser('fixtures', help='Write synthetic fixture label maps')
    fixtures.add_argument('--out', required=True, help='Output directory')
    fixtures.add_argument('--which', default='s1', choices=list(FIXTURE_NAMES) + ['rotations', 'all'])
    fixtures.add_argument('--angles', type=_number_list, default=None, help='Rotation angles in degrees')

    sweep = commands.add_parser('sweep', help='Evaluate a fixture under rotation or translation')
    sweep.add_argument('--which', required=True, choices=['rotation', 'translation'])
    sweep.add_argument('--steps', type=_number_list, default=None, help='Degrees or pixels, comma-separated')
    add_output_options(sweep)
    return parser


def _fixture_specs(which: str, angles: Optional[Sequence[float]]) -> List[FixtureSpec]:
    if which == 'rotations':
        return rotation_series(angles)
    if which == 'all':
        return [named_fixture(name) for name in FIXTURE_NAMES] + rotation_series(angles)
    spec = named_fixture(which)
    if angles:
        return [rotated(spec, angle) for angle in angles]
    return [spec]


def run_eval(args) -> int:
    selection = _metric_selection(args.metrics)
    auto = load_label_map(args.pred)
    gts = [load_label_map(path.strip()) for path in args.gt.split(',') if path.strip()]
    if not gts:
        raise CommandLineError("--gt needs at least one path")
    report = SegmentationEvaluator().evaluate_pair(auto, gts, selection, image_id=args.id)
    emit_report(report, args.format, args.out)
    return EXIT_CODES['ok']


def run_dataset(args) -> int:
    selection = _metric_selection(args.metrics)
    report = SegmentationEvaluator().evaluate_dataset(load_manifest(args.manifest), selection)
    emit_report(report, args.format, args.out)
    return EXIT_CODES['ok']


def run_fixtures(args) -> int:
    written = 0
    for spec in _fixture_specs(args.which, args.angles):
        auto, gt = generate_fixture(spec)
        save_label_map(auto, os.path.join(args.out, FIXTURE_CONFIG['auto_filename_pattern'].format(name=spec.name)))
        save_label_map(gt, os.path.join(args.out, FIXTURE_CONFIG['gt_filename_pattern'].format(name=spec.name)))
        written += 1
    logger.info("fixtures_generated", directory=args.out, fixtures=written)
    return EXIT_CODES['ok']


def run_sweep(args) -> int:
    selection = _metric_selection(args.metrics)
    if args.which == 'rotation':
        base = rotation_base()
        steps = FIXTURE_CONFIG['rotation_angles'] if args.steps is None else args.steps
    else:
        base = translation_base()
        steps = FIXTURE_CONFIG['translation_steps'] if args.steps is None else args.steps
    result = perturbation_sweep(base, args.which, steps, selection)
    emit_report(result.to_report(), args.format, args.out)
    return EXIT_CODES['ok']


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs one segscore command

    Returns:
        int: 0 on success, 1 on bad arguments, 2 on I/O errors, 3 on invalid inputs
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CommandLineError as e:
        configure_logging()
        logger.error("invalid_arguments", error=str(e))
        parser.print_usage(sys.stderr)
        return EXIT_CODES['bad_arguments']
    except SystemExit as e:
        # --help
        return EXIT_CODES['ok'] if not e.code else EXIT_CODES['bad_arguments']

    configure_logging(args.log_level)
    handler = {
        'eval': run_eval,
        'dataset': run_dataset,
        'fixtures': run_fixtures,
        'sweep': run_sweep,
    }[args.command]

    try:
        return handler(args)
    except CommandLineError as e:
        logger.error("invalid_arguments", command=args.command, error=str(e))
        return EXIT_CODES['bad_arguments']
    except SegScoreIOError as e:
        logger.error("io_error", command=args.command, error=str(e))
        return EXIT_CODES['io_error']
    except SegScoreError as e:
        logger.error("validation_error", command=args.command, error=str(e))
        return EXIT_CODES['validation_error']


if __name__ == "__main__":
    sys.exit(main())
