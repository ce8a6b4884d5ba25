"""Perturbation sweeps: evaluate a fixture under growing rotation or translation."""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from typing_extensions import Literal

from src.core.errors import InputValidationError
from src.core.values import MetricValue, Undefined
from src.harness.evaluator import SegmentationEvaluator
from src.harness.fixtures import FixtureSpec, generate_fixture, rotated, translated
from src.harness.report import ImageReport, MetricReport
from src.utils.logging_utils import get_logger

logger = get_logger(__name__)

SweepKind = Literal['rotation', 'translation']

MONOTONE_UP = 'monotone-up'
MONOTONE_DOWN = 'monotone-down'
NON_MONOTONE = 'non-monotone'
CONSTANT = 'constant'
UNDEFINED = 'undefined'

_TREND_TOLERANCE = 1e-12


@dataclass
class SweepResult:
    kind: str
    steps: List[float]
    reports: List[MetricReport]
    trends: Dict[str, str]

    def values(self, metric: str) -> List[MetricValue]:
        return [report.images[0].value(metric) for report in self.reports]

    def to_report(self) -> MetricReport:
        """Single report with one image section per step, in step order"""
        images = [
            ImageReport(image_id=f"{self.kind}_{index:03d}_{step:g}", metrics=report.images[0].metrics)
            for index, (step, report) in enumerate(zip(self.steps, self.reports))
        ]
        return MetricReport(images=images, trends=dict(self.trends))


def classify_trend(values: Sequence[MetricValue], tolerance: float = _TREND_TOLERANCE) -> str:
    """
    Direction of a metric over consecutive sweep steps

    Returns:
        str: 'monotone-up' (non-decreasing), 'monotone-down' (non-increasing), 'constant',
        'non-monotone', or 'undefined' when any step has no value
    """
    if any(isinstance(value, Undefined) for value in values):
        return UNDEFINED
    diffs = [later - earlier for earlier, later in zip(values, values[1:])]
    if all(abs(d) <= tolerance for d in diffs):
        return CONSTANT
    if all(d >= -tolerance for d in diffs):
        return MONOTONE_UP
    if all(d <= tolerance for d in diffs):
        return MONOTONE_DOWN
    return NON_MONOTONE


def _check_monotone(steps: Sequence[float]) -> None:
    diffs = [b - a for a, b in zip(steps, steps[1:])]
    if not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
        raise InputValidationError(f"Sweep steps must be strictly monotone, got {list(steps)}")


def _perturb(base: FixtureSpec, kind: str, step: float) -> FixtureSpec:
    if kind == 'rotation':
        return rotated(base, step)
    return translated(base, step)


def perturbation_sweep(base: FixtureSpec, kind: SweepKind, steps: Sequence[float],
                       selection: Optional[Sequence[str]] = None,
                       evaluator: Optional[SegmentationEvaluator] = None) -> SweepResult:
    """
    Evaluates a fixture at every perturbation step

    Args:
        base: Unperturbed fixture
        kind: 'rotation' (degrees, about the automatic shape's centre) or 'translation'
              (pixels along x)
        steps: Strictly monotone perturbation amounts; empty evaluates the base once
        selection: Metric keys or symbols; None selects all
        evaluator: Evaluator to use; a default one when omitted

    Returns:
        SweepResult: one report per step and a trend per metric
    """
    if kind not in ('rotation', 'translation'):
        raise InputValidationError(f"Unknown sweep kind: {kind}")
    steps = [float(step) for step in steps]
    _check_monotone(steps)
    evaluator = evaluator or SegmentationEvaluator()

    specs = [_perturb(base, kind, step) for step in steps] if steps else [base]
    logger.info("sweep_started", kind=kind, fixture=base.name, steps=len(specs))

    reports = []
    for spec in specs:
        auto, gt = generate_fixture(spec)
        reports.append(evaluator.evaluate_pair(auto, [gt], selection, image_id=spec.name))

    metric_names = sorted(reports[0].images[0].metrics)
    trends = {
        name: classify_trend([report.images[0].value(name) for report in reports])
        for name in metric_names
    }
    logger.info("sweep_finished", kind=kind, fixture=base.name)
    return SweepResult(kind=kind, steps=steps or [0.0], reports=reports, trends=trends)
