import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from config import METRIC_CONFIG, REPORT_CONFIG
from src.core.errors import SegScoreIOError, InputValidationError
from src.core.values import MetricValue, Undefined
from src.utils.logging_utils import get_logger

logger = get_logger(__name__)

AGGREGATE_ROW_ID = '__dataset__'


@dataclass(frozen=True)
class MetricEntry:
    """One metric result: its value or Undefined marker, its polarity and optional per-GT values"""
    name: str
    value: MetricValue
    polarity: str
    per_gt: Tuple[MetricValue, ...] = ()

    @property
    def reason(self) -> Optional[str]:
        return self.value.reason if isinstance(self.value, Undefined) else None


@dataclass(frozen=True)
class AggregateEntry:
    """Dataset mean of a metric over the images where it is defined"""
    name: str
    value: MetricValue
    polarity: str
    count: int


@dataclass(frozen=True)
class ImageReport:
    image_id: str
    metrics: Dict[str, MetricEntry] = field(default_factory=dict)

    def value(self, name: str) -> MetricValue:
        return self.metrics[name].value


@dataclass
class MetricReport:
    """
    Evaluation results of one or more images

    Attributes:
        images: Per-image sections, sorted by image id
        aggregates: Dataset means per metric (dataset reports only)
        normalization: NPR anchors {'ev', 'max_pri'} (dataset reports with PRI only)
        trends: Per-metric trend over a perturbation sweep (sweep reports only)
        parameters: Metric parameters the values were computed with
    """
    images: List[ImageReport] = field(default_factory=list)
    aggregates: Dict[str, AggregateEntry] = field(default_factory=dict)
    normalization: Optional[Dict[str, MetricValue]] = None
    trends: Optional[Dict[str, str]] = None
    parameters: Dict[str, Any] = field(default_factory=lambda: report_parameters())

    def image(self, image_id: str) -> ImageReport:
        for image in self.images:
            if image.image_id == image_id:
                return image
        raise KeyError(f"No image '{image_id}' in report")

    @property
    def is_empty(self) -> bool:
        return all(not image.metrics for image in self.images) and not self.aggregates


def report_parameters() -> Dict[str, Any]:
    return {
        'entropy_base': METRIC_CONFIG['entropy_base'],
        'boundary_connectivity': METRIC_CONFIG['boundary_connectivity'],
        'f_convention': METRIC_CONFIG['f_convention'],
    }


def format_number(value: float) -> float:
    """Rounds to the configured number of significant digits"""
    return float(f"{value:.{REPORT_CONFIG['significant_digits']}g}")


def _render_value(value: MetricValue) -> Tuple[Optional[float], Optional[str]]:
    if isinstance(value, Undefined):
        return None, value.reason
    if not math.isfinite(value):
        return None, "non-finite value"
    return format_number(value), None


def _entry_dict(value: MetricValue, polarity: str) -> Dict[str, Any]:
    rendered, reason = _render_value(value)
    entry = {'value': rendered, 'polarity': polarity}
    if reason is not None:
        entry['reason'] = reason
    return entry


def report_to_dict(report: MetricReport) -> Dict[str, Any]:
    """Plain-data form of a report, following the JSON report schema"""
    images = []
    for image in sorted(report.images, key=lambda item: item.image_id):
        metrics = {}
        for name in sorted(image.metrics):
            entry = image.metrics[name]
            data = _entry_dict(entry.value, entry.polarity)
            if entry.per_gt:
                rendered = [_render_value(value) for value in entry.per_gt]
                data['per_gt'] = [value for value, _ in rendered]
                # parallel to per_gt, present only when some ground truth left the metric undefined
                if any(reason is not None for _, reason in rendered):
                    data['per_gt_reasons'] = [reason for _, reason in rendered]
            metrics[name] = data
        images.append({'id': image.image_id, 'metrics': metrics})

    aggregates = {}
    for name in sorted(report.aggregates):
        aggregate = report.aggregates[name]
        data = _entry_dict(aggregate.value, aggregate.polarity)
        data['count'] = aggregate.count
        aggregates[name] = data

    result = {
        'schema_version': REPORT_CONFIG['schema_version'],
        'parameters': dict(report.parameters),
        'images': images,
        'aggregates': aggregates,
    }
    if report.normalization is not None:
        result['normalization'] = {
            key: _render_value(value)[0] for key, value in sorted(report.normalization.items())
        }
    if report.trends is not None:
        result['trends'] = dict(sorted(report.trends.items()))
    return result


def _render_json(report: MetricReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True, allow_nan=False) + '\n'


def _render_csv(report: MetricReport) -> str:
    rows = []
    for image in report.images:
        for name, entry in image.metrics.items():
            rows.append((image.image_id, name, entry.value, entry.polarity))
    for name, aggregate in report.aggregates.items():
        rows.append((AGGREGATE_ROW_ID, name, aggregate.value, aggregate.polarity))
    rows.sort(key=lambda row: (row[0], row[1]))

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(REPORT_CONFIG['csv_columns'])
    for image_id, name, value, polarity in rows:
        rendered, reason = _render_value(value)
        writer.writerow([
            image_id,
            name,
            '' if rendered is None else f"{rendered:.{REPORT_CONFIG['significant_digits']}g}",
            polarity,
            reason or '',
        ])
    return buffer.getvalue()


def render_report(report: MetricReport, fmt: str = None) -> str:
    fmt = (fmt or REPORT_CONFIG['default_format']).lower()
    renderer = {
        'json': _render_json,
        'csv': _render_csv,
    }.get(fmt)
    if renderer is None:
        raise InputValidationError(f"Unsupported report format: {fmt}")
    return renderer(report)


def emit_report(report: MetricReport, fmt: str = None, destination: Optional[str] = None) -> str:
    """
    Writes a report as JSON or CSV

    Args:
        report: Report to write
        fmt: 'json' or 'csv'
        destination: Output path; None or '-' writes to stdout

    Returns:
        str: The rendered report text
    """
    text = render_report(report, fmt)
    if destination in (None, '-'):
        sys.stdout.write(text)
        sys.stdout.flush()
        return text

    try:
        os.makedirs(os.path.dirname(os.path.abspath(destination)), exist_ok=True)
        with open(destination, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as e:
        raise SegScoreIOError(f"Failed to write report to {destination}: {str(e)}") from e

    logger.info("report_written", path=destination, format=fmt or REPORT_CONFIG['default_format'])
    return text
