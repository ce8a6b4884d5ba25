import math
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config import EVALUATION_CONFIG, METRIC_CONFIG
from src.core.errors import EmptySetError, InputValidationError, SegScoreError
from src.core.geometry import BoundarySet, extract_boundary
from src.core.masks import BinaryMask, LabelMap, ConfusionCounts, binarize, check_same_shape, confusion_counts
from src.core.values import MetricValue, Undefined, is_defined
from src.harness.dataset import Dataset, DatasetEntry
from src.harness.report import AggregateEntry, ImageReport, MetricEntry, MetricReport
from src.metrics.catalog import METRIC_KEYS, metric_info, polarity_of
from src.metrics.distance import asd, bde, boundary_hamming, hamming, hausdorff, masd, nsd
from src.metrics.information import (
    consistency_errors, mutual_information, nmi, split_connected_regions, voi,
)
from src.metrics.overlap import (
    PriContext, dice, error_rate, fmi, jaccard, mce, npr_for_dataset, pri, rand_index,
)
from src.metrics.relevance import RelevanceReport, relevance_report
from src.utils.logging_utils import get_logger

logger = get_logger(__name__)

DATASET_ONLY = frozenset({'npr'})
MULTI_GT = frozenset({'pri'})


class PairView:
    """Lazily derived views of one (auto, gt) pair, shared by every metric of the pair"""

    def __init__(self, auto: LabelMap, gt: LabelMap, split_regions: bool = False):
        check_same_shape(auto, gt)
        self.auto = auto
        self.gt = gt
        self.split_regions = split_regions

    @cached_property
    def auto_mask(self) -> BinaryMask:
        return binarize(self.auto, METRIC_CONFIG['foreground_selector'])

    @cached_property
    def gt_mask(self) -> BinaryMask:
        return binarize(self.gt, METRIC_CONFIG['foreground_selector'])

    @cached_property
    def counts(self) -> ConfusionCounts:
        return confusion_counts(self.auto_mask, self.gt_mask)

    @cached_property
    def relevance(self) -> RelevanceReport:
        return relevance_report(self.counts)

    @cached_property
    def auto_boundary(self) -> BoundarySet:
        return extract_boundary(self.auto_mask)

    @cached_property
    def gt_boundary(self) -> BoundarySet:
        return extract_boundary(self.gt_mask)

    @cached_property
    def partitions(self) -> Tuple[LabelMap, LabelMap]:
        """The pair as seen by information and consistency metrics"""
        if self.split_regions:
            return split_connected_regions(self.auto), split_connected_regions(self.gt)
        return self.auto, self.gt

    @cached_property
    def consistency(self) -> Tuple[float, float, float]:
        return consistency_errors(*self.partitions)


PairMetric = Callable[[PairView], MetricValue]


def _relevance_metric(name: str) -> PairMetric:
    return lambda view: getattr(view.relevance, name)


PAIR_METRICS: Dict[str, PairMetric] = {
    **{name: _relevance_metric(name) for name in RelevanceReport.__dataclass_fields__},
    'jaccard': lambda v: jaccard(v.auto_mask, v.gt_mask),
    'dice': lambda v: dice(v.auto_mask, v.gt_mask),
    'fmi': lambda v: fmi(v.auto_mask, v.gt_mask),
    'rand_index': lambda v: rand_index(v.auto, v.gt),
    'mce': lambda v: mce(v.auto_mask, v.gt_mask),
    'error_rate': lambda v: error_rate(v.auto_mask, v.gt_mask),
    'lce': lambda v: v.consistency[0],
    'gce': lambda v: v.consistency[1],
    'bce': lambda v: v.consistency[2],
    'mutual_information': lambda v: mutual_information(*v.partitions),
    'voi': lambda v: voi(*v.partitions),
    'nmi': lambda v: nmi(*v.partitions),
    'hausdorff': lambda v: hausdorff(v.auto_boundary, v.gt_boundary),
    'masd': lambda v: masd(v.auto_boundary, v.gt_boundary),
    'asd': lambda v: asd(v.auto_boundary, v.gt_boundary),
    'nsd': lambda v: nsd(v.auto_mask, v.gt_mask, v.gt_boundary),
    'bde': lambda v: bde(v.auto_boundary, v.gt_boundary),
    'hamming': lambda v: hamming(v.auto_mask, v.gt_mask),
    'boundary_hamming': lambda v: boundary_hamming(v.auto_boundary, v.gt_boundary),
}


def resolve_selection(selection: Optional[Sequence[str]]) -> List[str]:
    """
    Canonical report keys for a metric selection

    Args:
        selection: Metric keys or symbols; None selects every metric

    Returns:
        List[str]: keys in catalog order, without duplicates

    Raises:
        KeyError: a name is not in the metric catalog
    """
    if selection is None:
        return list(METRIC_KEYS)
    wanted = {metric_info(name).key for name in selection}
    return [key for key in METRIC_KEYS if key in wanted]


class SegmentationEvaluator:
    """Evaluates predictions against ground truths with any selection of metrics"""

    def __init__(self, threads: Optional[int] = None, report_per_gt: Optional[bool] = None,
                 split_regions: Optional[bool] = None):
        """
        Args:
            threads: Worker threads for dataset evaluation; None uses EVALUATION_CONFIG
            report_per_gt: Whether single-GT metrics also list their value against every gt
            split_regions: Whether information metrics see connected components as regions
        """
        self.threads = threads if threads is not None else EVALUATION_CONFIG['threads']
        if self.threads is not None and self.threads < 1:
            raise InputValidationError(
                f"Worker thread count must be at least 1, got {self.threads} (check SEGSCORE_THREADS)"
            )
        self.report_per_gt = (
            EVALUATION_CONFIG['report_per_gt'] if report_per_gt is None else report_per_gt
        )
        self.split_regions = (
            METRIC_CONFIG['split_connected_regions'] if split_regions is None else split_regions
        )

    def _compute(self, name: str, metric: Callable[[], MetricValue], image_id: str) -> MetricValue:
        try:
            value = metric()
        except SegScoreError as e:
            value = Undefined(str(e))
        if isinstance(value, Undefined):
            logger.warning("metric_undefined", image_id=image_id, metric=name, reason=value.reason)
            return value
        value = float(value)
        logger.debug("metric_computed", image_id=image_id, metric=name, value=value)
        return value

    def evaluate_image(self, image_id: str, auto: LabelMap, gts: Sequence[LabelMap],
                       selection: Optional[Sequence[str]] = None) -> ImageReport:
        """
        Computes the selected metrics of one prediction

        Single-GT metrics use gts[0] and, when K > 1, also carry one value per gt. PRI uses
        every gt. NPR needs dataset context and is skipped.
        """
        gts = tuple(gts)
        if not gts:
            raise EmptySetError(f"Image '{image_id}' has no ground truth")
        for gt in gts:
            check_same_shape(auto, gt)

        views = [PairView(auto, gt, self.split_regions) for gt in gts]
        metrics: Dict[str, MetricEntry] = {}
        for name in resolve_selection(selection):
            if name in DATASET_ONLY:
                continue
            if name in MULTI_GT:
                value = self._compute(name, lambda: pri(auto, PriContext(gt_set=gts)), image_id)
                metrics[name] = MetricEntry(name, value, polarity_of(name))
                continue

            metric = PAIR_METRICS[name]
            value = self._compute(name, lambda: metric(views[0]), image_id)
            per_gt: Tuple[MetricValue, ...] = ()
            if self.report_per_gt and len(views) > 1:
                per_gt = (value,) + tuple(
                    self._compute(name, lambda view=view: metric(view), image_id) for view in views[1:]
                )
            metrics[name] = MetricEntry(name, value, polarity_of(name), per_gt)
        return ImageReport(image_id=image_id, metrics=metrics)

    def evaluate_pair(self, auto: LabelMap, gts: Sequence[LabelMap],
                      selection: Optional[Sequence[str]] = None, image_id: str = 'image') -> MetricReport:
        """
        Evaluates one prediction against K >= 1 ground truths

        Args:
            auto: Automatic segmentation
            gts: Ground truths sharing the prediction's dimensions
            selection: Metric keys or symbols; None selects all, an empty list none
            image_id: Id of the image section

        Returns:
            MetricReport: a single image section and no aggregates
        """
        logger.info("evaluation_started", image_id=image_id, ground_truths=len(gts))
        image = self.evaluate_image(image_id, auto, gts, selection)
        logger.info("evaluation_finished", image_id=image_id, metrics=len(image.metrics))
        return MetricReport(images=[image])

    def _evaluate_entry(self, entry: DatasetEntry, keys: List[str]) -> ImageReport:
        return self.evaluate_image(entry.image_id, entry.prediction, entry.ground_truths, keys)

    def evaluate_dataset(self, dataset: Dataset, selection: Optional[Sequence[str]] = None) -> MetricReport:
        """
        Evaluates every image of a dataset and aggregates the results

        Images are evaluated concurrently and merged by image id. When NPR is selected, each
        image's PRI is normalized by the dataset mean (EV) and maximum of PRI.

        Args:
            dataset: Non-empty dataset
            selection: Metric keys or symbols; None selects all

        Returns:
            MetricReport: per-image sections, per-metric means and the NPR anchors
        """
        if not dataset.entries:
            raise EmptySetError("Dataset is empty")
        keys = resolve_selection(selection)
        needs_pri = 'npr' in keys
        image_keys = [key for key in keys if key not in DATASET_ONLY]
        if needs_pri and 'pri' not in image_keys:
            image_keys.append('pri')

        logger.info("dataset_evaluation_started", images=len(dataset), metrics=len(keys), threads=self.threads)
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            images = list(executor.map(lambda entry: self._evaluate_entry(entry, image_keys), dataset.entries))
        images.sort(key=lambda image: image.image_id)

        normalization = None
        if needs_pri:
            images, normalization = self._normalize_pri(images, keep_pri='pri' in keys)

        report = MetricReport(
            images=images,
            aggregates=self._aggregate(images, keys),
            normalization=normalization,
        )
        logger.info("dataset_evaluation_finished", images=len(images))
        return report

    def _normalize_pri(self, images: List[ImageReport], keep_pri: bool
                       ) -> Tuple[List[ImageReport], Dict[str, MetricValue]]:
        pri_values = {
            image.image_id: image.value('pri') for image in images if is_defined(image.value('pri'))
        }
        if pri_values:
            npr_values, ev, max_pri = npr_for_dataset(pri_values)
            normalization: Dict[str, MetricValue] = {'ev': ev, 'max_pri': max_pri}
        else:
            npr_values = {}
            normalization = {'ev': Undefined("no defined PRI"), 'max_pri': Undefined("no defined PRI")}

        normalized = []
        for image in images:
            metrics = dict(image.metrics)
            if not keep_pri:
                del metrics['pri']
            value = npr_values.get(image.image_id, Undefined("PRI undefined for this image"))
            if isinstance(value, Undefined):
                logger.warning("metric_undefined", image_id=image.image_id, metric='npr', reason=value.reason)
            metrics['npr'] = MetricEntry('npr', value, polarity_of('npr'))
            normalized.append(ImageReport(image_id=image.image_id, metrics=metrics))
        return normalized, normalization

    @staticmethod
    def _aggregate(images: List[ImageReport], keys: List[str]) -> Dict[str, AggregateEntry]:
        aggregates = {}
        for name in keys:
            values = [image.value(name) for image in images if name in image.metrics]
            defined = [value for value in values if is_defined(value)]
            mean: MetricValue = (
                math.fsum(defined) / len(defined) if defined else Undefined("undefined for every image")
            )
            aggregates[name] = AggregateEntry(name, mean, polarity_of(name), len(defined))
        return aggregates


def evaluate_pair(auto: LabelMap, gts: Sequence[LabelMap], selection: Optional[Sequence[str]] = None,
                  image_id: str = 'image') -> MetricReport:
    return SegmentationEvaluator().evaluate_pair(auto, gts, selection, image_id)


def evaluate_dataset(dataset: Dataset, selection: Optional[Sequence[str]] = None) -> MetricReport:
    return SegmentationEvaluator().evaluate_dataset(dataset, selection)
