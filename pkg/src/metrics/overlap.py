"""Set-overlap, pair-counting and pixel-error metrics."""
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

from src.core.errors import EmptySetError, InputValidationError
from src.core.masks import (
    BinaryMask, LabelMap, ContingencyTable, confusion_counts, contingency_table, check_same_shape,
)
from src.core.values import MetricValue, Undefined, safe_ratio


@dataclass(frozen=True)
class PriContext:
    """
    Ground truths of one image and, for NPR, the PRI values of the whole dataset

    Attributes:
        gt_set: K >= 1 ground-truth maps sharing the image's dimensions
        dataset_pri_values: PRI of every image of the dataset (NPR only)
    """
    gt_set: Tuple[LabelMap, ...]
    dataset_pri_values: Tuple[float, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, 'gt_set', tuple(self.gt_set))
        object.__setattr__(self, 'dataset_pri_values', tuple(float(v) for v in self.dataset_pri_values))
        if not self.gt_set:
            raise EmptySetError("PRI needs at least one ground truth")
        for gt in self.gt_set[1:]:
            check_same_shape(self.gt_set[0], gt)

    @property
    def k(self) -> int:
        return len(self.gt_set)

    @property
    def expected_pri(self) -> float:
        """EV: mean of the dataset PRI values"""
        if not self.dataset_pri_values:
            raise EmptySetError("Dataset PRI values are empty")
        return math.fsum(self.dataset_pri_values) / len(self.dataset_pri_values)

    @property
    def max_pri(self) -> float:
        if not self.dataset_pri_values:
            raise EmptySetError("Dataset PRI values are empty")
        return max(self.dataset_pri_values)


def _sizes(auto: BinaryMask, gt: BinaryMask) -> Tuple[int, int, int]:
    """(|auto ∩ gt|, |auto|, |gt|) over foregrounds"""
    c = confusion_counts(auto, gt)
    return c.tp, c.tp + c.fp, c.tp + c.fn


def jaccard(auto: BinaryMask, gt: BinaryMask) -> float:
    """|A ∩ G| / |A ∪ G|; 1 when both foregrounds are empty"""
    inter, a, g = _sizes(auto, gt)
    union = a + g - inter
    return 1.0 if union == 0 else inter / union


def dice(auto: BinaryMask, gt: BinaryMask) -> float:
    """2|A ∩ G| / (|A| + |G|); 1 when both foregrounds are empty"""
    inter, a, g = _sizes(auto, gt)
    return 1.0 if a + g == 0 else 2 * inter / (a + g)


def xor_set(auto: BinaryMask, gt: BinaryMask) -> MetricValue:
    """(|A ∪ G| - |A ∩ G|) / |G|"""
    inter, a, g = _sizes(auto, gt)
    union = a + g - inter
    return safe_ratio(union - inter, g, "ground-truth foreground is empty")


def fmi(auto: BinaryMask, gt: BinaryMask) -> MetricValue:
    """|A ∩ G| / sqrt(|A| |G|)"""
    inter, a, g = _sizes(auto, gt)
    if a == 0 or g == 0:
        return Undefined("a foreground is empty")
    return inter / math.sqrt(a * g)


def _pairs(values) -> int:
    # sum of C(v, 2), exact in integers
    values = np.asarray(values, dtype=np.int64)
    return int(np.sum(values * (values - 1) // 2))


def rand_index_from_table(table: ContingencyTable) -> float:
    n = table.n
    if n < 2:
        raise InputValidationError("Rand index needs at least 2 pixels")
    total_pairs = n * (n - 1) // 2
    same_a = _pairs(table.row_sums)
    same_b = _pairs(table.col_sums)
    same_both = _pairs(table.counts.ravel())
    # pairs together in both plus pairs apart in both
    agreements = total_pairs - same_a - same_b + 2 * same_both
    return agreements / total_pairs


def rand_index(a: LabelMap, b: LabelMap) -> float:
    """
    Fraction of pixel pairs on which two partitions agree

    Closed form over the contingency table, O(pixels + labels^2).
    """
    return rand_index_from_table(contingency_table(a, b))


def pri(auto: LabelMap, ctx: PriContext) -> float:
    """Mean Rand index of a segmentation against K ground truths"""
    values = [rand_index(auto, gt) for gt in ctx.gt_set]
    return math.fsum(values) / len(values)


def _normalized_pri(pri_value: float, dataset_pri_values: Sequence[float]) -> MetricValue:
    if not dataset_pri_values:
        raise EmptySetError("Dataset PRI values are empty")
    ev = math.fsum(dataset_pri_values) / len(dataset_pri_values)
    return safe_ratio(
        pri_value - ev, max(dataset_pri_values) - ev,
        "degenerate dataset: maximum PRI equals expected PRI",
    )


def npr(pri_value: float, ctx: PriContext) -> MetricValue:
    """(PRI - EV) / (MaxPR - EV) with EV the dataset mean PRI"""
    return _normalized_pri(pri_value, ctx.dataset_pri_values)


def npr_for_dataset(pri_by_image: Mapping[str, float]) -> Tuple[Dict[str, MetricValue], float, float]:
    """
    Normalizes every image's PRI against the dataset

    Args:
        pri_by_image: PRI value per image id

    Returns:
        Tuple of (NPR per image id, EV, MaxPR)
    """
    ids = sorted(pri_by_image)
    values = [pri_by_image[image_id] for image_id in ids]
    if not values:
        raise EmptySetError("Dataset is empty")
    ev = math.fsum(values) / len(values)
    return {image_id: _normalized_pri(pri_by_image[image_id], values) for image_id in ids}, ev, max(values)


def mce(auto: BinaryMask, gt: BinaryMask) -> float:
    """1 - (|A_b ∩ G_b| + |G_f ∩ A_f|) / (|A_b| + |A_f|)"""
    c = confusion_counts(auto, gt)
    return 1.0 - (c.tn + c.tp) / c.total


def error_rate(auto: BinaryMask, gt: BinaryMask) -> float:
    """(false + missed pixels) / ground-truth image pixels, in percent"""
    c = confusion_counts(auto, gt)
    return (c.fp + c.fn) / gt.size * 100.0
