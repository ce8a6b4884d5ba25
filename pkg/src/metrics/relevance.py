"""Confusion-matrix ("relevance") metrics."""
from dataclasses import dataclass
from typing import Dict, Optional

from config import METRIC_CONFIG
from src.core.errors import InputValidationError
from src.core.masks import LabelMap, BinaryMask, ConfusionCounts, confusion_counts
from src.core.values import MetricValue, Undefined, complement, safe_ratio


@dataclass(frozen=True)
class RelevanceReport:
    tnr: MetricValue
    tpr: MetricValue
    plr: MetricValue
    nlr: MetricValue
    fpr: MetricValue
    fnr: MetricValue
    precision: MetricValue
    f_measure: MetricValue
    f1_conventional: MetricValue
    xor: MetricValue
    accuracy: MetricValue
    error_probability: MetricValue
    volumetric_distance: MetricValue
    volumetric_similarity: MetricValue
    auc: MetricValue

    def as_dict(self) -> Dict[str, MetricValue]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


def _divide(numerator: MetricValue, denominator: MetricValue, reason: str) -> MetricValue:
    if isinstance(numerator, Undefined):
        return numerator
    if isinstance(denominator, Undefined):
        return denominator
    return safe_ratio(numerator, denominator, reason)


def relevance_report(c: ConfusionCounts) -> RelevanceReport:
    """
    Computes every confusion-matrix metric from binary counts

    F-measure follows P*R/(P+R) without the factor 2; the conventional 2PR/(P+R) is
    reported separately as f1_conventional.

    Args:
        c: Confusion counts with a positive total

    Returns:
        RelevanceReport: one value or Undefined marker per metric
    """
    if c.total <= 0:
        raise InputValidationError("Confusion counts cover zero pixels")

    tnr = safe_ratio(c.tn, c.tn + c.fp, "no ground-truth background pixels (TN + FP = 0)")
    tpr = safe_ratio(c.tp, c.tp + c.fn, "no ground-truth foreground pixels (TP + FN = 0)")
    fpr = safe_ratio(c.fp, c.fp + c.tn, "no ground-truth background pixels (FP + TN = 0)")
    fnr = safe_ratio(c.fn, c.fn + c.tp, "no ground-truth foreground pixels (FN + TP = 0)")
    precision = safe_ratio(c.tp, c.tp + c.fp, "no automatic foreground pixels (TP + FP = 0)")

    plr = _divide(tpr, complement(tnr), "specificity is 1 (1 - TNR = 0)")
    nlr = _divide(complement(tpr), tnr, "specificity is 0 (TNR = 0)")

    if isinstance(precision, Undefined) or isinstance(tpr, Undefined):
        f_measure = f1 = precision if isinstance(precision, Undefined) else tpr
    else:
        f_measure = safe_ratio(precision * tpr, precision + tpr, "precision and recall are both 0")
        f1 = safe_ratio(2 * precision * tpr, precision + tpr, "precision and recall are both 0")

    xor = safe_ratio(c.fp + c.fn, c.tp + c.fn, "no ground-truth foreground pixels (TP + FN = 0)")
    accuracy = safe_ratio(c.tp + c.tn, c.total, "no pixels")
    vd = safe_ratio(abs(c.fn - c.fp), 2 * c.tp + c.fn + c.fp, "both foregrounds are empty")

    if isinstance(fpr, Undefined) or isinstance(fnr, Undefined):
        auc = fpr if isinstance(fpr, Undefined) else fnr
    else:
        auc = 1.0 - (fpr + fnr) / 2.0

    return RelevanceReport(
        tnr=tnr,
        tpr=tpr,
        plr=plr,
        nlr=nlr,
        fpr=fpr,
        fnr=fnr,
        precision=precision,
        f_measure=f_measure,
        f1_conventional=f1,
        xor=xor,
        accuracy=accuracy,
        error_probability=complement(accuracy),
        volumetric_distance=vd,
        volumetric_similarity=complement(vd),
        auc=auc,
    )


def vd_identity_check(auto_fg_size: int, gt_fg_size: int, c: ConfusionCounts,
                      tolerance: Optional[float] = None) -> bool:
    """
    Checks that VD from the counts equals ||S_gt| - |S_auto|| / (|S_gt| + |S_auto|)

    Both sides are 0 by convention when both foregrounds are empty. The tolerance defaults to
    METRIC_CONFIG['identity_tolerance'].
    """
    if tolerance is None:
        tolerance = METRIC_CONFIG['identity_tolerance']
    total = gt_fg_size + auto_fg_size
    by_sizes = abs(gt_fg_size - auto_fg_size) / total if total else 0.0
    by_counts = relevance_report(c).volumetric_distance
    if isinstance(by_counts, Undefined):
        return total == 0
    return abs(by_counts - by_sizes) <= tolerance


def per_class_reports(auto: LabelMap, gt: LabelMap) -> Dict[int, RelevanceReport]:
    """One-vs-rest relevance reports for every label present in either map"""
    labels = sorted(set(auto.label_set()) | set(gt.label_set()))
    reports = {}
    for label in labels:
        reports[label] = relevance_report(confusion_counts(_one_vs_rest(auto, label), _one_vs_rest(gt, label)))
    return reports


def _one_vs_rest(label_map: LabelMap, label: int) -> BinaryMask:
    # absent labels give an empty foreground rather than an error
    return BinaryMask(label_map.labels == label)
