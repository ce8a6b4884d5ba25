"""Partition entropy metrics and refinement-consistency errors over label maps."""
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import ndimage

from config import METRIC_CONFIG
from src.core.geometry import FOUR_CONNECTED
from src.core.masks import LabelMap, ContingencyTable, contingency_table, check_same_shape, freeze_array
from src.core.values import MetricValue, Undefined


@dataclass(frozen=True)
class PartitionEntropy:
    """Marginal and joint entropies of two partitions, in units of log(base)"""
    h_a: float
    h_b: float
    h_joint: float
    base: float = 2.0


@dataclass(frozen=True, eq=False)
class LreField:
    """Per-pixel local refinement error in both directions, dist[y, x] layout"""
    forward: np.ndarray
    backward: np.ndarray


def _entropy(counts: np.ndarray, n: int, base: float) -> float:
    counts = counts[counts > 0].astype(np.float64)
    if counts.size <= 1:
        return 0.0
    p = counts / n
    return float(-np.sum(p * np.log(p)) / math.log(base))


def entropy_from_table(table: ContingencyTable, base: float = None) -> PartitionEntropy:
    base = base or METRIC_CONFIG['entropy_base']
    return PartitionEntropy(
        h_a=_entropy(table.row_sums, table.n, base),
        h_b=_entropy(table.col_sums, table.n, base),
        h_joint=_entropy(table.counts.ravel(), table.n, base),
        base=base,
    )


def partition_entropy(a: LabelMap, b: LabelMap, base: float = None) -> PartitionEntropy:
    """Entropies of each map's label distribution and of their joint distribution"""
    return entropy_from_table(contingency_table(a, b), base)


def mutual_information(a: LabelMap, b: LabelMap, base: float = None) -> float:
    h = partition_entropy(a, b, base)
    return h.h_a + h.h_b - h.h_joint


def voi(a: LabelMap, b: LabelMap, base: float = None) -> float:
    """Variation of information: Ent(a) + Ent(b) - 2 MI(a, b)"""
    h = partition_entropy(a, b, base)
    mi = h.h_a + h.h_b - h.h_joint
    return h.h_a + h.h_b - 2.0 * mi


def nmi(a: LabelMap, b: LabelMap, base: float = None) -> MetricValue:
    """MI normalized by the geometric mean of the marginal entropies"""
    h = partition_entropy(a, b, base)
    if h.h_a == 0 or h.h_b == 0:
        return Undefined("a partition has a single region (zero entropy)")
    mi = h.h_a + h.h_b - h.h_joint
    return mi / math.sqrt(h.h_a * h.h_b)


def _refinement_tables(table: ContingencyTable) -> Tuple[np.ndarray, np.ndarray]:
    """Forward and backward LRE for every (label_a, label_b) cell"""
    counts = table.counts.astype(np.float64)
    row_sums = counts.sum(axis=1, keepdims=True)
    col_sums = counts.sum(axis=0, keepdims=True)
    # |R(a,P) \ R(b,P)| = rowsum - cell
    forward = (row_sums - counts) / row_sums
    backward = (col_sums - counts) / col_sums
    return forward, backward


def lre_field(a: LabelMap, b: LabelMap) -> LreField:
    """
    Local refinement error of every pixel, both directions

    forward(P) = |R(a,P) \\ R(b,P)| / |R(a,P)| where R(m,P) is the set of pixels sharing
    P's label in m; backward swaps the maps.
    """
    check_same_shape(a, b)
    _, row_index = np.unique(a.labels.ravel(), return_inverse=True)
    _, col_index = np.unique(b.labels.ravel(), return_inverse=True)
    forward, backward = _refinement_tables(contingency_table(a, b))
    shape = a.labels.shape
    return LreField(
        forward=freeze_array(forward[row_index, col_index].reshape(shape)),
        backward=freeze_array(backward[row_index, col_index].reshape(shape)),
    )


def _weighted_sum(table: ContingencyTable, values: np.ndarray) -> float:
    # every pixel of a cell shares the same LRE, so sum per cell
    return math.fsum((table.counts * values).ravel().tolist())


def consistency_errors(a: LabelMap, b: LabelMap) -> Tuple[float, float, float]:
    """(LCE, GCE, BCE) from one contingency table"""
    table = contingency_table(a, b)
    forward, backward = _refinement_tables(table)
    n = table.n
    lce_value = _weighted_sum(table, np.minimum(forward, backward)) / n
    gce_value = min(_weighted_sum(table, forward), _weighted_sum(table, backward)) / n
    bce_value = _weighted_sum(table, np.maximum(forward, backward)) / n
    return lce_value, gce_value, bce_value


def lce(a: LabelMap, b: LabelMap) -> float:
    """Mean over pixels of the smaller of the two directed refinement errors"""
    return consistency_errors(a, b)[0]


def gce(a: LabelMap, b: LabelMap) -> float:
    """Smaller of the two directed refinement-error totals, per pixel"""
    return consistency_errors(a, b)[1]


def bce(a: LabelMap, b: LabelMap) -> float:
    """Mean over pixels of the larger of the two directed refinement errors"""
    return consistency_errors(a, b)[2]


def split_connected_regions(label_map: LabelMap) -> LabelMap:
    """Gives every 4-connected component of every label its own label"""
    out = np.zeros(label_map.labels.shape, dtype=np.int64)
    next_label = 0
    for label in label_map.label_set():
        components, count = ndimage.label(label_map.labels == label, structure=FOUR_CONNECTED)
        selected = components > 0
        out[selected] = components[selected] + next_label - 1
        next_label += count
    return LabelMap(out)
