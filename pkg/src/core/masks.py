"""Label maps, binary masks and the pixel-count tables derived from comparing them."""
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple, Union

import numpy as np
from typing_extensions import Literal, TypeAlias

from src.core.errors import DimensionMismatchError, InvalidLabelMapError, UnknownLabelError

ANY_NONZERO = 'any-nonzero'

Selector: TypeAlias = Union[int, Literal['any-nonzero']]


def freeze_array(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class LabelMap:
    """
    A height x width grid of non-negative integer region labels, row-major

    Label 0 is background in binary interpretations. Pixel (x, y) is labels[y, x].
    """
    labels: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels)
        if labels.ndim != 2 or labels.size == 0:
            raise InvalidLabelMapError(f"Label map must be a non-empty 2-D grid, got shape {labels.shape}")
        if labels.dtype.kind not in 'iub':
            raise InvalidLabelMapError(f"Label map must hold integers, got dtype {labels.dtype}")
        if labels.dtype.kind == 'i' and labels.min() < 0:
            raise InvalidLabelMapError("Label map contains negative labels")
        object.__setattr__(self, 'labels', freeze_array(labels.astype(np.int64)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> 'LabelMap':
        return cls(np.array(rows, dtype=np.int64))

    @property
    def width(self) -> int:
        return int(self.labels.shape[1])

    @property
    def height(self) -> int:
        return int(self.labels.shape[0])

    @property
    def shape(self) -> Tuple[int, int]:
        """(width, height)"""
        return self.width, self.height

    @property
    def size(self) -> int:
        return int(self.labels.size)

    def label_set(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in np.unique(self.labels))

    def histogram(self) -> Dict[int, int]:
        values, counts = np.unique(self.labels, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def relabel(self, mapping: Dict[int, int]) -> 'LabelMap':
        """Applies a label-to-label mapping; labels missing from the mapping are kept"""
        lookup = {int(v): int(mapping.get(int(v), v)) for v in np.unique(self.labels)}
        keys = np.array(sorted(lookup))
        values = np.array([lookup[k] for k in keys])
        return LabelMap(values[np.searchsorted(keys, self.labels)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelMap):
            return NotImplemented
        return self.labels.shape == other.labels.shape and bool(np.array_equal(self.labels, other.labels))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BinaryMask:
    """Foreground/background grid; bits[y, x] is True for foreground pixels"""
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2 or bits.size == 0:
            raise InvalidLabelMapError(f"Mask must be a non-empty 2-D grid, got shape {bits.shape}")
        object.__setattr__(self, 'bits', freeze_array(bits.astype(bool)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> 'BinaryMask':
        return cls(np.array(rows, dtype=bool))

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def shape(self) -> Tuple[int, int]:
        """(width, height)"""
        return self.width, self.height

    @property
    def size(self) -> int:
        return int(self.bits.size)

    @property
    def foreground_count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def complement(self) -> 'BinaryMask':
        return BinaryMask(~self.bits)

    def to_label_map(self) -> LabelMap:
        return LabelMap(self.bits.astype(np.int64))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return bool(np.array_equal(self.bits, other.bits))

    __hash__ = None


@dataclass(frozen=True)
class ConfusionCounts:
    """Binary comparison tallies: auto foreground vs ground-truth foreground"""
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise InvalidLabelMapError(f"Confusion counts must be non-negative: {self}")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def auto_foreground(self) -> int:
        return self.tp + self.fp

    @property
    def gt_foreground(self) -> int:
        return self.tp + self.fn

    def swapped(self) -> 'ConfusionCounts':
        """Counts with the roles of auto and ground truth exchanged"""
        return ConfusionCounts(tp=self.tp, fp=self.fn, tn=self.tn, fn=self.fp)


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """
    Label co-occurrence counts between two maps

    counts[i, j] is the number of pixels labelled row_labels[i] in the first map and
    col_labels[j] in the second. Labels are remapped to dense indices in ascending order.
    """
    row_labels: Tuple[int, ...]
    col_labels: Tuple[int, ...]
    counts: np.ndarray
    n: int

    @property
    def rows(self) -> int:
        return len(self.row_labels)

    @property
    def cols(self) -> int:
        return len(self.col_labels)

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    def cell(self, row_label: int, col_label: int) -> int:
        if row_label not in self.row_labels or col_label not in self.col_labels:
            return 0
        return int(self.counts[self.row_labels.index(row_label), self.col_labels.index(col_label)])


def check_same_shape(first, second) -> None:
    if first.shape != second.shape:
        raise DimensionMismatchError(first.shape, second.shape)


def binarize(label_map: LabelMap, selector: Selector = ANY_NONZERO) -> BinaryMask:
    """
    Selects a foreground from a label map

    Args:
        label_map: Map to binarize
        selector: A label id, or 'any-nonzero' for every label other than 0

    Returns:
        BinaryMask: True where the pixel label matches the selector
    """
    if selector == ANY_NONZERO:
        return BinaryMask(label_map.labels != 0)
    if isinstance(selector, str):
        raise UnknownLabelError(selector)
    label = int(selector)
    if not np.any(label_map.labels == label):
        raise UnknownLabelError(label)
    return BinaryMask(label_map.labels == label)


def confusion_counts(auto: BinaryMask, gt: BinaryMask) -> ConfusionCounts:
    """Counts TP/FP/TN/FN of an automatic mask against a ground-truth mask"""
    check_same_shape(auto, gt)
    a, g = auto.bits, gt.bits
    tp = int(np.count_nonzero(a & g))
    fp = int(np.count_nonzero(a & ~g))
    fn = int(np.count_nonzero(~a & g))
    tn = auto.size - tp - fp - fn
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def contingency_table(a: LabelMap, b: LabelMap) -> ContingencyTable:
    """Builds the label co-occurrence table of two equally sized maps"""
    check_same_shape(a, b)
    row_labels, row_index = np.unique(a.labels.ravel(), return_inverse=True)
    col_labels, col_index = np.unique(b.labels.ravel(), return_inverse=True)
    n_rows, n_cols = len(row_labels), len(col_labels)
    counts = np.bincount(row_index * n_cols + col_index, minlength=n_rows * n_cols)
    return ContingencyTable(
        row_labels=tuple(int(v) for v in row_labels),
        col_labels=tuple(int(v) for v in col_labels),
        counts=freeze_array(counts.reshape(n_rows, n_cols).astype(np.int64)),
        n=a.size,
    )
