"""Boundary and pixel distance metrics built on exact Euclidean distance fields."""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from src.core.errors import EmptySetError
from src.core.geometry import BoundarySet, DistanceField, distance_field
from src.core.masks import BinaryMask, confusion_counts, check_same_shape
from src.core.values import MetricValue, Undefined, safe_ratio


@dataclass(frozen=True)
class DirectedDistanceStats:
    """
    Minimal distances from every source point to the target set

    max is the supremum-infimum distance; all values are in pixel units.
    """
    source: str
    target: str
    max: float
    mean: float
    sum: float
    count: int


def _frame(*sets: BoundarySet) -> Tuple[int, int, int, int]:
    """(x0, y0, width, height) of the smallest grid holding every point of the given sets"""
    xs = [p[0] for s in sets for p in s.points]
    ys = [p[1] for s in sets for p in s.points]
    x0, y0 = min(xs), min(ys)
    return x0, y0, max(xs) - x0 + 1, max(ys) - y0 + 1


def directed_stats(
    src: BoundarySet,
    tgt: BoundarySet,
    field: Optional[DistanceField] = None,
    source: str = 'auto',
    target: str = 'gt',
) -> DirectedDistanceStats:
    """
    Distance statistics from src points to their nearest tgt point

    Args:
        src: Non-empty source boundary
        tgt: Non-empty target boundary
        field: Distance field of tgt in src coordinates; built on demand when omitted
        source: Label of the source set in the result
        target: Label of the target set in the result

    Returns:
        DirectedDistanceStats: max, mean and sum of d_min(p, tgt) over p in src
    """
    if not src or not tgt:
        raise EmptySetError(f"Directed distance {source}->{target} needs two non-empty boundaries")
    if field is None:
        x0, y0, width, height = _frame(src, tgt)
        src, tgt = src.translated(-x0, -y0), tgt.translated(-x0, -y0)
        field = distance_field(tgt, width, height)
    xs, ys = src.coordinates()
    distances = field.sample(xs, ys)
    total = math.fsum(distances.tolist())
    return DirectedDistanceStats(
        source=source,
        target=target,
        max=float(distances.max()),
        mean=total / len(distances),
        sum=total,
        count=int(len(distances)),
    )


def _both_directions(b_auto: BoundarySet, b_gt: BoundarySet):
    if not b_auto or not b_gt:
        raise EmptySetError("Distance metrics need non-empty automatic and ground-truth boundaries")
    x0, y0, width, height = _frame(b_auto, b_gt)
    b_auto, b_gt = b_auto.translated(-x0, -y0), b_gt.translated(-x0, -y0)
    forward = directed_stats(b_auto, b_gt, distance_field(b_gt, width, height), 'auto', 'gt')
    backward = directed_stats(b_gt, b_auto, distance_field(b_auto, width, height), 'gt', 'auto')
    return forward, backward


def hausdorff(b_auto: BoundarySet, b_gt: BoundarySet) -> float:
    """Larger of the two supremum-infimum distances"""
    forward, backward = _both_directions(b_auto, b_gt)
    return max(forward.max, backward.max)


def masd(b_auto: BoundarySet, b_gt: BoundarySet) -> float:
    """Mean of the two directed mean distances"""
    forward, backward = _both_directions(b_auto, b_gt)
    return 0.5 * (forward.mean + backward.mean)


def asd(b_auto: BoundarySet, b_gt: BoundarySet) -> float:
    """Both directed distance sums over the total number of boundary points"""
    forward, backward = _both_directions(b_auto, b_gt)
    return (backward.sum + forward.sum) / (forward.count + backward.count)


def bde(b_auto: BoundarySet, b_gt: BoundarySet) -> float:
    """Mean distance from automatic boundary points to the ground-truth boundary (auto -> gt only)"""
    return directed_stats(b_auto, b_gt).mean


def nsd(auto: BinaryMask, gt: BinaryMask, b_gt: BoundarySet) -> MetricValue:
    """
    Normalized sum of distances to the ground-truth boundary

    Sum of d_min(p, B_gt) over the symmetric difference of the foregrounds, divided by the
    same sum over their union.
    """
    check_same_shape(auto, gt)
    if not b_gt:
        raise EmptySetError("NSD needs a non-empty ground-truth boundary")
    union = auto.bits | gt.bits
    if not union.any():
        raise EmptySetError("NSD needs a non-empty foreground union")
    field = distance_field(b_gt, auto.width, auto.height)
    numerator = math.fsum(field.dist[auto.bits ^ gt.bits].tolist())
    denominator = math.fsum(field.dist[union].tolist())
    return safe_ratio(numerator, denominator, "every foreground pixel lies on the ground-truth boundary")


def hamming(auto: BinaryMask, gt: BinaryMask) -> float:
    """Displaced pixels (missed plus false) over all pixels"""
    c = confusion_counts(auto, gt)
    return (c.fn + c.fp) / c.total


def boundary_hamming(b_auto: BoundarySet, b_gt: BoundarySet) -> MetricValue:
    """Boundary pixels owned by exactly one boundary, over all boundary pixels"""
    union = b_auto.points | b_gt.points
    if not union:
        return Undefined("both boundaries are empty")
    return len(b_auto.points ^ b_gt.points) / len(union)
