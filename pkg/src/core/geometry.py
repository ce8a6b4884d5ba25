"""Boundary extraction and exact Euclidean distance fields."""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

import numpy as np
from scipy import ndimage

from src.core.errors import EmptySetError, InvalidLabelMapError
from src.core.masks import BinaryMask, freeze_array

Point = Tuple[int, int]

# 4-connectivity
FOUR_CONNECTED = ndimage.generate_binary_structure(2, 1)


@dataclass(frozen=True)
class BoundarySet:
    """Pixel coordinates (x, y) lying on a region's inner boundary"""
    points: FrozenSet[Point]

    @classmethod
    def of(cls, points: Iterable[Point]) -> 'BoundarySet':
        return cls(frozenset((int(x), int(y)) for x, y in points))

    def __len__(self) -> int:
        return len(self.points)

    def __bool__(self) -> bool:
        return bool(self.points)

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Sorted (xs, ys) arrays of the points"""
        ordered = sorted(self.points)
        xs = np.array([p[0] for p in ordered], dtype=np.int64)
        ys = np.array([p[1] for p in ordered], dtype=np.int64)
        return xs, ys

    def translated(self, dx: int, dy: int) -> 'BoundarySet':
        return BoundarySet.of((x + dx, y + dy) for x, y in self.points)

    def transposed(self) -> 'BoundarySet':
        return BoundarySet.of((y, x) for x, y in self.points)


@dataclass(frozen=True, eq=False)
class DistanceField:
    """dist[y, x] is the Euclidean distance from pixel (x, y) to the nearest site"""
    width: int
    height: int
    dist: np.ndarray

    def sample(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        return self.dist[ys, xs]


def extract_boundary(mask: BinaryMask) -> BoundarySet:
    """
    Extracts the inner boundary of a mask

    A foreground pixel is on the boundary when at least one of its 4-neighbours is
    background or lies outside the image.
    """
    interior = ndimage.binary_erosion(mask.bits, structure=FOUR_CONNECTED, border_value=0)
    ys, xs = np.nonzero(mask.bits & ~interior)
    return BoundarySet(frozenset(zip(xs.tolist(), ys.tolist())))


def distance_field(sites: BoundarySet, width: int, height: int) -> DistanceField:
    """
    Computes the exact Euclidean distance transform to a site set

    Args:
        sites: Non-empty set of in-bounds pixel coordinates
        width: Grid width
        height: Grid height

    Returns:
        DistanceField: per-pixel minimal distance to the sites
    """
    if not sites:
        raise EmptySetError("Distance field needs at least one site")
    xs, ys = sites.coordinates()
    if xs.min() < 0 or ys.min() < 0 or xs.max() >= width or ys.max() >= height:
        raise InvalidLabelMapError(f"Sites fall outside the {width}x{height} grid")

    free = np.ones((height, width), dtype=bool)
    free[ys, xs] = False
    # distance_transform_edt measures distance to the nearest zero element
    dist = ndimage.distance_transform_edt(free)
    return DistanceField(width=width, height=height, dist=freeze_array(np.asarray(dist, dtype=np.float64)))
