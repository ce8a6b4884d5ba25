"""Synthetic fixture geometry: squares, discs and their rotated or shifted variants."""
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Sequence, Tuple

import numpy as np
from typing_extensions import Literal

from config import FIXTURE_CONFIG
from src.core.errors import FixtureError
from src.core.masks import LabelMap
from src.utils.logging_utils import get_logger

logger = get_logger(__name__)

ShapeKind = Literal['rect', 'disc']

_EPS = 1e-9


@dataclass(frozen=True)
class Shape:
    """
    A filled shape placed on a pixel grid

    Coordinates are continuous with pixel (x, y) centred on (x, y). A 'disc' has the same
    area as the width x height rectangle it replaces.

    Attributes:
        kind: 'rect' or 'disc'
        center: (cx, cy) of the shape
        size: (width, height) in pixels
        angle: Counter-clockwise rotation about the centre, in degrees
    """
    kind: ShapeKind
    center: Tuple[float, float]
    size: Tuple[int, int]
    angle: float = 0.0

    @classmethod
    def rect(cls, x: int, y: int, width: int, height: int, angle: float = 0.0) -> 'Shape':
        """Axis-aligned rectangle whose top-left pixel is (x, y), optionally rotated"""
        return cls('rect', (x + (width - 1) / 2.0, y + (height - 1) / 2.0), (width, height), angle)

    @classmethod
    def disc(cls, x: int, y: int, width: int, height: int) -> 'Shape':
        """Disc area-matched to the rectangle with top-left pixel (x, y)"""
        return cls('disc', (x + (width - 1) / 2.0, y + (height - 1) / 2.0), (width, height))

    @property
    def target_area(self) -> int:
        return self.size[0] * self.size[1]

    @property
    def radius(self) -> float:
        return math.sqrt(self.target_area / math.pi)

    def half_extents(self) -> Tuple[float, float]:
        """Half of the axis-aligned bounding box of the continuous shape"""
        if self.kind == 'disc':
            return self.radius, self.radius
        w, h = self.size
        theta = self.angle * math.pi / 180.0
        c, s = abs(math.cos(theta)), abs(math.sin(theta))
        return (w * c + h * s) / 2.0, (w * s + h * c) / 2.0

    def rotated(self, degrees: float) -> 'Shape':
        return replace(self, angle=self.angle + degrees)

    def translated(self, dx: float, dy: float = 0.0) -> 'Shape':
        return replace(self, center=(self.center[0] + dx, self.center[1] + dy))


@dataclass(frozen=True)
class FixtureSpec:
    """Canvas plus a ground-truth and an automatic shape, each rasterized as label 1 on 0"""
    name: str
    canvas: Tuple[int, int]
    gt: Shape
    auto: Shape


@dataclass(frozen=True, eq=False)
class RasterizedShape:
    bits: np.ndarray
    target_area: int
    area: int
    nudge: Tuple[float, float] = (0.0, 0.0)

    @property
    def drift(self) -> float:
        return abs(self.area - self.target_area) / self.target_area


def _validate(shape: Shape, canvas: Tuple[int, int], role: str) -> None:
    width, height = canvas
    if width <= 0 or height <= 0:
        raise FixtureError(f"Canvas must have positive size, got {width}x{height}")
    if shape.kind not in ('rect', 'disc'):
        raise FixtureError(f"Unknown {role} shape kind: {shape.kind}")
    if shape.size[0] <= 0 or shape.size[1] <= 0:
        raise FixtureError(f"{role} shape has zero size: {shape.size[0]}x{shape.size[1]}")

    cx, cy = shape.center
    ex, ey = shape.half_extents()
    # the canvas covers [-0.5, width - 0.5] x [-0.5, height - 0.5]
    if (cx - ex < -0.5 - _EPS or cy - ey < -0.5 - _EPS
            or cx + ex > width - 0.5 + _EPS or cy + ey > height - 0.5 + _EPS):
        raise FixtureError(
            f"{role} shape centred at ({cx:g}, {cy:g}) with size {shape.size[0]}x{shape.size[1]} "
            f"at {shape.angle:g} degrees exceeds the {width}x{height} canvas"
        )


def _inside(shape: Shape, cx: float, cy: float, canvas: Tuple[int, int]) -> np.ndarray:
    width, height = canvas
    dx = np.arange(width, dtype=np.float64)[np.newaxis, :] - cx
    dy = np.arange(height, dtype=np.float64)[:, np.newaxis] - cy
    if shape.kind == 'disc':
        return dx * dx + dy * dy <= shape.radius ** 2 + _EPS
    theta = shape.angle * math.pi / 180.0
    c, s = math.cos(theta), math.sin(theta)
    u = dx * c + dy * s
    v = -dx * s + dy * c
    return (np.abs(u) <= shape.size[0] / 2.0 + _EPS) & (np.abs(v) <= shape.size[1] / 2.0 + _EPS)


def rasterize(shape: Shape, canvas: Tuple[int, int]) -> RasterizedShape:
    """
    Centre-of-pixel rasterization of a shape

    Tries the configured sub-pixel centre nudges and keeps the first one whose pixel count
    is closest to the shape's declared area. The nudge used is reported on the result.

    Args:
        shape: Shape to draw
        canvas: (width, height) of the grid

    Returns:
        RasterizedShape: boolean grid with declared and actual areas
    """
    best = None
    for nx, ny in FIXTURE_CONFIG['center_nudges']:
        bits = _inside(shape, shape.center[0] + nx, shape.center[1] + ny, canvas)
        area = int(np.count_nonzero(bits))
        if best is None or abs(area - shape.target_area) < abs(best.area - shape.target_area):
            best = RasterizedShape(bits=bits, target_area=shape.target_area, area=area, nudge=(nx, ny))
        if area == shape.target_area:
            break
    return best


def _draw(shape: Shape, canvas: Tuple[int, int], role: str, fixture: str) -> np.ndarray:
    _validate(shape, canvas, role)
    raster = rasterize(shape, canvas)
    if raster.drift > FIXTURE_CONFIG['area_tolerance']:
        raise FixtureError(
            f"{fixture}: {role} area {raster.area} drifts {raster.drift:.2%} from {raster.target_area}"
        )
    if raster.nudge != (0.0, 0.0):
        logger.warning(
            "fixture_center_nudged",
            fixture=fixture, role=role, dx=raster.nudge[0], dy=raster.nudge[1], area=raster.area,
        )
    if raster.drift > 0:
        logger.warning(
            "fixture_area_drift",
            fixture=fixture, role=role, area=raster.area, target_area=raster.target_area,
            drift=round(raster.drift, 6), nudge=raster.nudge,
        )
    return raster.bits


def generate_fixture(spec: FixtureSpec) -> Tuple[LabelMap, LabelMap]:
    """
    Rasterizes a fixture into a pair of binary label maps

    Args:
        spec: Fixture geometry

    Returns:
        Tuple of (auto, gt) label maps with foreground label 1
    """
    gt_bits = _draw(spec.gt, spec.canvas, 'gt', spec.name)
    auto_bits = _draw(spec.auto, spec.canvas, 'auto', spec.name)
    logger.debug(
        "fixture_generated",
        fixture=spec.name, auto_area=int(auto_bits.sum()), gt_area=int(gt_bits.sum()),
    )
    return LabelMap(auto_bits.astype(np.int64)), LabelMap(gt_bits.astype(np.int64))


def _squares_and_discs() -> Dict[str, FixtureSpec]:
    canvas = tuple(FIXTURE_CONFIG['canvas'])
    g, a = FIXTURE_CONFIG['gt_size'], FIXTURE_CONFIG['auto_size']
    gx = (canvas[0] - g) // 2
    ax = (canvas[0] - a) // 2
    return {
        # centred, auto inside gt
        's1': FixtureSpec('s1', canvas, Shape.rect(gx, gx, g, g), Shape.rect(ax, ax, a, a)),
        # auto displaced towards the gt corner, still inside
        's2': FixtureSpec('s2', canvas, Shape.rect(gx, gx, g, g), Shape.rect(gx + 5, gx + 5, a, a)),
        # both anchored in the image corner, sharing boundary pixels along the border
        's3': FixtureSpec('s3', canvas, Shape.rect(0, 0, g, g), Shape.rect(0, 0, a, a)),
        'c1': FixtureSpec('c1', canvas, Shape.disc(gx, gx, g, g), Shape.disc(ax, ax, a, a)),
        'c2': FixtureSpec('c2', canvas, Shape.disc(gx, gx, g, g), Shape.disc(gx + 5, gx + 5, a, a)),
        'c3': FixtureSpec(
            'c3', canvas,
            Shape('disc', (39.0, 39.0), (g, g)),
            Shape('disc', (19.5, 19.5), (a, a)),
        ),
    }


FIXTURE_NAMES: Tuple[str, ...] = ('s1', 's2', 's3', 'c1', 'c2', 'c3')


def named_fixture(name: str) -> FixtureSpec:
    """Looks up a catalogued fixture (s1, s2, s3, c1, c2, c3)"""
    fixtures = _squares_and_discs()
    try:
        return fixtures[name.lower()]
    except KeyError:
        raise FixtureError(f"Unknown fixture '{name}', expected one of {', '.join(FIXTURE_NAMES)}") from None


def _base_spec(name: str, config_key: str) -> FixtureSpec:
    base = FIXTURE_CONFIG[config_key]
    return FixtureSpec(
        name=name,
        canvas=tuple(base['canvas']),
        gt=Shape.rect(*base['gt_rect']),
        auto=Shape.rect(*base['auto_rect']),
    )


def rotation_base() -> FixtureSpec:
    """Off-centre square partially overlapping a larger gt square, unrotated"""
    return _base_spec('rotation', 'rotation_base')


def translation_base() -> FixtureSpec:
    """Two identical squares, unshifted"""
    return _base_spec('translation', 'translation_base')


def rotated(spec: FixtureSpec, degrees: float) -> FixtureSpec:
    return replace(spec, name=f"{spec.name}_{degrees:g}", auto=spec.auto.rotated(degrees))


def translated(spec: FixtureSpec, dx: float, dy: float = 0.0) -> FixtureSpec:
    return replace(spec, name=f"{spec.name}_{dx:g}", auto=spec.auto.translated(dx, dy))


def rotation_series(angles: Sequence[float] = None, base: FixtureSpec = None) -> List[FixtureSpec]:
    """The rotation base rotated by every angle, in the order given"""
    angles = FIXTURE_CONFIG['rotation_angles'] if angles is None else angles
    base = base or rotation_base()
    return [rotated(base, float(angle)) for angle in angles]
