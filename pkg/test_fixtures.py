import pytest
from structlog.testing import capture_logs

from config import FIXTURE_CONFIG
from src.core.errors import FixtureError
from src.core.geometry import extract_boundary
from src.core.masks import ConfusionCounts, binarize, confusion_counts
from src.harness.fixtures import (
    FIXTURE_NAMES, FixtureSpec, Shape, generate_fixture, named_fixture, rasterize, rotated,
    rotation_series, translated, translation_base,
)


def counts_of(spec: FixtureSpec) -> ConfusionCounts:
    auto, gt = generate_fixture(spec)
    return confusion_counts(binarize(auto), binarize(gt))


def test_s1_confusion_counts():
    assert counts_of(named_fixture('s1')) == ConfusionCounts(tp=1225, fp=0, tn=5100, fn=3675)


def test_s1_geometry(s1_pair):
    auto, gt = s1_pair
    assert auto.shape == gt.shape == (100, 100)
    assert auto.label_set() == gt.label_set() == (0, 1)
    assert int(auto.labels[32:67, 32:67].sum()) == 1225
    assert int(gt.labels[15:85, 15:85].sum()) == 4900


def test_s2_keeps_auto_inside_gt():
    assert counts_of(named_fixture('s2')) == ConfusionCounts(tp=1225, fp=0, tn=5100, fn=3675)


def test_s3_shares_border_boundary_pixels():
    auto, gt = generate_fixture(named_fixture('s3'))
    shared = extract_boundary(binarize(auto)).points & extract_boundary(binarize(gt)).points
    assert (0, 0) in shared
    assert (0, 34) in shared


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_catalogue_fixtures_preserve_areas(name):
    auto, gt = generate_fixture(named_fixture(name))
    assert abs(int(auto.labels.sum()) - 1225) <= 0.01 * 1225
    assert abs(int(gt.labels.sum()) - 4900) <= 0.01 * 4900


@pytest.mark.parametrize("angle", [15.0, 30.0, 45.0])
def test_rotated_auto_square_keeps_its_area(angle):
    auto, _ = generate_fixture(rotated(named_fixture('s1'), angle))
    assert 1213 <= int(auto.labels.sum()) <= 1237


def test_rotation_at_forty_five_degrees_is_exact():
    raster = rasterize(Shape.rect(32, 32, 35, 35, angle=45.0), (100, 100))
    assert raster.area == 1225
    assert raster.drift == 0.0
    assert raster.nudge in [tuple(nudge) for nudge in FIXTURE_CONFIG["center_nudges"]]


def test_axis_aligned_square_needs_no_nudge():
    raster = rasterize(Shape.rect(32, 32, 35, 35), (100, 100))
    assert raster.nudge == (0.0, 0.0)
    assert raster.area == 1225


def test_applied_nudge_is_logged(monkeypatch):
    monkeypatch.setitem(FIXTURE_CONFIG, "center_nudges", [(0.5, 0.0)])
    monkeypatch.setitem(FIXTURE_CONFIG, "area_tolerance", 1.0)
    spec = FixtureSpec("shifted", (100, 100), Shape.rect(15, 15, 70, 70), Shape.rect(32, 32, 35, 35))
    with capture_logs() as logs:
        generate_fixture(spec)
    nudged = [entry for entry in logs if entry["event"] == "fixture_center_nudged"]
    assert {entry["role"] for entry in nudged} == {"gt", "auto"}
    assert all((entry["dx"], entry["dy"]) == (0.5, 0.0) for entry in nudged)


def test_rotation_series_uses_configured_angles():
    series = rotation_series()
    assert [spec.auto.angle for spec in series] == [0.0, 15.0, 30.0, 45.0]
    for spec in series:
        generate_fixture(spec)


def test_zero_size_shape_rejected():
    spec = FixtureSpec('bad', (100, 100), Shape.rect(15, 15, 70, 70), Shape.rect(40, 40, 0, 35))
    with pytest.raises(FixtureError, match="zero size"):
        generate_fixture(spec)


def test_shape_outside_canvas_rejected():
    spec = FixtureSpec('bad', (100, 100), Shape.rect(15, 15, 70, 70), Shape.rect(80, 80, 35, 35))
    with pytest.raises(FixtureError, match="exceeds"):
        generate_fixture(spec)


def test_rotation_can_push_a_shape_off_canvas():
    spec = FixtureSpec('edge', (40, 40), Shape.rect(0, 0, 40, 40), Shape.rect(0, 0, 40, 40))
    generate_fixture(spec)
    with pytest.raises(FixtureError):
        generate_fixture(rotated(spec, 30.0))


def test_translation_moves_the_auto_shape():
    base = translation_base()
    moved = translated(base, 5)
    auto, gt = generate_fixture(moved)
    counts = confusion_counts(binarize(auto), binarize(gt))
    assert counts.tp == 30 * 35
    assert counts.fp == counts.fn == 5 * 35


def test_unknown_fixture():
    with pytest.raises(FixtureError):
        named_fixture('s9')
