import math

import numpy as np
import pytest

from config import EVALUATION_CONFIG
from src.core.errors import DimensionMismatchError, EmptySetError, InputValidationError
from src.core.masks import LabelMap
from src.core.values import Undefined, is_defined
from src.harness.dataset import Dataset, DatasetEntry, load_manifest
from src.harness.evaluator import SegmentationEvaluator, evaluate_dataset, evaluate_pair, resolve_selection
from src.harness.label_io import save_label_map
from src.harness.report import render_report, report_to_dict
from src.metrics.catalog import METRIC_KEYS, polarity_of

S1_EXACT = {
    'jaccard': 0.25, 'dice': 0.4, 'fmi': 0.5, 'tpr': 0.25, 'tnr': 1.0, 'fnr': 0.75,
    'precision': 1.0, 'f_measure': 0.2, 'xor': 0.75, 'boundary_hamming': 1.0,
    'gce': 0.18375, 'rand_index': 26750625 / 49995000,
}
S1_PRINTED = {'accuracy': (0.63, 0.005), 'rand_index': (0.54, 0.005), 'voi': (1.26, 0.01), 'gce': (0.18, 0.005)}

PERFECT_ONE = ['jaccard', 'dice', 'fmi', 'rand_index', 'pri', 'nmi', 'accuracy']
PERFECT_ZERO = [
    'xor', 'mce', 'error_rate', 'voi', 'lce', 'gce', 'bce', 'hausdorff', 'masd', 'asd', 'nsd', 'bde',
    'hamming', 'boundary_hamming',
]


def two_by_two(rows):
    return LabelMap.from_rows(rows)


def npr_dataset() -> Dataset:
    return Dataset.of([
        DatasetEntry('a', two_by_two([[1, 0], [0, 0]]), (two_by_two([[1, 0], [1, 0]]),)),
        DatasetEntry('b', LabelMap.from_rows([[0, 1, 2, 3, 4]]), (LabelMap.from_rows([[0, 0, 1, 2, 3]]),)),
    ])


def test_s1_report_matches_golden_row(s1_pair):
    auto, gt = s1_pair
    image = evaluate_pair(auto, [gt]).images[0]
    for name, expected in S1_EXACT.items():
        assert image.value(name) == pytest.approx(expected, abs=1e-12), name
    for name, (printed, tolerance) in S1_PRINTED.items():
        assert abs(image.value(name) - printed) <= tolerance, name
    assert image.value('pri') == pytest.approx(image.value('rand_index'), abs=1e-12)
    assert image.value('hausdorff') == pytest.approx(18 * math.sqrt(2), abs=1e-12)
    assert 'npr' not in image.metrics


def test_every_entry_carries_its_polarity(s1_pair):
    auto, gt = s1_pair
    image = evaluate_pair(auto, [gt]).images[0]
    assert set(image.metrics) == set(METRIC_KEYS) - {'npr'}
    for name, entry in image.metrics.items():
        assert entry.polarity == polarity_of(name)


def test_identity_suite(s1_pair):
    _, gt = s1_pair
    image = evaluate_pair(gt, [gt]).images[0]
    for name in PERFECT_ONE:
        assert image.value(name) == 1.0, name
    for name in PERFECT_ZERO:
        assert image.value(name) == 0.0, name
    assert isinstance(image.value('plr'), Undefined)


def test_empty_selection_gives_empty_report(s1_pair):
    auto, gt = s1_pair
    report = evaluate_pair(auto, [gt], selection=[])
    assert report.is_empty


def test_selection_accepts_symbols(s1_pair):
    auto, gt = s1_pair
    image = evaluate_pair(auto, [gt], selection=['JI', 'hd', 'BHD']).images[0]
    assert sorted(image.metrics) == ['boundary_hamming', 'hamming', 'jaccard']


def test_unknown_metric_in_selection():
    with pytest.raises(KeyError):
        resolve_selection(['not-a-metric'])


def test_multiple_ground_truths(s1_pair):
    auto, gt = s1_pair
    image = evaluate_pair(auto, [gt, auto]).images[0]
    jaccard = image.metrics['jaccard']
    assert jaccard.value == pytest.approx(0.25)
    assert jaccard.per_gt == pytest.approx((0.25, 1.0))
    ri = image.value('rand_index')
    assert image.value('pri') == pytest.approx((ri + 1.0) / 2, abs=1e-12)
    assert image.metrics['pri'].per_gt == ()


def test_per_gt_values_can_be_disabled(s1_pair):
    auto, gt = s1_pair
    report = SegmentationEvaluator(report_per_gt=False).evaluate_pair(auto, [gt, auto], ['jaccard'])
    assert report.images[0].metrics['jaccard'].per_gt == ()


def test_dimension_mismatch_aborts(s1_pair):
    auto, _ = s1_pair
    with pytest.raises(DimensionMismatchError):
        evaluate_pair(auto, [LabelMap(np.zeros((10, 10), dtype=np.int64))])


def test_metric_failure_becomes_undefined_entry(s1_pair):
    _, gt = s1_pair
    blank = LabelMap(np.zeros((100, 100), dtype=np.int64))
    image = evaluate_pair(blank, [gt]).images[0]
    hausdorff = image.value('hausdorff')
    assert isinstance(hausdorff, Undefined)
    assert "non-empty" in hausdorff.reason
    assert image.value('jaccard') == 0.0


def test_split_regions_changes_partition_metrics():
    auto = LabelMap.from_rows([[1, 0, 1], [1, 0, 1]])
    gt = LabelMap.from_rows([[1, 0, 2], [1, 0, 2]])
    plain = SegmentationEvaluator(split_regions=False).evaluate_pair(auto, [gt], ['voi']).images[0]
    split = SegmentationEvaluator(split_regions=True).evaluate_pair(auto, [gt], ['voi']).images[0]
    assert plain.value('voi') > 0.0
    assert split.value('voi') == pytest.approx(0.0, abs=1e-12)


def test_dataset_normalizes_pri():
    report = evaluate_dataset(npr_dataset(), ['PRI', 'NPR'])
    assert report.image('a').value('pri') == pytest.approx(0.5, abs=1e-12)
    assert report.image('b').value('pri') == pytest.approx(0.9, abs=1e-12)
    assert report.normalization['ev'] == pytest.approx(0.7, abs=1e-12)
    assert report.normalization['max_pri'] == pytest.approx(0.9, abs=1e-12)
    assert report.image('a').value('npr') == pytest.approx(-1.0, abs=1e-12)
    assert report.image('b').value('npr') == pytest.approx(1.0, abs=1e-12)
    assert report.aggregates['pri'].value == pytest.approx(0.7, abs=1e-12)
    assert report.aggregates['npr'].count == 2


def test_npr_without_pri_selected():
    report = evaluate_dataset(npr_dataset(), ['npr'])
    assert sorted(report.image('a').metrics) == ['npr']
    assert list(report.aggregates) == ['npr']


def test_single_image_dataset_is_degenerate():
    dataset = Dataset.of(npr_dataset().entries[:1])
    value = evaluate_dataset(dataset, ['npr']).image('a').value('npr')
    assert isinstance(value, Undefined)
    assert "degenerate dataset" in value.reason


def test_perfect_prediction_reaches_max_pri():
    perfect = two_by_two([[1, 1], [0, 0]])
    dataset = Dataset.of([
        DatasetEntry('perfect', perfect, (perfect,)),
        DatasetEntry('half', two_by_two([[1, 0], [0, 0]]), (two_by_two([[1, 0], [1, 0]]),)),
    ])
    report = evaluate_dataset(dataset, ['pri', 'npr'])
    assert report.image('perfect').value('pri') == 1.0
    assert report.normalization['max_pri'] == 1.0
    assert report.image('perfect').value('npr') == pytest.approx(1.0, abs=1e-12)


def test_dataset_permutation_invariance(s1_pair):
    auto, gt = s1_pair
    entries = list(npr_dataset().entries) + [DatasetEntry('s1', auto, (gt,))]
    forward = evaluate_dataset(Dataset.of(entries))
    backward = evaluate_dataset(Dataset.of(reversed(entries)))
    assert report_to_dict(forward) == report_to_dict(backward)


def test_parallel_evaluation_is_deterministic(s1_pair):
    auto, gt = s1_pair
    entries = list(npr_dataset().entries) + [DatasetEntry('s1', auto, (gt,))]
    renders = {
        render_report(SegmentationEvaluator(threads=threads).evaluate_dataset(Dataset.of(entries)), 'json')
        for threads in (1, 4, 4)
    }
    assert len(renders) == 1


def test_aggregates_skip_undefined_values(s1_pair):
    auto, gt = s1_pair
    dataset = Dataset.of([DatasetEntry('s1', auto, (gt,)), DatasetEntry('same', gt, (gt,))])
    report = evaluate_dataset(dataset, ['plr', 'jaccard'])
    assert report.aggregates['jaccard'].value == pytest.approx(0.625)
    assert report.aggregates['jaccard'].count == 2
    assert isinstance(report.aggregates['plr'].value, Undefined)
    assert report.aggregates['plr'].count == 0


def test_dataset_invariants():
    entry = npr_dataset().entries[0]
    with pytest.raises(InputValidationError):
        Dataset.of([entry, entry])
    with pytest.raises(EmptySetError):
        DatasetEntry('none', entry.prediction, ())
    with pytest.raises(DimensionMismatchError):
        DatasetEntry('bad', entry.prediction, (LabelMap.from_rows([[0, 1, 0]]),))
    with pytest.raises(EmptySetError):
        evaluate_dataset(Dataset.of([]))


def test_load_manifest_resolves_relative_paths(tmp_path):
    images = tmp_path / "images"
    save_label_map(two_by_two([[1, 0], [0, 0]]), str(images / "a_pred.png"))
    save_label_map(two_by_two([[1, 0], [1, 0]]), str(images / "a_gt.png"))
    manifest = tmp_path / "manifest.json"
    manifest.write_text('[{"id": "a", "pred": "images/a_pred.png", "gts": ["images/a_gt.png"]}]')
    dataset = load_manifest(str(manifest))
    assert dataset.image_ids == ['a']
    assert dataset.entries[0].ground_truths[0] == two_by_two([[1, 0], [1, 0]])
    assert is_defined(evaluate_dataset(dataset, ['pri']).image('a').value('pri'))


@pytest.mark.parametrize("record", [
    '{"id": "a", "pred": 7, "gts": ["gt.png"]}',
    '{"id": "a", "pred": "pred.png", "gts": {"path": "gt.png"}}',
    '{"id": "a", "pred": "pred.png", "gts": ["gt.png", null]}',
    '{"id": "a", "pred": "pred.png"}',
])
def test_malformed_manifest_entries(tmp_path, record):
    manifest = tmp_path / "manifest.json"
    manifest.write_text(f"[{record}]")
    with pytest.raises(InputValidationError):
        load_manifest(str(manifest))


@pytest.mark.parametrize("threads", [0, -2])
def test_thread_count_below_one_rejected(threads):
    with pytest.raises(InputValidationError, match="at least 1"):
        SegmentationEvaluator(threads=threads)


def test_thread_count_from_config_is_checked(monkeypatch):
    monkeypatch.setitem(EVALUATION_CONFIG, 'threads', 0)
    with pytest.raises(InputValidationError):
        SegmentationEvaluator()
