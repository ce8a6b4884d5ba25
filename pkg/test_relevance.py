import pytest

from src.core.errors import InputValidationError
from src.core.masks import BinaryMask, ConfusionCounts, LabelMap, confusion_counts
from src.core.values import Undefined, is_defined
from src.metrics.relevance import per_class_reports, relevance_report, vd_identity_check

S1_COUNTS = ConfusionCounts(tp=1225, fp=0, tn=5100, fn=3675)


def test_s1_relevance_values():
    report = relevance_report(S1_COUNTS)
    assert report.tpr == pytest.approx(0.25, abs=1e-12)
    assert report.tnr == pytest.approx(1.0, abs=1e-12)
    assert report.fnr == pytest.approx(0.75, abs=1e-12)
    assert report.fpr == pytest.approx(0.0, abs=1e-12)
    assert report.precision == pytest.approx(1.0, abs=1e-12)
    assert report.f_measure == pytest.approx(0.2, abs=1e-12)
    assert report.f1_conventional == pytest.approx(0.4, abs=1e-12)
    assert report.xor == pytest.approx(0.75, abs=1e-12)
    assert report.accuracy == pytest.approx(0.6325, abs=1e-12)
    assert abs(report.accuracy - 0.63) <= 0.005
    assert report.error_probability == pytest.approx(0.3675, abs=1e-12)
    assert report.volumetric_distance == pytest.approx(0.6, abs=1e-12)
    assert report.volumetric_similarity == pytest.approx(0.4, abs=1e-12)
    assert report.auc == pytest.approx(0.625, abs=1e-12)
    assert report.nlr == pytest.approx(0.75, abs=1e-12)


def test_plr_undefined_when_specificity_is_one():
    plr = relevance_report(S1_COUNTS).plr
    assert isinstance(plr, Undefined)
    assert "1 - TNR = 0" in plr.reason


def test_no_gt_foreground_makes_recall_undefined():
    report = relevance_report(ConfusionCounts(tp=0, fp=2, tn=7, fn=0))
    assert isinstance(report.tpr, Undefined)
    assert isinstance(report.fnr, Undefined)
    assert isinstance(report.f_measure, Undefined)
    assert isinstance(report.auc, Undefined)
    assert report.tnr == pytest.approx(7 / 9)


def test_zero_precision_and_recall_leaves_f_undefined():
    report = relevance_report(ConfusionCounts(tp=0, fp=3, tn=4, fn=3))
    assert report.precision == 0.0
    assert report.tpr == 0.0
    assert isinstance(report.f_measure, Undefined)
    assert isinstance(report.f1_conventional, Undefined)


def test_empty_counts_rejected():
    with pytest.raises(InputValidationError):
        relevance_report(ConfusionCounts(0, 0, 0, 0))


def test_relevance_identities_on_random_counts(rng):
    for _ in range(1000):
        tp, fp, tn, fn = (int(v) for v in rng.integers(1, 500, size=4))
        counts = ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)
        report = relevance_report(counts)
        assert report.tpr + report.fnr == pytest.approx(1.0, abs=1e-12)
        assert report.tnr + report.fpr == pytest.approx(1.0, abs=1e-12)
        assert report.auc == pytest.approx(1 - (report.fpr + report.fnr) / 2, abs=1e-12)
        assert report.accuracy + report.error_probability == pytest.approx(1.0, abs=1e-12)
        assert vd_identity_check(tp + fp, tp + fn, counts)


def test_vd_identity_on_random_masks(rng):
    for _ in range(1000):
        auto = BinaryMask(rng.random((8, 8)) < rng.uniform(0.0, 1.0))
        gt = BinaryMask(rng.random((8, 8)) < rng.uniform(0.0, 1.0))
        assert vd_identity_check(auto.foreground_count, gt.foreground_count, confusion_counts(auto, gt))


def test_vd_identity_detects_wrong_sizes():
    assert not vd_identity_check(1225, 4899, S1_COUNTS)


def test_false_positives_never_raise_precision_or_accuracy(rng):
    for _ in range(200):
        tp, fp, tn, fn = (int(v) for v in rng.integers(1, 200, size=4))
        before = relevance_report(ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn))
        for extra in (1, tn // 2, tn):
            after = relevance_report(ConfusionCounts(tp=tp, fp=fp + extra, tn=tn - extra, fn=fn))
            assert after.precision <= before.precision + 1e-12
            assert after.accuracy <= before.accuracy + 1e-12


def test_vd_identity_with_empty_foregrounds():
    assert vd_identity_check(0, 0, ConfusionCounts(tp=0, fp=0, tn=9, fn=0))


def test_per_class_reports_cover_every_label():
    auto = LabelMap.from_rows([[0, 1, 1], [2, 2, 0]])
    gt = LabelMap.from_rows([[0, 1, 0], [2, 2, 3]])
    reports = per_class_reports(auto, gt)
    assert sorted(reports) == [0, 1, 2, 3]
    assert reports[2].tpr == pytest.approx(1.0)
    assert reports[1].precision == pytest.approx(0.5)
    # label 3 is never predicted
    assert reports[3].tpr == 0.0
    assert isinstance(reports[3].precision, Undefined)
    assert all(is_defined(r.accuracy) for r in reports.values())


def test_report_as_dict_lists_every_metric():
    assert set(relevance_report(S1_COUNTS).as_dict()) >= {'tpr', 'plr', 'auc', 'f1_conventional'}
