import json
import random
from fractions import Fraction

import pytest

import config
import utils
from evaluation_module import (MatchMode, MetricsReport, aggregate, compare, compare_by_document,
                               evaluate_files, render_report_table, report_to_dict)
from text_model import Annotation, Span


def ann(start, end, tag, doc_id="d1", surface="x"):
    return Annotation(doc_id, Span(start, end), surface, tag)


GOLD = [ann(0, 5, "A"), ann(10, 15, "B"), ann(20, 25, "C"), ann(30, 35, "D")]
PRED = [ann(0, 5, "A"), ann(10, 15, "B"), ann(20, 25, "C"), ann(40, 45, "E"), ann(50, 55, "F")]


def test_compare_counts():
    report = compare(GOLD, PRED)
    assert (report.tp, report.fp, report.fn) == (3, 2, 1)
    assert report.precision == Fraction(3, 5)
    assert report.recall == Fraction(3, 4)
    assert report.f1 == Fraction(2, 3)
    assert report.support == 4


def test_compare_empty_conventions():
    report = compare([], [])
    assert (report.precision, report.recall, report.f1) == (1, 1, 1)

    missed = compare(GOLD, [])
    assert missed.precision == 1
    assert missed.recall == 0

    nothing_right = compare([ann(0, 5, "A")], [ann(0, 5, "B")])
    assert nothing_right.f1 == 0


def test_compare_modes():
    gold = [ann(0, 5, "Elizabeth Bennet")]
    pred = [ann(0, 5, "Jane Bennet")]
    assert compare(gold, pred, MatchMode.SPAN_ONLY).tp == 1
    assert compare(gold, pred, MatchMode.SPAN_AND_TAG).tp == 0
    # tags comparés après normalisation
    assert compare(gold, [ann(0, 5, "elizabeth  BENNET")], MatchMode.SPAN_AND_TAG).tp == 1


def test_compare_partial_overlap_is_not_a_match():
    report = compare([ann(0, 9, "A")], [ann(0, 5, "A")])
    assert (report.tp, report.fp, report.fn) == (0, 1, 1)


def test_compare_duplicates_consume_gold_once():
    report = compare([ann(0, 5, "A")], [ann(0, 5, "A"), ann(0, 5, "A")])
    assert (report.tp, report.fp, report.fn) == (1, 1, 0)


def test_compare_rejects_unknown_documents():
    with pytest.raises(utils.ValidationError, match="inconnu"):
        compare(GOLD, [ann(0, 5, "A", doc_id="zz")], doc_ids=["d1"])


def test_per_tag_counts():
    report = compare(GOLD, PRED)
    assert report.per_tag["A"] == (1, 0, 0)
    assert report.per_tag["D"] == (0, 0, 1)
    assert report.per_tag["E"] == (0, 1, 0)


def test_span_only_dominates_span_and_tag():
    rng = random.Random(21)
    tags = ["A", "B", "C"]
    for _ in range(100):
        gold = [ann(s, s + 3, rng.choice(tags)) for s in rng.sample(range(0, 60, 4), 6)]
        pred = [ann(s, s + 3, rng.choice(tags)) for s in rng.sample(range(0, 60, 4), 6)]
        loose = compare(gold, pred, MatchMode.SPAN_ONLY)
        strict = compare(gold, pred, MatchMode.SPAN_AND_TAG)
        assert loose.tp >= strict.tp
        assert loose.tp + loose.fp == strict.tp + strict.fp == len(pred)
        assert loose.tp + loose.fn == strict.tp + strict.fn == len(gold)


def test_aggregate():
    total = aggregate([MetricsReport(2, 0, 1), MetricsReport(1, 1, 0)])
    assert (total.tp, total.fp, total.fn) == (3, 1, 1)
    assert total.precision == Fraction(3, 4)
    assert aggregate([]) == MetricsReport()


def test_aggregate_equals_whole_corpus():
    gold = GOLD + [ann(0, 5, "A", doc_id="d2"), ann(8, 9, "B", doc_id="d2")]
    pred = PRED + [ann(0, 5, "A", doc_id="d2"), ann(8, 9, "C", doc_id="d2")]
    by_doc = compare_by_document(gold, pred)

    assert list(by_doc) == ["d1", "d2"]
    assert aggregate(by_doc.values()) == compare(gold, pred)


def test_compare_by_document_includes_empty_documents():
    by_doc = compare_by_document(GOLD, PRED, doc_ids=["d1", "d0"])
    assert by_doc["d0"] == MetricsReport()


def test_report_to_dict():
    data = report_to_dict(compare(GOLD, PRED))
    assert data["precision"] == 0.6
    assert data["recall"] == 0.75
    assert data["f1"] == 0.6667
    assert data["per_tag"]["D"] == {"tp": 0, "fp": 0, "fn": 1}
    json.dumps(data)


def test_render_report_table():
    table = render_report_table({"d1": compare(GOLD, PRED)}, compare(GOLD, PRED))
    lines = table.splitlines()
    assert lines[0].split() == ["Precision", "Recall", "F-measure", "Support"]
    assert lines[1].split() == ["d1", "0.60", "0.75", "0.67", "4"]
    assert lines[-1].startswith(config.OVERALL_LABEL)
    assert len({len(line) for line in lines}) == 1


def test_evaluate_files(tmp_path):
    gold_path, pred_path = tmp_path / "gold.json", tmp_path / "pred.json"
    gold_path.write_text(json.dumps([a.to_record() for a in GOLD]), encoding="utf-8")
    pred_path.write_text(json.dumps([a.to_record() for a in PRED]), encoding="utf-8")

    result = evaluate_files(gold_path, pred_path, MatchMode.SPAN_AND_TAG)

    assert result["overall"] == compare(GOLD, PRED)
    assert list(result["by_document"]) == ["d1"]
    assert config.OVERALL_LABEL in result["table"]


def test_evaluate_files_rejects_document_missing_from_gold(tmp_path):
    gold_path, pred_path = tmp_path / "gold.json", tmp_path / "pred.json"
    gold_path.write_text(json.dumps([a.to_record() for a in GOLD]), encoding="utf-8")
    stray = PRED + [ann(0, 5, "A", doc_id="d9")]
    pred_path.write_text(json.dumps([a.to_record() for a in stray]), encoding="utf-8")

    with pytest.raises(utils.ValidationError, match="d9"):
        evaluate_files(gold_path, pred_path, MatchMode.SPAN_AND_TAG)

    # une liste explicite de documents élargit l'ensemble connu
    result = evaluate_files(gold_path, pred_path, MatchMode.SPAN_AND_TAG, doc_ids=["d1", "d9"])
    assert result["by_document"]["d9"].fp == 1


def test_self_evaluation_is_perfect(fixture_gold):
    report = compare(fixture_gold, fixture_gold)
    assert (report.precision, report.recall, report.f1) == (1, 1, 1)
    assert report.support == 52
