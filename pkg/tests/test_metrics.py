"""
Unit tests for confusion-matrix evaluation and the report record format.
"""
import json
import unittest

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spamnet._models.eval_report import EvalReport
from spamnet.metrics.evaluation import evaluate, render_reports, report_parse, report_serialize

label_pairs = st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, 1), min_size=n, max_size=n),
                        st.lists(st.integers(0, 1), min_size=n, max_size=n)))


@pytest.mark.unit
class TestEvaluate(unittest.TestCase):

    def setUp(self):
        # tp=3, fp=0, fn=1, tn=4
        self.truth = [1, 1, 1, 1, 0, 0, 0, 0]
        self.predicted = [1, 1, 1, 0, 0, 0, 0, 0]

    def test_hand_evaluated_case(self):
        report = evaluate(self.predicted, self.truth)
        self.assertEqual((report.tp, report.fp, report.fn, report.tn), (3, 0, 1, 4))
        self.assertEqual(report.precision, 1.0)
        self.assertEqual(report.recall, 0.75)
        self.assertAlmostEqual(report.f1, 6 / 7)
        self.assertEqual(report.accuracy, 0.875)

    def test_perfect_predictions(self):
        report = evaluate(self.truth, self.truth)
        self.assertEqual((report.accuracy, report.precision, report.recall, report.f1), (1.0, 1.0, 1.0, 1.0))

    def test_undefined_ratios_are_none(self):
        report = evaluate([0, 0, 0], [0, 0, 0])
        self.assertEqual(report.accuracy, 1.0)
        self.assertIsNone(report.precision)
        self.assertIsNone(report.recall)
        self.assertIsNone(report.f1)

    def test_zero_precision_and_recall_leave_f1_undefined(self):
        report = evaluate([1, 0], [0, 1])
        self.assertEqual((report.precision, report.recall), (0.0, 0.0))
        self.assertIsNone(report.f1)

    def test_rejects_bad_input(self):
        with self.assertRaises(ValueError):
            evaluate([1, 0], [1])
        with self.assertRaises(ValueError):
            evaluate([2, 0], [1, 0])

    @settings(max_examples=1000, deadline=None)
    @given(label_pairs)
    def test_counts_match_brute_force_tally(self, pair):
        predicted, truth = pair
        report = evaluate(predicted, truth)
        tally = {"tp": 0, "fp": 0, "fn": 0, "tn": 0}
        for p, t in zip(predicted, truth):
            tally[("t" if p == t else "f") + ("p" if p == 1 else "n")] += 1
        self.assertEqual({"tp": report.tp, "fp": report.fp, "fn": report.fn, "tn": report.tn}, tally)
        self.assertEqual(report.total, len(truth))
        if report.f1 is not None:
            harmonic = 2 / (1 / report.precision + 1 / report.recall)
            self.assertLess(abs(report.f1 - harmonic), 1e-9)

    @settings(max_examples=200, deadline=None)
    @given(label_pairs)
    def test_swapping_the_positive_class(self, pair):
        predicted, truth = pair
        report = evaluate(predicted, truth)
        flipped = evaluate([1 - p for p in predicted], [1 - t for t in truth])
        self.assertEqual((flipped.tp, flipped.fp, flipped.fn, flipped.tn), (report.tn, report.fn, report.fp, report.tp))
        self.assertEqual(flipped.accuracy, report.accuracy)
        negative_predictive = report.tn / (report.tn + report.fn) if report.tn + report.fn else None
        specificity = report.tn / (report.tn + report.fp) if report.tn + report.fp else None
        self.assertEqual(flipped.precision, negative_predictive)
        self.assertEqual(flipped.recall, specificity)

    def test_swapping_the_positive_class_hand_case(self):
        flipped = evaluate([1 - p for p in self.predicted], [1 - t for t in self.truth])
        self.assertEqual((flipped.tp, flipped.fp, flipped.fn, flipped.tn), (4, 1, 0, 3))
        self.assertEqual(flipped.precision, 0.8)
        self.assertEqual(flipped.recall, 1.0)
        self.assertEqual(flipped.accuracy, 0.875)


@pytest.mark.unit
class TestReportFormat(unittest.TestCase):

    def setUp(self):
        self.report = evaluate([1, 1, 1, 0, 0, 0, 0, 0], [1, 1, 1, 1, 0, 0, 0, 0], threshold=0.5,
                               dataset="test", model="spamnet:abc123", split_digest="0123456789abcdef")

    def test_single_line_fixed_key_order(self):
        line = report_serialize(self.report)
        self.assertNotIn("\n", line)
        self.assertEqual(list(json.loads(line)), ["model", "dataset", "split_digest", "threshold", "samples",
                                                  "tp", "fp", "fn", "tn", "accuracy", "precision", "recall", "f1"])
        self.assertIn('"f1": 0.8571', line)
        self.assertIn('"threshold": 0.5000', line)

    def test_undefined_is_null(self):
        line = report_serialize(evaluate([0, 0], [0, 0]))
        self.assertIn('"precision": null', line)
        self.assertIsNone(json.loads(line)["recall"])

    def test_serialize_parse_serialize_is_identical(self):
        line = report_serialize(self.report)
        self.assertEqual(report_serialize(report_parse(line)), line)

    def test_parse_rejects_inconsistent_sample_count(self):
        record = json.loads(report_serialize(self.report))
        record["samples"] = 99
        with self.assertRaises(ValueError):
            EvalReport.from_dict(record)

    def test_table_marks_undefined(self):
        table = render_reports([self.report, evaluate([0, 0], [0, 0], model="empty")])
        self.assertIn("spamnet:abc123", table)
        self.assertIn("undefined", table)
        self.assertIn("0.8571", table)


if __name__ == '__main__':
    unittest.main()
