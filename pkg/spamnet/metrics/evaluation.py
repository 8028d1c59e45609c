import json
from typing import Sequence

import numpy as np

from spamnet._models.eval_report import EvalReport
from spamnet._utils.console import format_table

RATIO_FIELDS = ("accuracy", "precision", "recall", "f1")
_FLOAT_FIELDS = ("threshold", *RATIO_FIELDS)
_INT_FIELDS = ("samples", "tp", "fp", "fn", "tn")


def _ratio(numerator: int, denominator: int) -> float | None:
    return numerator / denominator if denominator else None


def evaluate(predicted_labels: Sequence[int], true_labels: Sequence[int], threshold: float = 0.5,
             dataset: str = "test", model: str = "", split_digest: str = "") -> EvalReport:
    predicted = np.asarray(predicted_labels).ravel()
    truth = np.asarray(true_labels).ravel()
    if predicted.shape != truth.shape:
        raise ValueError(f"Got {predicted.size} predictions for {truth.size} labels")
    for name, values in (("predicted", predicted), ("true", truth)):
        if not np.isin(values, (0, 1)).all():
            raise ValueError(f"{name} labels must be 0 (ham) or 1 (spam)")

    tp = int(np.sum((predicted == 1) & (truth == 1)))
    fp = int(np.sum((predicted == 1) & (truth == 0)))
    fn = int(np.sum((predicted == 0) & (truth == 1)))
    tn = int(np.sum((predicted == 0) & (truth == 0)))

    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    f1 = None
    if precision is not None and recall is not None and precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    return EvalReport(
        tp=tp, fp=fp, fn=fn, tn=tn,
        accuracy=_ratio(tp + tn, tp + fp + fn + tn),
        precision=precision,
        recall=recall,
        f1=f1,
        threshold=threshold,
        dataset=dataset,
        model=model,
        split_digest=split_digest,
    )


def _render(key: str, value) -> str:
    if value is None:
        return "null"
    if key in _FLOAT_FIELDS:
        return f"{value:.4f}"
    if key in _INT_FIELDS:
        return str(int(value))
    return json.dumps(value)


def report_serialize(report: EvalReport) -> str:
    """Single-line JSON record: fixed key order, ratios at 4 decimals, undefined as null."""
    fields = (f"{json.dumps(key)}: {_render(key, value)}" for key, value in report.to_dict().items())
    return "{" + ", ".join(fields) + "}"


def report_parse(record: str) -> EvalReport:
    return EvalReport.from_dict(json.loads(record))


def render_reports(reports: Sequence[EvalReport]) -> str:
    """Aligned table with one column per report."""
    header = ["metric", *(report.model for report in reports)]
    rows = [
        ["dataset", *(report.dataset for report in reports)],
        ["samples", *(str(report.total) for report in reports)],
        *([key, *(str(getattr(report, key)) for report in reports)] for key in ("tp", "fp", "fn", "tn")),
        *([key, *(_render(key, getattr(report, key)).replace("null", "undefined") for report in reports)]
          for key in RATIO_FIELDS),
        ["threshold", *(f"{report.threshold:.4f}" for report in reports)],
    ]
    return format_table(header, rows)
