from dataclasses import dataclass
from typing import Any


@dataclass
class EvalReport:
    """
    Confusion-matrix statistics with spam as the positive class.

    A ratio whose denominator is zero is ``None`` (undefined), never 0 or 1.
    """
    tp: int
    fp: int
    fn: int
    tn: int
    accuracy: float | None
    precision: float | None
    recall: float | None
    f1: float | None
    threshold: float
    dataset: str
    model: str
    split_digest: str = ""

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def to_dict(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "dataset": self.dataset,
            "split_digest": self.split_digest,
            "threshold": self.threshold,
            "samples": self.total,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "tn": self.tn,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvalReport":
        report = cls(
            tp=int(data["tp"]),
            fp=int(data["fp"]),
            fn=int(data["fn"]),
            tn=int(data["tn"]),
            accuracy=data.get("accuracy"),
            precision=data.get("precision"),
            recall=data.get("recall"),
            f1=data.get("f1"),
            threshold=float(data["threshold"]),
            dataset=data.get("dataset", ""),
            model=data.get("model", ""),
            split_digest=data.get("split_digest", ""),
        )
        if "samples" in data and int(data["samples"]) != report.total:
            raise ValueError(f"Report counts sum to {report.total}, record says {data['samples']} samples")
        return report
