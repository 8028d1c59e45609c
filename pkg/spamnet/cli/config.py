from argparse import Namespace
from dataclasses import dataclass, field
from spamnet._utils.compat import StrEnum
from pathlib import Path

from spamnet._models.train_config import TrainConfig
from spamnet._utils.constants import (
    DEFAULT_CHECKPOINT,
    DEFAULT_CORPUS,
    DEFAULT_REPORT,
    DEFAULT_TRAIN_FRACTION,
    HISTOGRAM_TAU,
    HISTOGRAM_TOP_K,
    HOG_LINEAR_EPOCHS,
    HOG_LINEAR_LR,
    HOG_LINEAR_REG,
)


class Command(StrEnum):
    TRAIN = "train"
    EVALUATE = "evaluate"
    PREDICT = "predict"
    SYNTH = "synth"
    BASELINE = "baseline"
    SUMMARY = "summary"


class BaselineKind(StrEnum):
    HISTOGRAM = "histogram"
    HOG = "hog"
    ALL = "all"


@dataclass
class RunConfig:
    command: Command
    corpus_root: Path = Path(DEFAULT_CORPUS)
    checkpoint_path: Path = Path(DEFAULT_CHECKPOINT)
    report_path: Path = Path(DEFAULT_REPORT)
    train: TrainConfig = field(default_factory=TrainConfig)
    train_fraction: float = DEFAULT_TRAIN_FRACTION
    full_corpus: bool = False
    image_paths: list[Path] = field(default_factory=list)
    n_spam: int = 200
    n_ham: int = 200
    baseline: BaselineKind = BaselineKind.ALL
    top_k: int = HISTOGRAM_TOP_K
    tau: float = HISTOGRAM_TAU
    hog_epochs: int = HOG_LINEAR_EPOCHS
    hog_lr: float = HOG_LINEAR_LR
    hog_reg: float = HOG_LINEAR_REG

    @property
    def log_path(self) -> Path:
        return self.checkpoint_path.with_name(self.checkpoint_path.name + ".log")

    @classmethod
    def from_namespace(cls, args: Namespace) -> "RunConfig":
        values = vars(args)
        train_keys = {
            "batch_size": "batch_size",
            "epochs": "epochs",
            "dropout": "dropout_rate",
            "seed": "seed",
            "checkpoint_every": "checkpoint_every",
            "threshold": "threshold",
        }
        train = TrainConfig(**{target: values[source] for source, target in train_keys.items() if source in values})
        config = cls(command=Command(args.command), train=train)
        for source, target in (("corpus", "corpus_root"), ("checkpoint", "checkpoint_path"),
                               ("report", "report_path"), ("images", "image_paths")):
            if source in values:
                setattr(config, target, [Path(p) for p in values[source]] if source == "images" else Path(values[source]))
        for key in ("train_fraction", "full_corpus", "n_spam", "n_ham", "top_k", "tau",
                    "hog_epochs", "hog_lr", "hog_reg"):
            if key in values:
                setattr(config, key, values[key])
        if "baseline" in values:
            config.baseline = BaselineKind(values["baseline"])
        return config
