import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from spamnet._models.dataset import Dataset
from spamnet._models.eval_report import EvalReport
from spamnet._models.label import Label
from spamnet._utils.console import print_banner, print_error, print_table, print_warning
from spamnet._utils.constants import env_seed
from spamnet.baselines.color_histogram import color_histogram, is_spam, peak_spam_score
from spamnet.baselines.hog import hog_features
from spamnet.baselines.linear import train_linear
from spamnet.cli.config import BaselineKind, Command, RunConfig
from spamnet.cli.parser import build_parser
from spamnet.data.dataset import CorpusError, load_directory, stratified_split
from spamnet.data.images import ImageDecodeError, load_image
from spamnet.data.synthetic import generate_synthetic_corpus
from spamnet.loss_optim.optimizers import AdamState
from spamnet.metrics.evaluation import evaluate, render_reports, report_serialize
from spamnet.model.checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from spamnet.model.spamnet import SpamNet, build_spamnet, summarize
from spamnet.model.training import fit, predict
from spamnet.tensor_core.rng import Rng

# child stream keys under the run seed
_INIT_STREAM = 1
_FIT_STREAM = 2
_LINEAR_STREAM = 3


def _print_corpus(dataset: Dataset, root: Path) -> None:
    counts = dataset.class_counts()
    print(f"Corpus {root}: {counts[Label.SPAM]} spam, {counts[Label.HAM]} ham, {dataset.skipped} skipped")


def _split_digest(dataset: Dataset) -> str:
    return dataset.digest()[:16]


def _write_reports(path: Path, reports: Sequence[EvalReport]) -> None:
    Path(path).write_text("".join(report_serialize(report) + "\n" for report in reports), encoding="utf-8")
    print(render_reports(reports))
    print(f"\nReport written to {path}")


def print_summary(net: SpamNet) -> None:
    rows = summarize(net)
    print_table(
        ["Layer (type)", "Output Shape", "Param #"],
        [[f"{row.name} ({row.kind})", str((None, *row.output_shape)), f"{row.param_count:,}"] for row in rows],
    )
    print(f"Total params: {net.param_count():,}")


def evaluate_network(net: SpamNet, dataset: Dataset, threshold: float) -> EvalReport:
    _, labels = predict(net, dataset.images(), threshold)
    return evaluate(labels, dataset.labels(), threshold=threshold, dataset=dataset.split_tag.value,
                    model=net.identifier(), split_digest=_split_digest(dataset))


def cmd_train(config: RunConfig) -> int:
    print_banner("Training")
    dataset = load_directory(config.corpus_root)
    _print_corpus(dataset, config.corpus_root)
    train_set, test_set = stratified_split(dataset, config.train_fraction, config.train.seed)
    print(f"Split (seed {config.train.seed}): {len(train_set)} train, {len(test_set)} test\n")

    rng = Rng(config.train.seed)
    net = build_spamnet(rng.child(_INIT_STREAM), config.train.dropout_rate)
    print_summary(net)
    adam = AdamState.for_parameters(net.parameters())
    print()
    log = fit(net, train_set, config.train, adam, rng=rng.child(_FIT_STREAM), checkpoint_path=config.checkpoint_path)

    save_checkpoint(net, adam, config.checkpoint_path, epoch=config.train.epochs, seed=config.train.seed)
    config.log_path.write_text("".join(record.to_line() + "\n" for record in log), encoding="utf-8")
    print(f"\nCheckpoint written to {config.checkpoint_path} (log: {config.log_path})")

    print_banner("Held-out evaluation")
    _write_reports(config.report_path, [evaluate_network(net, test_set, config.train.threshold)])
    return 0


def cmd_evaluate(config: RunConfig) -> int:
    print_banner("Evaluation")
    net, _ = load_checkpoint(config.checkpoint_path)
    dataset = load_directory(config.corpus_root)
    _print_corpus(dataset, config.corpus_root)
    if config.full_corpus:
        target = dataset
    elif 0 in dataset.class_counts().values():
        print_warning("a class is empty, so the corpus cannot be split; evaluating on all samples")
        target = dataset
    else:
        _, target = stratified_split(dataset, config.train_fraction, config.train.seed)
    _write_reports(config.report_path, [evaluate_network(net, target, config.train.threshold)])
    return 0


def cmd_predict(config: RunConfig) -> int:
    net, _ = load_checkpoint(config.checkpoint_path)
    loaded: list[tuple[Path, np.ndarray]] = []
    for path in config.image_paths:
        try:
            loaded.append((path, load_image(path)))
        except (ImageDecodeError, OSError) as exc:
            print_error(f"{path}: {exc}")
    if not loaded:
        print_error("no image could be decoded")
        return 1
    probabilities, labels = predict(net, np.stack([pixels for _, pixels in loaded]), config.train.threshold)
    for (path, _), probability, label in zip(loaded, probabilities[:, 0], labels):
        print(f"{path}\t{probability:.4f}\t{Label(int(label)).name.lower()}")
    return 0


def cmd_synth(config: RunConfig) -> int:
    manifest = generate_synthetic_corpus(config.n_spam, config.n_ham, config.train.seed, config.corpus_root)
    print(f"Wrote {config.n_spam} spam and {config.n_ham} ham images under {config.corpus_root}")
    print(manifest)
    return 0


def histogram_report(test_set: Dataset, top_k: int, tau: float) -> EvalReport:
    predicted = [int(is_spam(peak_spam_score(color_histogram(sample.pixels), top_k), tau))
                 for sample in test_set.samples]
    return evaluate(predicted, test_set.labels(), threshold=tau, dataset=test_set.split_tag.value,
                    model=f"color_histogram(top_k={top_k})", split_digest=_split_digest(test_set))


def hog_linear_report(train_set: Dataset, test_set: Dataset, epochs: int, lr: float, reg: float,
                      rng: Rng) -> EvalReport:
    def features(dataset: Dataset) -> np.ndarray:
        return np.stack([hog_features(sample.pixels).values for sample in dataset.samples])

    signed = np.where(train_set.labels() == Label.SPAM, 1, -1)
    classifier = train_linear(features(train_set), signed, epochs=epochs, lr=lr, reg=reg, rng=rng)
    predicted = (classifier.predict(features(test_set)) == 1).astype(np.int64)
    return evaluate(predicted, test_set.labels(), threshold=0.0, dataset=test_set.split_tag.value,
                    model="hog_linear", split_digest=_split_digest(test_set))


def cmd_baseline(config: RunConfig) -> int:
    print_banner("Baselines")
    dataset = load_directory(config.corpus_root)
    _print_corpus(dataset, config.corpus_root)
    train_set, test_set = stratified_split(dataset, config.train_fraction, config.train.seed)
    reports = []
    if config.baseline in (BaselineKind.HISTOGRAM, BaselineKind.ALL):
        reports.append(histogram_report(test_set, config.top_k, config.tau))
    if config.baseline in (BaselineKind.HOG, BaselineKind.ALL):
        rng = Rng(config.train.seed).child(_LINEAR_STREAM)
        reports.append(hog_linear_report(train_set, test_set, config.hog_epochs, config.hog_lr, config.hog_reg, rng))
    _write_reports(config.report_path, reports)
    return 0


def cmd_summary(config: RunConfig) -> int:
    print_summary(build_spamnet(Rng(config.train.seed)))
    return 0


COMMANDS = {
    Command.TRAIN: cmd_train,
    Command.EVALUATE: cmd_evaluate,
    Command.PREDICT: cmd_predict,
    Command.SYNTH: cmd_synth,
    Command.BASELINE: cmd_baseline,
    Command.SUMMARY: cmd_summary,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        default_seed = env_seed()
    except ValueError as exc:
        print_error(str(exc))
        return 2
    parser = build_parser(default_seed)
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_namespace(args)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return COMMANDS[config.command](config)
    except (CorpusError, CheckpointError, ImageDecodeError, ValueError, OSError) as exc:
        print_error(str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
