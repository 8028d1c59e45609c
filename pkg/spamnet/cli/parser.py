import argparse

from spamnet._utils.constants import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_CHECKPOINT,
    DEFAULT_CHECKPOINT_EVERY,
    DEFAULT_CORPUS,
    DEFAULT_DROPOUT,
    DEFAULT_EPOCHS,
    DEFAULT_REPORT,
    DEFAULT_THRESHOLD,
    DEFAULT_TRAIN_FRACTION,
    HISTOGRAM_TAU,
    HISTOGRAM_TOP_K,
    HOG_LINEAR_EPOCHS,
    HOG_LINEAR_LR,
    HOG_LINEAR_REG,
    SEED_ENV_VAR,
)
from spamnet.cli.config import BaselineKind, Command


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"must fit in 64 unsigned bits, got {value}")
    return value


def build_parser(default_seed: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spamnet",
        description="Image-spam detection: CNN training, evaluation, prediction and classical baselines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    corpus = argparse.ArgumentParser(add_help=False)
    corpus.add_argument("--corpus", default=DEFAULT_CORPUS,
                        help=f"corpus root holding spam/ and ham/ (default: {DEFAULT_CORPUS})")

    checkpoint = argparse.ArgumentParser(add_help=False)
    checkpoint.add_argument("--checkpoint", default=DEFAULT_CHECKPOINT,
                            help=f"checkpoint file (default: {DEFAULT_CHECKPOINT})")

    seed = argparse.ArgumentParser(add_help=False)
    seed.add_argument("--seed", type=_seed, default=default_seed,
                      help=f"random seed (default: ${SEED_ENV_VAR} or {default_seed})")

    split = argparse.ArgumentParser(add_help=False)
    split.add_argument("--train-frac", dest="train_fraction", type=float, default=DEFAULT_TRAIN_FRACTION,
                       help=f"per-class training fraction (default: {DEFAULT_TRAIN_FRACTION})")
    split.add_argument("--report", default=DEFAULT_REPORT,
                       help=f"report file, one record per line (default: {DEFAULT_REPORT})")

    threshold = argparse.ArgumentParser(add_help=False)
    threshold.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                           help=f"spam iff probability >= threshold (default: {DEFAULT_THRESHOLD})")

    train = sub.add_parser(Command.TRAIN.value, parents=[corpus, checkpoint, seed, split, threshold],
                           help="train the CNN and evaluate it on the held-out split")
    train.add_argument("--epochs", type=_positive_int, default=DEFAULT_EPOCHS)
    train.add_argument("--batch-size", dest="batch_size", type=_positive_int, default=DEFAULT_BATCH_SIZE)
    train.add_argument("--dropout", type=float, default=DEFAULT_DROPOUT)
    train.add_argument("--checkpoint-every", dest="checkpoint_every", type=int, default=DEFAULT_CHECKPOINT_EVERY,
                       help="write an epoch snapshot every N epochs, 0 disables "
                            f"(default: {DEFAULT_CHECKPOINT_EVERY})")

    evaluate = sub.add_parser(Command.EVALUATE.value, parents=[corpus, checkpoint, seed, split, threshold],
                              help="evaluate a checkpoint on the held-out split")
    evaluate.add_argument("--full", dest="full_corpus", action="store_true",
                          help="evaluate on the whole corpus instead of the held-out split")

    predict = sub.add_parser(Command.PREDICT.value, parents=[checkpoint, threshold],
                             help="score individual images")
    predict.add_argument("images", nargs="+", help="image files (PNG, JPEG or PPM)")

    synth = sub.add_parser(Command.SYNTH.value, parents=[corpus, seed], help="generate a synthetic corpus")
    synth.add_argument("--spam", dest="n_spam", type=_positive_int, default=200)
    synth.add_argument("--ham", dest="n_ham", type=_positive_int, default=200)

    baseline = sub.add_parser(Command.BASELINE.value, parents=[corpus, seed, split],
                              help="evaluate the colour-histogram and HOG + linear baselines")
    baseline.add_argument("--baseline", choices=[kind.value for kind in BaselineKind], default=BaselineKind.ALL.value)
    baseline.add_argument("--top-k", dest="top_k", type=_positive_int, default=HISTOGRAM_TOP_K)
    baseline.add_argument("--tau", type=float, default=HISTOGRAM_TAU)
    baseline.add_argument("--hog-epochs", dest="hog_epochs", type=_positive_int, default=HOG_LINEAR_EPOCHS)
    baseline.add_argument("--hog-lr", dest="hog_lr", type=float, default=HOG_LINEAR_LR)
    baseline.add_argument("--hog-reg", dest="hog_reg", type=float, default=HOG_LINEAR_REG)

    sub.add_parser(Command.SUMMARY.value, help="print the network's layer table")
    return parser
