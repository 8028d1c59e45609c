import os

SEED_ENV_VAR = 'SPAMNET_SEED'
DEFAULT_SEED = 42

IMAGE_SIZE = 56
CHANNELS = 3

DEFAULT_BATCH_SIZE = 32
DEFAULT_EPOCHS = 1000
DEFAULT_DROPOUT = 0.25
DEFAULT_THRESHOLD = 0.5
DEFAULT_TRAIN_FRACTION = 0.8
DEFAULT_CHECKPOINT_EVERY = 100

ADAM_LR = 1e-3
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8

HISTOGRAM_TOP_K = 8
HISTOGRAM_TAU = 0.6

HOG_LINEAR_EPOCHS = 30
HOG_LINEAR_LR = 0.01
HOG_LINEAR_REG = 1e-4

DEFAULT_CORPUS = 'corpus'
DEFAULT_CHECKPOINT = 'spamnet.ckpt'
DEFAULT_REPORT = 'report.jsonl'
MANIFEST_NAME = 'manifest.tsv'


def env_seed(default: int = DEFAULT_SEED) -> int:
    """Seed from the environment, falling back to ``default``."""
    raw = os.getenv(SEED_ENV_VAR, '').strip()
    if not raw:
        return default
    try:
        seed = int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None
    if not 0 <= seed < 2 ** 64:
        raise ValueError(f"{SEED_ENV_VAR} must fit in 64 unsigned bits, got {seed}")
    return seed
