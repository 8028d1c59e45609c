from enum import IntEnum
from spamnet._utils.compat import StrEnum


class Label(IntEnum):
    HAM = 0
    SPAM = 1


class SplitTag(StrEnum):
    TRAIN = "train"
    TEST = "test"
    ALL = "all"
