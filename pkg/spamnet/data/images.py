import re
from spamnet._utils.compat import StrEnum
from io import BytesIO
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from spamnet._utils.constants import IMAGE_SIZE
from spamnet.tensor_core.tensor import Tensor


class ImageFormat(StrEnum):
    PNG = "png"
    JPEG = "jpeg"
    PPM = "ppm"


class ImageDecodeError(ValueError):
    pass


_SUFFIXES = {
    ".png": ImageFormat.PNG,
    ".jpg": ImageFormat.JPEG,
    ".jpeg": ImageFormat.JPEG,
    ".ppm": ImageFormat.PPM,
    ".pgm": ImageFormat.PPM,
    ".pnm": ImageFormat.PPM,
}

# magic, width, height, maxval, then exactly one whitespace byte before the raster
_NETPBM_HEADER = re.compile(
    rb"\A(P[56])(?:\s|#[^\n]*\n)+(\d+)(?:\s|#[^\n]*\n)+(\d+)(?:\s|#[^\n]*\n)+(\d+)\s")


def format_for_path(path: Path) -> ImageFormat:
    suffix = Path(path).suffix.lower()
    if suffix not in _SUFFIXES:
        raise ImageDecodeError(f"Unsupported image format {suffix or '(no suffix)'!r}")
    return _SUFFIXES[suffix]


def _decode_netpbm(data: bytes) -> np.ndarray:
    match = _NETPBM_HEADER.match(data)
    if not match:
        raise ImageDecodeError("Not a binary PPM/PGM stream (expected P6 or P5 header)")
    magic, width, height, maxval = match.group(1), *(int(g) for g in match.groups()[1:])
    if width < 1 or height < 1 or not 1 <= maxval <= 65535:
        raise ImageDecodeError(f"Invalid PPM header: {width}x{height}, maxval {maxval}")
    channels = 3 if magic == b"P6" else 1
    sample_type = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    expected = width * height * channels * sample_type.itemsize
    raster = data[match.end():match.end() + expected]
    if len(raster) < expected:
        raise ImageDecodeError(f"PPM raster truncated: {len(raster)} of {expected} bytes")
    samples = np.frombuffer(raster, dtype=sample_type).reshape(height, width, channels)
    if maxval != 255:
        samples = np.rint(samples.astype(np.float64) * 255.0 / maxval)
    pixels = samples.astype(np.uint8)
    if channels == 1:
        pixels = np.repeat(pixels, 3, axis=2)
    return pixels


# Pillow names multi-picture camera JPEGs "MPO"; the first frame is the primary image
_PILLOW_FORMATS = {
    ImageFormat.PNG: {"PNG"},
    ImageFormat.JPEG: {"JPEG", "MPO"},
}


def _decode_pillow(data: bytes, image_format: ImageFormat) -> np.ndarray:
    try:
        with Image.open(BytesIO(data)) as image:
            if image.format and image.format not in _PILLOW_FORMATS[image_format]:
                raise ImageDecodeError(f"Stream is {image.format}, expected {image_format.value.upper()}")
            image.seek(0)
            return np.asarray(image.convert("RGB"), dtype=np.uint8).copy()
    except (UnidentifiedImageError, Image.DecompressionBombError, OSError, SyntaxError) as exc:
        raise ImageDecodeError(f"Corrupt {image_format.value.upper()} stream: {exc}") from None


def decode_image(data: bytes, image_format: ImageFormat) -> np.ndarray:
    """Decode to an 8-bit RGB grid [H, W, 3]; grayscale is replicated across channels."""
    image_format = ImageFormat(image_format)
    if image_format is ImageFormat.PPM:
        return _decode_netpbm(data)
    return _decode_pillow(data, image_format)


def _axis_samples(src: int, dst: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    coords = (np.arange(dst, dtype=np.float64) + 0.5) * (src / dst) - 0.5
    coords = np.clip(coords, 0.0, src - 1)
    lo = np.floor(coords).astype(np.intp)
    hi = np.minimum(lo + 1, src - 1)
    return lo, hi, coords - lo


def resize_bilinear(raw: np.ndarray, size: int = IMAGE_SIZE) -> np.ndarray:
    """Half-pixel-centred bilinear resampling of an [H, W, 3] u8 grid to [size, size, 3]."""
    if raw.ndim != 3 or raw.shape[2] != 3 or raw.shape[0] < 1 or raw.shape[1] < 1:
        raise ValueError(f"Expected an [H, W, 3] pixel grid, got {raw.shape}")
    pixels = raw.astype(np.float64)
    top, bottom, fy = _axis_samples(raw.shape[0], size)
    left, right, fx = _axis_samples(raw.shape[1], size)
    fy = fy[:, None, None]
    rows = pixels[top] * (1.0 - fy) + pixels[bottom] * fy
    fx = fx[None, :, None]
    out = rows[:, left] * (1.0 - fx) + rows[:, right] * fx
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def normalize(raw: np.ndarray) -> Tensor:
    """[H, W, 3] u8 -> [3, H, W] float32 in [0, 1]."""
    if raw.ndim != 3 or raw.shape[2] != 3:
        raise ValueError(f"Expected an [H, W, 3] pixel grid, got {raw.shape}")
    return np.ascontiguousarray((raw.astype(np.float32) / np.float32(255.0)).transpose(2, 0, 1))


def load_image(path: Path) -> Tensor:
    path = Path(path)
    raw = decode_image(path.read_bytes(), format_for_path(path))
    return normalize(resize_bilinear(raw))
