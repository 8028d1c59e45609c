"""
Seeded stand-in corpus.

Spam images are flat palette backgrounds with rows of high-contrast "text" bars and an
optional banner stripe, so a handful of colours dominate their histograms. Ham images
are smooth colour ramps with a low-frequency ripple and low-amplitude noise, which
spread their histograms over many colour cells. Each image is drawn from its own
child stream of the corpus seed, so the corpus is a pure function of (counts, seed).
"""
from pathlib import Path

import numpy as np

from spamnet._models.label import Label
from spamnet._utils.constants import MANIFEST_NAME
from spamnet.data.dataset import CLASS_DIRS
from spamnet.tensor_core.rng import Rng

MIN_SIDE = 56
MAX_SIDE = 112

LIGHT = [(255, 255, 255), (240, 240, 224), (255, 224, 0), (200, 230, 255)]
DARK = [(0, 0, 0), (32, 64, 192), (160, 0, 0), (96, 0, 128)]
ACCENT = [(224, 32, 32), (0, 160, 64), (255, 128, 0)]

NOISE_SIGMA = 6.0


def _pick(rng: Rng, palette: list[tuple[int, int, int]]) -> np.ndarray:
    return np.array(palette[int(rng.integers(0, len(palette)))], dtype=np.uint8)


def _side_lengths(rng: Rng) -> tuple[int, int]:
    height, width = rng.integers(MIN_SIDE, MAX_SIDE + 1, size=2)
    return int(height), int(width)


def spam_image(rng: Rng) -> np.ndarray:
    height, width = _side_lengths(rng)
    image = np.empty((height, width, 3), dtype=np.uint8)
    image[:] = _pick(rng, LIGHT)
    ink = _pick(rng, DARK)

    top = 0
    if rng.integers(0, 2):
        band = int(rng.integers(height // 8, height // 5 + 1))
        image[:band] = _pick(rng, ACCENT)
        top = band

    row_height = max(3, height // 14)
    margin = max(2, width // 12)
    y = top + row_height
    for _ in range(int(rng.integers(3, 7))):
        if y + row_height > height - row_height:
            break
        x = margin
        while x < width - margin:
            word = int(rng.integers(width // 12, width // 4 + 1))
            image[y:y + row_height, x:min(x + word, width - margin)] = ink
            x += word + int(rng.integers(max(2, width // 30), max(3, width // 12)))
        y += 2 * row_height
    return image


def ham_image(rng: Rng) -> np.ndarray:
    height, width = _side_lengths(rng)
    v, u = np.mgrid[0:height, 0:width].astype(np.float64)
    u /= max(width - 1, 1)
    v /= max(height - 1, 1)

    def ramp(t: np.ndarray) -> np.ndarray:
        lo, hi = rng.integers(0, 24), rng.integers(232, 256)
        if rng.integers(0, 2):
            t = 1.0 - t
        return lo + (hi - lo) * t

    red = ramp(u)
    green = ramp(v)
    fx, fy = rng.integers(1, 3, size=2)
    phase = rng.uniform(0.0, 2.0 * np.pi, ())
    blue = 127.5 + 120.0 * np.sin(2.0 * np.pi * (fx * u + fy * v) + phase)

    image = np.stack([red, green, blue], axis=-1) + rng.normal(NOISE_SIGMA, (height, width, 3))
    return np.clip(np.rint(image), 0, 255).astype(np.uint8)


def encode_ppm(image: np.ndarray) -> bytes:
    height, width, _ = image.shape
    return f"P6\n{width} {height}\n255\n".encode("ascii") + np.ascontiguousarray(image, dtype=np.uint8).tobytes()


def generate_synthetic_corpus(n_spam: int, n_ham: int, seed: int, out_dir: Path) -> Path:
    """Write ``spam/`` and ``ham/`` PPM files plus a manifest; returns the manifest path."""
    if n_spam < 1 or n_ham < 1:
        raise ValueError(f"Corpus counts must be >= 1, got spam={n_spam}, ham={n_ham}")
    out_dir = Path(out_dir)
    root = Rng(seed)
    manifest_lines = []
    for label, count, draw in ((Label.SPAM, n_spam, spam_image), (Label.HAM, n_ham, ham_image)):
        dirname = CLASS_DIRS[label]
        (out_dir / dirname).mkdir(parents=True, exist_ok=True)
        for index in range(count):
            relative = f"{dirname}/{dirname}_{index:04d}.ppm"
            (out_dir / relative).write_bytes(encode_ppm(draw(root.child(int(label), index))))
            manifest_lines.append(f"{relative}\t{dirname}\t{seed}\n")
    manifest = out_dir / MANIFEST_NAME
    manifest.write_text("".join(manifest_lines), encoding="utf-8")
    return manifest
