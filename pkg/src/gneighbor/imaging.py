"""Grayscale raster handling: PGM I/O, normalization, padding and impulse noise.

Images are plain 2-D ``numpy`` arrays of dtype ``uint8`` indexed ``[row, col]``.
Normalized images are ``float64`` arrays with values in ``[0, 1]``.
"""

from __future__ import annotations

import enum
import io
import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PgmError",
    "PaddingMode",
    "NoiseSpec",
    "as_gray",
    "load_pgm",
    "save_pgm",
    "read_image",
    "write_pgm",
    "rgb_to_gray",
    "normalize",
    "denormalize",
    "add_salt_pepper",
    "pad",
]


class PgmError(ValueError):
    """Malformed or unsupported PGM data. ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class PaddingMode(enum.Enum):
    ZERO = "zero"
    REPLICATE = "replicate"


@dataclass(frozen=True)
class NoiseSpec:
    density: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"noise density must lie in [0, 1], got {self.density}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def as_gray(img) -> np.ndarray:
    """Validate and return ``img`` as a non-empty 2-D uint8 array."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D grayscale image, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("empty (0-pixel) images are not supported")
    if arr.dtype != np.uint8:
        if np.issubdtype(arr.dtype, np.integer) and arr.min() >= 0 and arr.max() <= 255:
            arr = arr.astype(np.uint8)
        else:
            raise ValueError(f"expected 8-bit intensities, got dtype {arr.dtype}")
    return arr


# ---------------------------------------------------------------- PGM codec

_WHITESPACE = b" \t\r\n\v\f"


class _HeaderReader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0
        self.last_start = 0

    def _skip_space(self):
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos : self.pos + 1]
            if ch in _WHITESPACE:
                self.pos += 1
            elif ch == b"#":
                while self.pos < len(data) and data[self.pos : self.pos + 1] not in (b"\n", b"\r"):
                    self.pos += 1
            else:
                break

    def token(self, what: str) -> bytes:
        self._skip_space()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1] not in _WHITESPACE + b"#":
            self.pos += 1
        if start == self.pos:
            raise PgmError(f"missing {what}", start)
        return self.data[start : self.pos]

    def integer(self, what: str) -> int:
        self._skip_space()
        start = self.last_start = self.pos
        tok = self.token(what)
        if not tok.isdigit():
            raise PgmError(f"invalid {what} {tok!r}", start)
        return int(tok)


def load_pgm(data: bytes) -> np.ndarray:
    """Decode a P2 (ASCII) or P5 (binary) PGM with maxval 255."""
    if len(data) < 2 or data[:2] not in (b"P2", b"P5"):
        raise PgmError("not a P2/P5 PGM (bad magic number)", 0)
    binary = data[:2] == b"P5"
    rd = _HeaderReader(data)
    rd.pos = 2
    if rd.pos < len(data) and data[rd.pos : rd.pos + 1] not in _WHITESPACE + b"#":
        raise PgmError("expected whitespace after magic number", rd.pos)
    width = rd.integer("width")
    height = rd.integer("height")
    maxval = rd.integer("maxval")
    maxval_at = rd.last_start
    if width == 0 or height == 0:
        raise PgmError("zero image dimension", maxval_at)
    if maxval != 255:
        raise PgmError(f"unsupported maxval {maxval} (only 255)", maxval_at)
    n = width * height

    if binary:
        # exactly one whitespace byte separates the header from the raster
        if rd.pos >= len(data):
            raise PgmError("truncated payload", rd.pos)
        start = rd.pos + 1
        payload = data[start : start + n]
        if len(payload) < n:
            raise PgmError(f"truncated payload: expected {n} bytes, found {len(payload)}", start + len(payload))
        pixels = np.frombuffer(payload, dtype=np.uint8).copy()
    else:
        pixels = np.empty(n, dtype=np.uint8)
        for i in range(n):
            try:
                value = rd.integer("pixel value")
            except PgmError as exc:
                raise PgmError(f"truncated payload: pixel {i} of {n}", exc.offset) from None
            if value > 255:
                raise PgmError(f"pixel value {value} exceeds maxval", rd.last_start)
            pixels[i] = value
    return pixels.reshape(height, width)


def save_pgm(img, binary: bool = True) -> bytes:
    """Encode ``img`` as P5 (``binary``) or P2 bytes."""
    img = as_gray(img)
    height, width = img.shape
    header = f"{'P5' if binary else 'P2'}\n{width} {height}\n255\n".encode("ascii")
    if binary:
        return header + np.ascontiguousarray(img).tobytes()
    buf = io.StringIO()
    for row in img:
        buf.write(" ".join(str(int(v)) for v in row))
        buf.write("\n")
    return header + buf.getvalue().encode("ascii")


def write_pgm(path, img, binary: bool = True) -> None:
    with open(path, "wb") as fh:
        fh.write(save_pgm(img, binary=binary))


def rgb_to_gray(rgb) -> np.ndarray:
    """Integer luma: round(0.299 R + 0.587 G + 0.114 B)."""
    rgb = np.asarray(rgb, dtype=np.float64)[..., :3]
    luma = rgb[..., 0] * 0.299 + rgb[..., 1] * 0.587 + rgb[..., 2] * 0.114
    return np.clip(np.floor(luma + 0.5), 0, 255).astype(np.uint8)


def read_image(path) -> np.ndarray:
    """Read a grayscale image. PGM is decoded natively; anything else goes through Pillow
    and is reduced to gray with :func:`rgb_to_gray`."""
    path = os.fspath(path)
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] in (b"P2", b"P5"):
        return load_pgm(data)

    from PIL import Image

    with Image.open(io.BytesIO(data)) as im:
        if im.mode in ("L", "I;8"):
            return as_gray(np.array(im))
        return rgb_to_gray(np.array(im.convert("RGB")))


# ------------------------------------------------------------ pixel transforms


def normalize(img) -> np.ndarray:
    return as_gray(img).astype(np.float64) / 255.0


def denormalize(norm) -> np.ndarray:
    norm = np.asarray(norm, dtype=np.float64)
    return np.clip(np.floor(norm * 255.0 + 0.5), 0, 255).astype(np.uint8)


def add_salt_pepper(img, spec: NoiseSpec = NoiseSpec()) -> np.ndarray:
    """Replace a ``spec.density`` fraction of pixels (in expectation) with 0 or 255.

    Each pixel is corrupted independently with probability ``density``; a
    corrupted pixel becomes salt or pepper with equal odds. Randomness comes from
    numpy's PCG64 generator seeded with ``spec.seed``.
    """
    img = as_gray(img)
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    hit = rng.random(img.shape) < spec.density
    salt = rng.random(img.shape) < 0.5
    out = img.copy()
    out[hit & salt] = 255
    out[hit & ~salt] = 0
    return out


def pad(img, radius: int, mode: PaddingMode = PaddingMode.ZERO) -> np.ndarray:
    if radius < 0:
        raise ValueError("padding radius must be non-negative")
    img = as_gray(img)
    if radius == 0:
        return img.copy()
    if mode is PaddingMode.ZERO:
        return np.pad(img, radius, mode="constant", constant_values=0)
    return np.pad(img, radius, mode="edge")
