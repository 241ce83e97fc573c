"""Test image corpora.

A corpus entry is either a file path, a directory (every PGM/PNG/JPEG/TIFF/BMP
inside it), or ``builtin:<name>`` for one of the standard test images shipped
with scikit-image. Colour images are reduced to gray with integer luma.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path

import numpy as np

from .imaging import as_gray, read_image, rgb_to_gray

log = logging.getLogger(__name__)

CORPUS_ENV = "GNEIGHBOR_CORPUS"

# cameraman first; three colour photographs go through the luma conversion
STANDARD_NAMES = ("camera", "astronaut", "coins", "moon", "clock", "chelsea", "coffee")

_IMAGE_SUFFIXES = {".pgm", ".pnm", ".png", ".jpg", ".jpeg", ".tif", ".tiff", ".bmp"}


def builtin_image(name: str) -> np.ndarray:
    from skimage import data

    loader = getattr(data, name, None)
    if loader is None or name.startswith("_"):
        raise KeyError(f"unknown builtin image {name!r}")
    arr = np.asarray(loader())
    if arr.ndim == 3:
        return rgb_to_gray(arr)
    if arr.dtype == bool:
        return arr.astype(np.uint8) * 255
    return as_gray(arr)


def standard_corpus(names=STANDARD_NAMES) -> dict[str, np.ndarray]:
    return {n: builtin_image(n) for n in names}


def _expand(entry: str):
    if entry.startswith("builtin:"):
        yield entry, None
        return
    p = Path(entry)
    if p.is_dir():
        for child in sorted(p.iterdir()):
            if child.suffix.lower() in _IMAGE_SUFFIXES:
                yield str(child), child
    else:
        yield entry, p


def load_corpus(entries=None) -> dict[str, np.ndarray]:
    """Load ``entries``; falls back to ``$GNEIGHBOR_CORPUS`` and then the builtin set.

    Unreadable entries are logged and skipped.
    """
    if not entries:
        env = os.environ.get(CORPUS_ENV)
        entries = [env] if env else [f"builtin:{n}" for n in STANDARD_NAMES]

    images: dict[str, np.ndarray] = {}
    for entry in entries:
        for label, path in _expand(entry):
            try:
                if path is None:
                    name = label.split(":", 1)[1]
                    images[name] = builtin_image(name)
                else:
                    images[path.name] = read_image(path)
            except Exception as exc:  # noqa: BLE001 - corpus entries are user input
                log.warning("skipping corpus entry %s: %s", label, exc)
    return images
