"""Variable-pixel G-neighbor filtering.

For every pixel a ``w x w`` window is taken from the padded image. Window
entries whose distance to the centre intensity is at most the threshold are
the pixel's G-neighbors; the output is the mean (or median) of the
G-neighbors only, so the effective window follows the shape of the region the
centre pixel belongs to. With ``adaptive=False`` every window entry takes
part, giving the ordinary box / median filter.

All arithmetic is integer-exact: means are rounded half-up as
``(2 * sum + count) // (2 * count)``, even-count medians average the two
middle values and round half-up the same way.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .imaging import PaddingMode, as_gray, pad

__all__ = [
    "DistanceMode",
    "Aggregator",
    "FilterConfig",
    "NeighborMask",
    "threshold_from_normalized",
    "pixel_distance",
    "gneighbor_mask",
    "aggregate",
    "filter_image",
    "square_filter",
]


class DistanceMode(enum.Enum):
    ABS = "abs"
    XOR = "xor"


class Aggregator(enum.Enum):
    MEAN = "mean"
    MEDIAN = "median"


def threshold_from_normalized(eta: float) -> int:
    """Map a threshold on the 0-1 scale to the 0-255 integer scale (0.0507 -> 13)."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"normalized threshold must lie in [0, 1], got {eta}")
    return int(np.floor(eta * 255.0 + 0.5))


@dataclass(frozen=True)
class FilterConfig:
    window: int = 3
    threshold: int = 13
    aggregator: Aggregator = Aggregator.MEAN
    distance: DistanceMode = DistanceMode.ABS
    padding: PaddingMode = PaddingMode.ZERO
    adaptive: bool = True

    def __post_init__(self):
        if isinstance(self.window, bool) or not isinstance(self.window, (int, np.integer)):
            raise TypeError("window must be an integer")
        if self.window < 3 or self.window % 2 == 0:
            raise ValueError(f"window must be odd and >= 3, got {self.window}")
        if not 0 <= self.threshold <= 255:
            raise ValueError(f"threshold must lie in [0, 255], got {self.threshold}")

    @property
    def radius(self) -> int:
        return (self.window - 1) // 2


@dataclass(frozen=True)
class NeighborMask:
    """Boolean ``w x w`` selection of G-neighbors around one centre pixel."""

    grid: np.ndarray

    def __post_init__(self):
        w = self.grid.shape[0]
        if self.grid.shape != (w, w) or w % 2 == 0:
            raise ValueError("mask must be square with odd side")
        if not self.grid[w // 2, w // 2]:
            raise ValueError("centre pixel must always be its own G-neighbor")

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.grid))


def pixel_distance(a, b, mode: DistanceMode = DistanceMode.ABS):
    """``|a - b|`` or ``a ^ b`` on 8-bit codes; works elementwise on arrays."""
    a = np.asarray(a, dtype=np.int16)
    b = np.asarray(b, dtype=np.int16)
    d = np.abs(a - b) if mode is DistanceMode.ABS else np.bitwise_xor(a, b)
    return int(d) if d.ndim == 0 else d


def gneighbor_mask(window, threshold: int, mode: DistanceMode = DistanceMode.ABS) -> NeighborMask:
    window = np.asarray(window)
    w = window.shape[0]
    centre = window[w // 2, w // 2]
    return NeighborMask(pixel_distance(window, centre, mode) <= threshold)


def _round_half_up_ratio(num, den):
    return (2 * num + den) // (2 * den)


def aggregate(window, mask: NeighborMask, agg: Aggregator = Aggregator.MEAN) -> int:
    values = np.asarray(window, dtype=np.int64)[mask.grid]
    assert values.size >= 1, "a G-neighbor mask always holds its centre"
    if agg is Aggregator.MEAN:
        out = _round_half_up_ratio(int(values.sum()), values.size)
    else:
        values = np.sort(values)
        n = values.size
        out = _round_half_up_ratio(int(values[(n - 1) // 2] + values[n // 2]), 2)
    return min(max(out, 0), 255)


def _filter_band(padded: np.ndarray, rows: slice, width: int, cfg: FilterConfig) -> np.ndarray:
    """Filter output rows ``rows`` given the full padded image."""
    w, r = cfg.window, cfg.radius
    height = rows.stop - rows.start
    # (w*w, height, width) stack of shifted views, one plane per window offset
    planes = np.stack(
        [
            padded[rows.start + dy : rows.start + dy + height, dx : dx + width]
            for dy in range(w)
            for dx in range(w)
        ]
    ).astype(np.int64)
    centre = planes[(w * w) // 2]

    if cfg.adaptive:
        selected = pixel_distance(planes, centre[None], cfg.distance) <= cfg.threshold
    else:
        selected = np.ones(planes.shape, dtype=bool)
    count = selected.sum(axis=0)

    if cfg.aggregator is Aggregator.MEAN:
        total = np.where(selected, planes, 0).sum(axis=0)
        out = _round_half_up_ratio(total, count)
    else:
        # excluded entries sort past every real intensity
        ranked = np.sort(np.where(selected, planes, 1 << 16), axis=0)
        lo = np.take_along_axis(ranked, ((count - 1) // 2)[None], axis=0)[0]
        hi = np.take_along_axis(ranked, (count // 2)[None], axis=0)[0]
        out = _round_half_up_ratio(lo + hi, 2)
    return np.clip(out, 0, 255).astype(np.uint8)


def filter_image(img, cfg: FilterConfig = FilterConfig(), workers: int | None = None) -> np.ndarray:
    """Apply the G-neighbor (or square, when ``cfg.adaptive`` is false) filter.

    Pixels are independent, so the image is split into horizontal bands that
    may be processed by ``workers`` threads; the result does not depend on the
    split.
    """
    img = as_gray(img)
    height, width = img.shape
    padded = pad(img, cfg.radius, cfg.padding)

    if not workers or workers <= 1 or height < 2 * workers:
        return _filter_band(padded, slice(0, height), width, cfg)

    edges = np.linspace(0, height, workers + 1).astype(int)
    bands = [slice(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda s: _filter_band(padded, s, width, cfg), bands))
    return np.vstack(parts)


def square_filter(
    img,
    window: int = 3,
    aggregator: Aggregator = Aggregator.MEAN,
    padding: PaddingMode = PaddingMode.ZERO,
) -> np.ndarray:
    """Conventional full-window mean/median filter."""
    cfg = FilterConfig(window=window, aggregator=aggregator, padding=padding, adaptive=False)
    return filter_image(img, cfg)
