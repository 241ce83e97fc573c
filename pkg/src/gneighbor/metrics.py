"""Full- and reduced-reference image quality: MSE, PSNR and global SSIM.

Metrics operate on normalized images (values in [0, 1]). A region of interest
restricts every statistic to the pixels inside it; pixels outside the region
are left out of the sums altogether.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .imaging import as_gray, normalize

__all__ = [
    "SsimConstants",
    "Circle",
    "Rectangle",
    "QualityReport",
    "roi_mask",
    "mse",
    "psnr",
    "ssim",
    "psnr_from_ssim",
    "evaluate",
    "reports_to_csv",
    "REPORT_FIELDS",
]

REPORT_FIELDS = ("mse", "psnr_db", "ssim", "ssim_l", "ssim_c", "ssim_s", "roi")


@dataclass(frozen=True)
class SsimConstants:
    c1: float = (0.01 * 1.0) ** 2
    c2: float = (0.03 * 1.0) ** 2
    c3: float = (0.03 * 1.0) ** 2 / 2

    def __post_init__(self):
        if min(self.c1, self.c2, self.c3) <= 0:
            raise ValueError("SSIM stabilizing constants must be positive")

    @classmethod
    def for_range(cls, dynamic_range: float) -> "SsimConstants":
        c2 = (0.03 * dynamic_range) ** 2
        return cls((0.01 * dynamic_range) ** 2, c2, c2 / 2)


@dataclass(frozen=True)
class Circle:
    """Disc of integer lattice points; ``center_x`` is a column, ``center_y`` a row."""

    center_x: int
    center_y: int
    radius: float

    def describe(self) -> str:
        return f"circle(x={self.center_x},y={self.center_y},r={self.radius:g})"


@dataclass(frozen=True)
class Rectangle:
    """Inclusive row/column index bounds."""

    row_lo: int
    row_hi: int
    col_lo: int
    col_hi: int

    def describe(self) -> str:
        return f"rect(rows={self.row_lo}..{self.row_hi},cols={self.col_lo}..{self.col_hi})"


def roi_mask(spec, width: int, height: int) -> np.ndarray:
    """Boolean ``(height, width)`` mask for a :class:`Circle` or :class:`Rectangle`."""
    mask = np.zeros((height, width), dtype=bool)
    if isinstance(spec, Circle):
        if spec.radius < 0:
            raise ValueError("circle radius must be non-negative")
        y, x = np.mgrid[0:height, 0:width]
        mask = (x - spec.center_x) ** 2 + (y - spec.center_y) ** 2 <= spec.radius**2
    elif isinstance(spec, Rectangle):
        r0, r1 = max(spec.row_lo, 0), min(spec.row_hi, height - 1)
        c0, c1 = max(spec.col_lo, 0), min(spec.col_hi, width - 1)
        if r0 <= r1 and c0 <= c1:
            mask[r0 : r1 + 1, c0 : c1 + 1] = True
    else:
        raise TypeError(f"unsupported ROI spec {spec!r}")
    if not mask.any():
        raise ValueError(f"region of interest {spec} selects no pixels")
    return mask


def _region(a, b, roi):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")
    if roi is None:
        return a.ravel(), b.ravel()
    height, width = a.shape
    m = roi_mask(roi, width, height)
    return a[m], b[m]


def mse(a, b, roi=None) -> float:
    x, y = _region(a, b, roi)
    return float(np.mean((x - y) ** 2))


def _psnr_from_mse(err: float, peak: float = 1.0) -> float:
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(peak**2 / err)


def psnr(a, b, roi=None) -> float:
    """PSNR in dB with peak 1.0; ``math.inf`` for identical regions."""
    return _psnr_from_mse(mse(a, b, roi))


def ssim(a, b, k: SsimConstants = SsimConstants(), roi=None, literal: bool = False):
    """Global SSIM over the image (or ROI). Returns ``(ssim, l, c, s)``.

    Means, population standard deviations and the covariance are taken over the
    whole region. With ``literal=True`` the luminance and contrast terms use
    un-squared denominators, ``mu1 + mu2 + c1`` and ``sigma1 + sigma2 + c2``.
    """
    x, y = _region(a, b, roi)
    if x.size < 2:
        raise ValueError("SSIM needs a region of at least two pixels")
    mx, my = x.mean(), y.mean()
    dx, dy = x - mx, y - my
    vx, vy = np.mean(dx * dx), np.mean(dy * dy)
    cov = float(np.mean(dx * dy))
    # sqrt(v*v) == v exactly in binary floating point, so ssim(a, a) is exactly 1
    sxsy = math.sqrt(vx * vy)

    if literal:
        lum = (2 * mx * my + k.c1) / (mx + my + k.c1)
        con = (2 * sxsy + k.c2) / (math.sqrt(vx) + math.sqrt(vy) + k.c2)
    else:
        lum = (2 * mx * my + k.c1) / (mx * mx + my * my + k.c1)
        con = (2 * sxsy + k.c2) / (vx + vy + k.c2)
    struct = (cov + k.c3) / (sxsy + k.c3)
    lum, con, struct = float(lum), float(con), float(struct)
    return lum * con * struct, lum, con, struct


def psnr_from_ssim(ssim_value: float, covariance: float) -> float:
    """Predicted PSNR (dB, 0-255 scale) from an SSIM value and the image covariance."""
    if not 0.0 < ssim_value < 1.0:
        raise ValueError("ssim_value must lie strictly between 0 and 1")
    if covariance <= 0:
        raise ValueError("covariance must be positive")
    return 10.0 * math.log10(255.0**2 / (2.0 * covariance)) + 10.0 * math.log10(ssim_value / (1.0 - ssim_value))


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr: float
    ssim: float
    luminance: float
    contrast: float
    structure: float
    roi: str | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "mse": self.mse,
            "psnr_db": "inf" if math.isinf(self.psnr) else self.psnr,
            "ssim": self.ssim,
            "ssim_l": self.luminance,
            "ssim_c": self.contrast,
            "ssim_s": self.structure,
            "roi": self.roi,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def evaluate(reference, distorted, roi=None, k: SsimConstants = SsimConstants()) -> QualityReport:
    """Normalize both 8-bit images and compute the full (or ROI-restricted) report."""
    ref = normalize(as_gray(reference))
    dis = normalize(as_gray(distorted))
    s, lum, con, struct = ssim(ref, dis, k, roi)
    err = mse(ref, dis, roi)
    return QualityReport(
        mse=err,
        psnr=_psnr_from_mse(err),
        ssim=s,
        luminance=lum,
        contrast=con,
        structure=struct,
        roi=roi.describe() if roi is not None else None,
    )


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "inf" if math.isinf(value) else repr(value)
    return str(value)


def reports_to_csv(rows, extra_fields=()) -> str:
    """CSV text for ``rows`` of ``(extra_values, QualityReport)`` pairs."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*extra_fields, *REPORT_FIELDS])
    for extra, report in rows:
        d = report.to_dict()
        writer.writerow([*(_fmt(v) for v in extra), *(_fmt(d[f]) for f in REPORT_FIELDS)])
    return buf.getvalue()
