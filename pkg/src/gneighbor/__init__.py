"""Variable-pixel G-neighbor denoising, image quality metrics and a memristive hardware model."""

from .gfilter import (
    Aggregator,
    DistanceMode,
    FilterConfig,
    NeighborMask,
    aggregate,
    filter_image,
    gneighbor_mask,
    pixel_distance,
    square_filter,
    threshold_from_normalized,
)
from .imaging import NoiseSpec, PaddingMode, add_salt_pepper, load_pgm, normalize, pad, read_image, save_pgm
from .metrics import Circle, QualityReport, Rectangle, SsimConstants, evaluate, mse, psnr, ssim

__version__ = "0.1.0"
