"""wheq: weighted histogram equalization for low-contrast images.

The enhancement splits an image's histogram at an entropy-scored threshold,
equalizes each segment through an occupancy-weighted tone map, and picks the
weight exponent (gamma) whose result maximizes a block-contrast score (EME).
Color images are processed on the S and V planes of HSV; hue is never
touched.
"""

from .baselines import (
    DISTORTION_LEVELS,
    LEVEL_NAMES,
    DistortionLevel,
    clahe_lite,
    contrast_distort,
    global_he,
)
from .eme import EmeParams, EmeScore, block_contrast, compute_eme
from .errors import (
    CorruptImageError,
    DomainGapError,
    EmptySegmentError,
    NoValidThresholdError,
    UnsupportedFormatError,
    WheqError,
)
from .histogram import SegmentCdf, SegmentPdf, compute_histogram, segment_cdf, split_pdf
from .image_core import (
    LEVELS,
    dequantize_channel,
    hsv_to_rgb,
    load_image,
    quantize_channel,
    rgb_to_hsv,
    round_half_up,
    save_image,
)
from .pipeline import (
    DEFAULT_GAMMA_GRID,
    ChannelReport,
    EnhanceConfig,
    EnhanceReport,
    GammaGrid,
    enhance_hsv,
    enhance_image,
    enhance_plane,
    optimize_gamma,
)
from .threshold import EntropyParams, ThresholdResult, entropy_score, find_threshold
from .tonemap import (
    SegmentWeights,
    ToneCurve,
    apply_curve,
    build_lower_map,
    build_upper_map,
    concat_maps,
    curve_to_csv,
    identity_curve,
    segment_weights,
)

__version__ = "0.1.0"

__all__ = [
    "LEVELS",
    "DEFAULT_GAMMA_GRID",
    "DISTORTION_LEVELS",
    "LEVEL_NAMES",
    "ChannelReport",
    "CorruptImageError",
    "DistortionLevel",
    "DomainGapError",
    "EmeParams",
    "EmeScore",
    "EmptySegmentError",
    "EnhanceConfig",
    "EnhanceReport",
    "EntropyParams",
    "GammaGrid",
    "NoValidThresholdError",
    "SegmentCdf",
    "SegmentPdf",
    "SegmentWeights",
    "ThresholdResult",
    "ToneCurve",
    "UnsupportedFormatError",
    "WheqError",
    "apply_curve",
    "block_contrast",
    "build_lower_map",
    "build_upper_map",
    "clahe_lite",
    "compute_eme",
    "compute_histogram",
    "concat_maps",
    "contrast_distort",
    "curve_to_csv",
    "dequantize_channel",
    "enhance_hsv",
    "enhance_image",
    "enhance_plane",
    "entropy_score",
    "find_threshold",
    "global_he",
    "hsv_to_rgb",
    "identity_curve",
    "load_image",
    "optimize_gamma",
    "quantize_channel",
    "rgb_to_hsv",
    "round_half_up",
    "save_image",
    "segment_cdf",
    "segment_weights",
    "split_pdf",
]
