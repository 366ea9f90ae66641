"""Full enhancement pipeline with greedy gamma selection.

Per channel plane: histogram -> entropy threshold -> segment PDFs/CDFs ->
occupancy weights -> one tone curve per gamma in the grid -> keep the gamma
whose enhanced plane scores the highest EME (smallest gamma on ties).

Color images are processed in HSV: the V plane (and S, under the default
"sv" policy) is quantized, enhanced independently with its own threshold and
gamma, and recombined with the untouched H plane. Degenerate planes (flat
histogram spike, no admissible threshold) fall back to the identity
transform with the report flagged rather than raising, so batch runs never
abort on one flat image.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySegmentError, NoValidThresholdError
from .eme import EmeParams, compute_eme
from .histogram import compute_histogram, segment_cdf, split_pdf
from .image_core import (
    LEVELS,
    dequantize_channel,
    hsv_to_rgb,
    quantize_channel,
    rgb_to_hsv,
)
from .threshold import EntropyParams, find_threshold
from .tonemap import (
    SegmentWeights,
    ToneCurve,
    apply_curve,
    build_lower_map,
    build_upper_map,
    concat_maps,
    identity_curve,
    segment_weights,
)

CHANNEL_POLICIES = ("v", "sv")


@dataclass(frozen=True)
class GammaGrid:
    """Ordered gamma candidates, each in (0, 1]."""

    values: tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("gamma grid is empty")
        if any(not 0.0 < g <= 1.0 for g in self.values):
            raise ValueError("gamma values must lie in (0, 1]")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("gamma values must be strictly increasing")


DEFAULT_GAMMA_GRID = GammaGrid(tuple(i / 10 for i in range(1, 11)))


@dataclass(frozen=True)
class EnhanceConfig:
    gamma_grid: GammaGrid = DEFAULT_GAMMA_GRID
    entropy: EntropyParams = field(default_factory=EntropyParams)
    eme: EmeParams = field(default_factory=EmeParams)
    channels: str = "sv"
    upper_map_form: str = "printed"

    def __post_init__(self):
        if self.channels not in CHANNEL_POLICIES:
            raise ValueError(f"channels must be one of {CHANNEL_POLICIES}")


@dataclass(frozen=True, eq=False)
class ChannelReport:
    """Everything the pipeline decided for one channel plane."""

    channel: str
    fallback: bool
    threshold: int | None
    omega_l: float | None
    omega_u: float | None
    x0: int | None
    gamma: float | None
    eme_before: float
    eme_after: float
    sweep: tuple[tuple[float, float], ...]
    curve: ToneCurve


@dataclass(frozen=True, eq=False)
class EnhanceReport:
    channels: dict[str, ChannelReport]
    wall_time_ms: float


def optimize_gamma(plane, t, weights: SegmentWeights, lower_cdf, upper_cdf, x0,
                   grid: GammaGrid = DEFAULT_GAMMA_GRID,
                   eme_params: EmeParams = EmeParams(),
                   upper_map_form: str = "printed"):
    """Sweep the gamma grid and keep the EME-maximizing tone curve.

    Returns (gamma, curve, enhanced plane, sweep) where sweep lists every
    (gamma, eme) pair evaluated. Ties go to the smallest gamma; candidates
    are evaluated in grid order so the scan is deterministic.
    """
    best = None
    sweep = []
    for gamma in grid.values:
        lower = build_lower_map(lower_cdf, weights.omega_l, gamma, x0, t)
        upper = build_upper_map(upper_cdf, weights.omega_u, gamma, t,
                                levels=LEVELS, form=upper_map_form)
        curve = concat_maps(lower, upper, gamma, t, levels=LEVELS)
        candidate = apply_curve(plane, curve)
        score = compute_eme(candidate, eme_params).value
        sweep.append((gamma, score))
        if best is None or score > best[3]:
            best = (gamma, curve, candidate, score)
    gamma_star, curve_star, plane_star, _ = best
    return gamma_star, curve_star, plane_star, tuple(sweep)


def enhance_plane(plane: np.ndarray, cfg: EnhanceConfig = EnhanceConfig(),
                  channel: str = "v") -> tuple[np.ndarray, ChannelReport]:
    """Enhance one quantized plane; degenerate inputs pass through flagged."""
    plane = np.asarray(plane)
    hist = compute_histogram(plane, levels=LEVELS)
    eme_before = compute_eme(plane, cfg.eme).value

    try:
        found = find_threshold(hist, cfg.entropy)
        lower_pdf, upper_pdf = split_pdf(hist, found.t)
        lower_cdf = segment_cdf(lower_pdf)
        upper_cdf = segment_cdf(upper_pdf)
    except (NoValidThresholdError, EmptySegmentError):
        return plane.copy(), _fallback_report(channel, eme_before)

    weights = segment_weights(lower_pdf, upper_pdf, found.t, levels=LEVELS)
    x0 = int(np.flatnonzero(hist)[0])
    gamma, curve, enhanced, sweep = optimize_gamma(
        plane, found.t, weights, lower_cdf, upper_cdf, x0,
        grid=cfg.gamma_grid, eme_params=cfg.eme, upper_map_form=cfg.upper_map_form,
    )
    report = ChannelReport(
        channel=channel,
        fallback=False,
        threshold=found.t,
        omega_l=weights.omega_l,
        omega_u=weights.omega_u,
        x0=x0,
        gamma=gamma,
        eme_before=eme_before,
        eme_after=max(score for _, score in sweep),
        sweep=sweep,
        curve=curve,
    )
    return enhanced, report


def enhance_hsv(hsv: np.ndarray, cfg: EnhanceConfig = EnhanceConfig()
                ) -> tuple[np.ndarray, dict[str, ChannelReport]]:
    """Enhance the V (and optionally S) plane of an HSV image.

    The H plane of the result is the input H plane, bit for bit. A channel
    that falls back keeps its original float values instead of passing
    through the quantization round trip.
    """
    out = hsv.copy()
    reports: dict[str, ChannelReport] = {}
    planes = {"v": 2}
    if cfg.channels == "sv":
        planes["s"] = 1
    for name in ("v", "s"):
        if name not in planes:
            continue
        idx = planes[name]
        quantized = quantize_channel(hsv[..., idx], LEVELS)
        enhanced, report = enhance_plane(quantized, cfg, channel=name)
        reports[name] = report
        if not report.fallback:
            out[..., idx] = dequantize_channel(enhanced, LEVELS)
    return out, reports


def enhance_image(img: np.ndarray, cfg: EnhanceConfig = EnhanceConfig()
                  ) -> tuple[np.ndarray, EnhanceReport]:
    """End-to-end RGB enhancement.

    When every processed channel falls back (flat image, single pixel), the
    input is returned unchanged so degenerate images are exact fixed points.
    """
    start = time.perf_counter()
    hsv = rgb_to_hsv(img)
    enhanced_hsv, reports = enhance_hsv(hsv, cfg)
    if all(rep.fallback for rep in reports.values()):
        out = img.copy()
    else:
        out = hsv_to_rgb(enhanced_hsv)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return out, EnhanceReport(channels=reports, wall_time_ms=elapsed_ms)


def _fallback_report(channel: str, eme_before: float) -> ChannelReport:
    return ChannelReport(
        channel=channel,
        fallback=True,
        threshold=None,
        omega_l=None,
        omega_u=None,
        x0=None,
        gamma=None,
        eme_before=eme_before,
        eme_after=eme_before,
        sweep=(),
        curve=identity_curve(LEVELS),
    )
