"""Segment tone maps and their concatenation into a full lookup table.

Each histogram segment gets its own map built from the segment CDF, blended
between a constant anchor and a full segment equalization by the occupancy
weight raised to gamma:

    lower:  round( x0 * (1 - w^g) + (t - x0) * c(x) * w^g )          -> [0, t]
    upper:  round( (t+1) + (1 - w^g) + (L-1-t) * c(x) * w^g )        -> [t+1, L-1]

The weight w of a segment is the occupied-bin fraction (1 minus the ratio of
empty bins to the segment span). The upper form overshoots L-1 by one at
c(x) = 1 and carries a bare (1 - w^g) offset; both quirks are kept as-is and
contained by the final clamp. The alternative "symmetric" form multiplies
the (1 - w^g) term by (t + 1) instead, mirroring the lower map; it is
selectable but not the default. The concatenated table gets a final
non-decreasing pass so pixel ordering is always preserved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainGapError
from .histogram import SegmentCdf, SegmentPdf
from .image_core import round_half_up

UPPER_MAP_FORMS = ("printed", "symmetric")


@dataclass(frozen=True)
class SegmentWeights:
    """Occupied-bin weights of the two segments.

    k_l / k_u count zero-mass bins in the lower / upper segment;
    omega_l = 1 - k_l / t and omega_u = 1 - k_u / (L - 1 - t), clamped to
    [0, 1]. A single-bin lower segment (t = 0) has no meaningful ratio and
    degenerates to 1 when its bin is occupied, else 0.
    """

    omega_l: float
    omega_u: float
    k_l: int
    k_u: int


@dataclass(frozen=True, eq=False)
class ToneCurve:
    """Complete level-to-level lookup table, always non-decreasing.

    gamma / threshold record how the curve was built; both are None for the
    identity curve used on degenerate inputs.
    """

    lut: np.ndarray
    gamma: float | None
    threshold: int | None


def identity_curve(levels: int = 256) -> ToneCurve:
    return ToneCurve(lut=np.arange(levels, dtype=np.uint8), gamma=None, threshold=None)


def segment_weights(lower: SegmentPdf, upper: SegmentPdf, t: int, levels: int = 256) -> SegmentWeights:
    """Count empty bins per segment and form the occupancy weights."""
    if lower.lo != 0 or lower.hi != t or upper.lo != t + 1 or upper.hi != levels - 1:
        raise ValueError("segment ranges do not match threshold/levels")
    k_l = int(np.count_nonzero(lower.counts == 0))
    k_u = int(np.count_nonzero(upper.counts == 0))
    if t > 0:
        omega_l = 1.0 - k_l / t
    else:
        omega_l = 1.0 if k_l == 0 else 0.0
    omega_u = 1.0 - k_u / (levels - 1 - t)
    return SegmentWeights(
        omega_l=float(min(max(omega_l, 0.0), 1.0)),
        omega_u=float(min(max(omega_u, 0.0), 1.0)),
        k_l=k_l,
        k_u=k_u,
    )


def build_lower_map(cdf: SegmentCdf, omega: float, gamma: float, x0: int, t: int) -> np.ndarray:
    """Tone map for the lower segment; integer outputs clamped to [0, t]."""
    _check_gamma(gamma)
    if cdf.lo != 0 or cdf.hi != t:
        raise ValueError(f"CDF spans [{cdf.lo}, {cdf.hi}], expected [0, {t}]")
    if not 0 <= x0 <= t:
        raise ValueError(f"x0 {x0} must lie in [0, {t}]")
    w = omega ** gamma
    vals = x0 * (1.0 - w) + (t - x0) * cdf.cum * w
    return np.clip(round_half_up(vals), 0, t).astype(np.int64)


def build_upper_map(cdf: SegmentCdf, omega: float, gamma: float, t: int,
                    levels: int = 256, form: str = "printed") -> np.ndarray:
    """Tone map for the upper segment; integer outputs clamped to [t+1, L-1]."""
    _check_gamma(gamma)
    if cdf.lo != t + 1 or cdf.hi != levels - 1:
        raise ValueError(f"CDF spans [{cdf.lo}, {cdf.hi}], expected [{t + 1}, {levels - 1}]")
    if form not in UPPER_MAP_FORMS:
        raise ValueError(f"form must be one of {UPPER_MAP_FORMS}")
    w = omega ** gamma
    if form == "symmetric":
        base = (t + 1) * (1.0 - w)
    else:
        base = (t + 1) + (1.0 - w)
    vals = base + (levels - 1 - t) * cdf.cum * w
    return np.clip(round_half_up(vals), t + 1, levels - 1).astype(np.int64)


def concat_maps(lower: np.ndarray, upper: np.ndarray, gamma: float, t: int,
                levels: int = 256) -> ToneCurve:
    """Join the two partial maps and enforce a non-decreasing table.

    Raises DomainGapError unless lower covers exactly [0, t] and upper
    exactly [t+1, levels-1].
    """
    lower = np.asarray(lower)
    upper = np.asarray(upper)
    if lower.size != t + 1 or upper.size != levels - 1 - t:
        raise DomainGapError(
            f"maps cover {lower.size}+{upper.size} levels, expected {t + 1}+{levels - 1 - t}"
        )
    lut = np.concatenate([lower, upper])
    lut = np.maximum.accumulate(lut)
    return ToneCurve(lut=lut.astype(np.uint8), gamma=gamma, threshold=t)


def apply_curve(plane: np.ndarray, curve: ToneCurve) -> np.ndarray:
    """Look every pixel up through the curve; shape is preserved."""
    plane = np.asarray(plane)
    if plane.size and int(plane.max()) >= curve.lut.size:
        raise ValueError("plane has levels beyond the curve domain")
    return curve.lut[plane]


def curve_to_csv(curve: ToneCurve) -> str:
    """Render a curve as 'input,output' CSV text (header + one row per level)."""
    lines = ["input,output"]
    lines += [f"{x},{int(y)}" for x, y in enumerate(curve.lut)]
    return "\n".join(lines) + "\n"


def _check_gamma(gamma: float) -> None:
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma {gamma} must lie in (0, 1]")
